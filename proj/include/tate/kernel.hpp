#pragma once

#include <complex>
#include <type_traits>

#include "tate/domain.hpp"
#include "tate/padic.hpp"

namespace tate {

/// c_p = p(1-1/p)^2 / (1-1/p^2) = p(p-1)/(p+1).
Rational c_p_const(const PrimeParams& ctx);

/// Curve parameters together with the precomputed operator constant c_p.
class KernelContext {
public:
    explicit KernelContext(const PrimeParams& ctx);

    const PrimeParams& ctx() const { return ctx_; }
    const Rational& c_p() const { return c_p_; }

private:
    PrimeParams ctx_;
    Rational c_p_;
};

/// H(z,x) = |x||z|/|x-z|^2 + (|x|/|z| + |z|/|x|)/(p^m-1), written with norms.
Rational kernel_H_norm_form(const TatePoint& z, const TatePoint& x);
/// The same kernel by valuation cases: equal shells, or shells u = |v(z)-v(x)| apart.
Rational kernel_H_case_form(const TatePoint& z, const TatePoint& x);
/// Both forms, asserted equal. Throws SingularityError when z = x.
Rational kernel_H(const TatePoint& z, const TatePoint& x);

/// Integral of H(., x) over a ball not containing x: H(center, x) * mu(b).
Rational integrate_H_over_ball(const Ball& b, const TatePoint& x);

namespace detail {

template <class T>
T scale(const Rational& w, const T& value) {
    if constexpr (std::is_same_v<T, Rational>) {
        return w * value;
    } else {
        return w.get_d() * value;
    }
}

}  // namespace detail

/// (D f)(x) = -c_p * integral_E H(z,x) (f(z) - f(x)) d*z for a step function f.
/// The ball holding x contributes nothing: f(z) - f(x) vanishes on it, which
/// cancels the diagonal singularity of H exactly.
template <class T>
T apply_D_step(const BasicStepFunction<T>& f, const TatePoint& x, const KernelContext& kc) {
    const auto& balls = f.partition().balls();
    const auto& values = f.values();
    const std::size_t home = f.partition().locate(x);
    const T& fx = values[home];
    T acc{};
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (i == home || values[i] == fx) continue;
        acc += detail::scale(integrate_H_over_ball(balls[i], x), T(values[i] - fx));
    }
    return detail::scale(-kc.c_p(), acc);
}

/// (D f) on every ball of f's partition; D f is constant on those balls.
template <class T>
BasicStepFunction<T> apply_D_step_function(const BasicStepFunction<T>& f, const KernelContext& kc) {
    std::vector<T> out;
    out.reserve(f.partition().size());
    for (const auto& b : f.partition().balls()) out.push_back(apply_D_step(f, b.point(), kc));
    return BasicStepFunction<T>(f.partition(), std::move(out));
}

/// The shell integrals I_{v_z} of -(1/c_p) D h at x, with h(z) = h(z/1).
struct HeightShellIntegrals {
    std::vector<Rational> shells;  // index v_z = 0..m-1
    Rational total;
};

HeightShellIntegrals height_shell_integrals(const TatePoint& x, const KernelContext& kc);
/// (D h)(x) for the height centred at 1; equals -1/Vol(E). Throws at x = 1.
Rational apply_D_height(const TatePoint& x, const KernelContext& kc);

/// G(x,y) = h(x/y) when v(x) >= v(y), extended symmetrically.
Rational greens_function(const TatePoint& x, const TatePoint& y);

struct WeakDeltaResult {
    Rational lhs;  // integral_E G(x,y) (D f)(x) d*x
    Rational rhs;  // f(y) - (1/Vol) integral_E f d*x
    bool holds() const { return lhs == rhs; }
};

/// Tests D G(., y) = delta_y - 1/Vol against the step function f.
WeakDeltaResult weak_delta_check(const TatePoint& y, const StepFunction& f, const KernelContext& kc);
/// Same, reusing a precomputed D f (on f's partition).
WeakDeltaResult weak_delta_check(const TatePoint& y, const StepFunction& f, const StepFunction& Df);

}  // namespace tate
