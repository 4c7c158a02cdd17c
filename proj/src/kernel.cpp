#include "tate/kernel.hpp"

#include <cstdlib>

namespace tate {

Rational c_p_const(const PrimeParams& ctx) {
    const long p = ctx.p();
    return frac(p * (p - 1), p + 1);
}

KernelContext::KernelContext(const PrimeParams& ctx) : ctx_(ctx), c_p_(c_p_const(ctx)) {
    const Rational inv_p = frac(1, ctx.p());
    const Rational defining = Rational(ctx.p()) * (1 - inv_p) * (1 - inv_p) / (1 - inv_p * inv_p);
    if (defining != c_p_) throw std::logic_error("c_p forms disagree");
}

namespace {

void require_distinct(const TatePoint& z, const TatePoint& x) {
    if (!(z.ctx() == x.ctx())) throw std::invalid_argument("kernel arguments from different Tate curves");
    if (z == x) throw SingularityError("kernel H is singular on the diagonal z = x");
}

}  // namespace

Rational kernel_H_norm_form(const TatePoint& z, const TatePoint& x) {
    require_distinct(z, x);
    const std::int64_t p = z.ctx().p();
    const Rational nz = norm(z.rep(), p);
    const Rational nx = norm(x.rep(), p);
    const Rational nd = norm(z.rep() - x.rep(), p);
    const Rational q1 = Rational(z.ctx().q() - 1);
    return nx * nz / (nd * nd) + (nx / nz + nz / nx) / q1;
}

Rational kernel_H_case_form(const TatePoint& z, const TatePoint& x) {
    require_distinct(z, x);
    const std::int64_t p = z.ctx().p();
    const long m = z.ctx().m();
    const Rational q1 = Rational(z.ctx().q() - 1);
    if (z.v() == x.v()) {
        const long vd = valuation(z.rep() - x.rep(), p);
        return rpow(p, 2 * (vd - z.v())) + 2 / q1;
    }
    const long u = std::labs(z.v() - x.v());
    return (rpow(p, m - u) + rpow(p, u)) / q1;
}

Rational kernel_H(const TatePoint& z, const TatePoint& x) {
    Rational a = kernel_H_norm_form(z, x);
    if (a != kernel_H_case_form(z, x)) throw std::logic_error("kernel H forms disagree");
    return a;
}

Rational integrate_H_over_ball(const Ball& b, const TatePoint& x) {
    if (b.contains(x)) {
        throw SingularityError("x lies in the ball; the diagonal ball must be handled by cancellation");
    }
    return kernel_H(b.point(), x) * haar_measure(b);
}

HeightShellIntegrals height_shell_integrals(const TatePoint& x, const KernelContext& kc) {
    const PrimeParams& ctx = kc.ctx();
    const std::int64_t p = ctx.p();
    const long m = ctx.m();
    const Rational q1 = Rational(ctx.q() - 1);
    const Rational unit_mass = frac(p - 1, p);  // mu*(p^v Z_p^x)
    const Rational t = frac(1, p);
    auto quad = [m](long v) { return frac(v * (v - m), 2 * m); };
    auto cross_shell = [&](long u) -> Rational { return (rpow(p, m - u) + rpow(p, u)) / q1; };

    HeightShellIntegrals out;
    out.shells.assign(static_cast<std::size_t>(m), Rational(0));
    const long vx = x.v();
    if (vx == 0) {
        const Rational diff = x.rep() - 1;
        if (sgn(diff) == 0) throw SingularityError("D h is evaluated away from the singular point x = 1");
        const long l = valuation(diff, p);
        // unit shell, split by j = v(z-1); the j = l stratum has h(z) = h(x)
        Rational i0 = frac(p - 2, p) * (1 + 2 / q1) * Rational(-l);
        for (long j = 1; j <= l - 1; ++j) {
            i0 += unit_mass * rpow(p, -j) * (rpow(p, 2 * j) + 2 / q1) * Rational(j - l);
        }
        const Rational tail = geom_sum(1, l + 1, t) - Rational(l) * geom_sum(0, l + 1, t);
        i0 += unit_mass * (rpow(p, 2 * l) + 2 / q1) * tail;
        out.shells[0] = i0;
        for (long vz = 1; vz < m; ++vz) {
            out.shells[static_cast<std::size_t>(vz)] = unit_mass * cross_shell(vz) * (quad(vz) - Rational(l));
        }
    } else {
        // v(x-1) = 0 and v(z-1) = 0 off the unit shell
        const Rational sum_j = unit_mass * geom_sum(1, 1, t);
        out.shells[0] = cross_shell(vx) * (sum_j - unit_mass * quad(vx));
        for (long vz = 1; vz < m; ++vz) {
            if (vz == vx) continue;
            out.shells[static_cast<std::size_t>(vz)] = unit_mass * cross_shell(std::labs(vz - vx)) * (quad(vz) - quad(vx));
        }
    }
    out.total = 0;
    for (const auto& s : out.shells) out.total += s;
    return out;
}

Rational apply_D_height(const TatePoint& x, const KernelContext& kc) {
    return -kc.c_p() * height_shell_integrals(x, kc).total;
}

Rational greens_function(const TatePoint& x, const TatePoint& y) {
    if (x == y) throw SingularityError("Green's function is singular at x = y");
    if (x.v() >= y.v()) return height_value(HeightProfile(y), x);
    return greens_function(y, x);
}

WeakDeltaResult weak_delta_check(const TatePoint& y, const StepFunction& f, const StepFunction& Df) {
    const HeightProfile prof(y);
    const auto& balls = f.partition().balls();
    WeakDeltaResult r;
    r.lhs = 0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (sgn(Df.values()[i]) == 0) continue;
        r.lhs += Df.values()[i] * integrate_height_over_ball(prof, balls[i]);
    }
    r.rhs = f(y) - integrate_step(f) / total_volume(f.ctx());
    return r;
}

WeakDeltaResult weak_delta_check(const TatePoint& y, const StepFunction& f, const KernelContext& kc) {
    return weak_delta_check(y, f, apply_D_step_function(f, kc));
}

}  // namespace tate
