#include "tate/determinant.hpp"

#include <cmath>
#include <stdexcept>

#include "tate/spectral.hpp"

namespace tate {

double ZetaClosedForm::value(double s) const {
    if (s == 1.0) throw SingularityError("zeta_pi has a pole at s = 1");
    const double p = static_cast<double>(ctx_.p());
    const double ps = std::pow(p, s);
    return ctx_.m() * (p * ps - 2.0 * ps + 1.0) / ((ps - p) * std::pow(p - 1.0, s));
}

double ZetaClosedForm::derivative(double s) const {
    const double p = static_cast<double>(ctx_.p());
    const double lp = std::log(p);
    const double ps = std::pow(p, s);
    const double numer = (p - 2.0) * ps + 1.0;
    const double pole = ps - p;
    return value(s) * ((p - 2.0) * ps * lp / numer - ps * lp / pole - std::log(p - 1.0));
}

double ZetaClosedForm::series(double s, int terms) const {
    const double p = static_cast<double>(ctx_.p());
    const double m = ctx_.m();
    double sum = m * (p - 2.0) * std::pow(p - 1.0, -s);
    for (int n = 2; n < terms + 2; ++n) {
        const double mult = m * (p - 1.0) * (p - 1.0) * std::pow(p, n - 2);
        sum += mult * std::pow((p - 1.0) * std::pow(p, n - 1), -s);
    }
    return sum;
}

double zeta_pi_value(double s, const PrimeParams& ctx) { return ZetaClosedForm(ctx).value(s); }

AngularDeterminant angular_determinant(const PrimeParams& ctx) {
    const long m = ctx.m();
    const Integer q1 = ctx.q() - 1;
    AngularDeterminant out;
    out.exact = Rational(Integer(m * m) * ipow(ctx.p() - 1, static_cast<unsigned long>(m + 1)) *
                         ipow(ctx.p(), static_cast<unsigned long>(m - 1)),
                         q1 * q1);
    out.exact.canonicalize();
    out.product_of_modes = 1.0;
    for (int l = 1; l < m; ++l) out.product_of_modes *= eigenvalue_angular(l, ctx);
    const double closed = out.exact.get_d();
    if (std::abs(out.product_of_modes - closed) > 1e-9 * std::abs(closed)) {
        throw std::logic_error("angular determinant closed form disagrees with the product of eigenvalues");
    }
    return out;
}

RadialContribution radial_det_contribution(const PrimeParams& ctx) {
    const ZetaClosedForm zeta(ctx);
    constexpr double h = 1e-6;
    RadialContribution out;
    out.zeta_prime_analytic = zeta.derivative(0.0);
    out.zeta_prime_fd = (zeta.value(h) - zeta.value(-h)) / (2.0 * h);
    out.exp_minus_zeta_prime = std::exp(-out.zeta_prime_analytic);
    const long p = ctx.p();
    out.exact = Rational(ipow(p, static_cast<unsigned long>(ctx.m())), ipow(p - 1, static_cast<unsigned long>(ctx.m())));
    out.exact.canonicalize();
    if (std::abs(out.zeta_prime_analytic - out.zeta_prime_fd) > 1e-6) {
        throw std::logic_error("zeta_pi'(0) analytic and finite-difference values disagree");
    }
    const double closed = out.exact.get_d();
    if (std::abs(out.exp_minus_zeta_prime - closed) > 1e-8 * closed) {
        throw std::logic_error("exp(-zeta_pi'(0)) disagrees with (p/(p-1))^m");
    }
    return out;
}

Determinant det_D(const PrimeParams& ctx) {
    const long m = ctx.m();
    const Rational one_minus_inv_p = 1 - frac(1, ctx.p());
    const Rational one_minus_inv_q = 1 - Rational(Integer(1), ctx.q());
    Determinant out;
    out.value = Rational(m * m) * one_minus_inv_p / (one_minus_inv_q * one_minus_inv_q);
    out.angular = angular_determinant(ctx).exact;
    out.radial = radial_det_contribution(ctx).exact;
    if (!out.factorizes()) throw std::logic_error("det D does not factor into angular and radial parts");
    return out;
}

}  // namespace tate
