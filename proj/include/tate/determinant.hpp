#pragma once

#include "tate/padic.hpp"

namespace tate {

/// zeta_pi(s) = m(p^(s+1) - 2p^s + 1) / ((p^s - p)(p-1)^s), the resummed zeta
/// function of the radial eigenvalues; it is its own analytic continuation.
class ZetaClosedForm {
public:
    explicit ZetaClosedForm(const PrimeParams& ctx) : ctx_(ctx) {}

    /// Throws SingularityError at the pole s = 1.
    double value(double s) const;
    /// d/ds of the closed form, by logarithmic differentiation.
    double derivative(double s) const;
    /// m(p-2)(p-1)^(-s) + sum_{n=2}^{terms+1} m(p-1)^2 p^(n-2) ((p-1)p^(n-1))^(-s).
    double series(double s, int terms = 200) const;

    const PrimeParams& ctx() const { return ctx_; }

private:
    PrimeParams ctx_;
};

double zeta_pi_value(double s, const PrimeParams& ctx);

struct AngularDeterminant {
    Rational exact;            // m^2 (p-1)^(m+1) p^(m-1) / (p^m - 1)^2
    double product_of_modes;   // prod_{l=1}^{m-1} lambda_l in double precision
};

/// Product of the nonzero angular eigenvalues; asserts closed form vs product to 1e-9 relative.
AngularDeterminant angular_determinant(const PrimeParams& ctx);

struct RadialContribution {
    double zeta_prime_analytic;  // zeta_pi'(0)
    double zeta_prime_fd;        // central difference, step 1e-6
    double exp_minus_zeta_prime;
    Rational exact;              // (p/(p-1))^m
};

/// e^(-zeta_pi'(0)); asserts analytic vs finite difference (1e-6) and vs (p/(p-1))^m (1e-8).
RadialContribution radial_det_contribution(const PrimeParams& ctx);

struct Determinant {
    Rational value;     // m^2 (1 - 1/p) / (1 - p^-m)^2
    Rational angular;
    Rational radial;
    bool factorizes() const { return value == angular * radial; }
};

/// The zeta-regularized determinant; asserts det = angular * radial exactly.
Determinant det_D(const PrimeParams& ctx);

}  // namespace tate
