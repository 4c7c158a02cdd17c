#pragma once

#include "tate/padic.hpp"

namespace tate {

/// The two roots of m^2 = p^(1-D) + p^D - p - 1.
struct ScalingDimension {
    double delta_plus;
    double delta_minus;
    double mass_squared;
};

/// Solves t + p/t = msq + p + 1 for t = p^D. Throws std::domain_error below
/// the real-solvability threshold msq = 2 sqrt(p) - p - 1.
ScalingDimension delta_from_mass(double msq, const PrimeParams& ctx);
/// p^(1-D) + p^D - p - 1.
double mass_from_delta(double delta, const PrimeParams& ctx);

/// <O_D(x1) O_D(x2)> = |x1|^D |x2|^D / |x1-x2|^(2D) + (|x1/x2|^D + |x2/x1|^D) / (p^(mD) - 1).
/// Throws SingularityError when x1 = x2 and std::domain_error for D <= 0.
double two_point(const TatePoint& x1, const TatePoint& x2, double delta);

/// The finite part 2 log p * h(x1/x2) assembled term by term from norms:
/// (-log|x1-x2|/log p + log(|x1||x2|)/(2 log p) + (log|x1| - log|x2|)^2/(2m (log p)^2) + m/12) * 2 log p.
double finite_part_expansion(const TatePoint& x1, const TatePoint& x2);

enum class Extrapolation { richardson, none };

struct HeightLimit {
    double estimate;
    double target;  // 2 log p * G(x1, x2)
    bool holds() const;
};

/// Estimates the O(D) coefficient of two_point - 2/(D m log p) from the steps
/// D = 1e-3, 5e-4, 2.5e-4. With Extrapolation::none the smallest step is used as is.
HeightLimit height_limit_check(const TatePoint& x1, const TatePoint& x2,
                               Extrapolation mode = Extrapolation::richardson);

}  // namespace tate
