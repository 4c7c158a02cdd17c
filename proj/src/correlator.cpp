#include "tate/correlator.hpp"

#include <cmath>
#include <stdexcept>

#include "tate/kernel.hpp"

namespace tate {

ScalingDimension delta_from_mass(double msq, const PrimeParams& ctx) {
    const double p = static_cast<double>(ctx.p());
    const double b = msq + p + 1.0;
    const double disc = b * b - 4.0 * p;
    if (b <= 0.0 || disc < -1e-12 * b * b) {
        throw std::domain_error("mass squared below 2 sqrt(p) - p - 1 has no real scaling dimension");
    }
    const double t_plus = 0.5 * (b + std::sqrt(std::max(disc, 0.0)));
    const double t_minus = p / t_plus;
    const double lp = std::log(p);
    return {std::log(t_plus) / lp, std::log(t_minus) / lp, msq};
}

double mass_from_delta(double delta, const PrimeParams& ctx) {
    const double p = static_cast<double>(ctx.p());
    return std::pow(p, 1.0 - delta) + std::pow(p, delta) - p - 1.0;
}

namespace {

struct PairValuations {
    long v1, v2, v12;
};

PairValuations pair_valuations(const TatePoint& x1, const TatePoint& x2) {
    if (!(x1.ctx() == x2.ctx())) throw std::invalid_argument("points on different curves");
    if (x1 == x2) throw SingularityError("two-point function at coincident points");
    return {x1.v(), x2.v(), valuation(x1.rep() - x2.rep(), x1.ctx().p())};
}

}  // namespace

double two_point(const TatePoint& x1, const TatePoint& x2, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("scaling dimension must be positive");
    const auto [v1, v2, v12] = pair_valuations(x1, x2);
    const double lp = std::log(static_cast<double>(x1.ctx().p()));
    const double conformal = std::exp(delta * lp * static_cast<double>(2 * v12 - v1 - v2));
    const double ratio = std::exp(delta * lp * static_cast<double>(std::abs(v1 - v2)));
    const double volume = std::expm1(delta * lp * x1.ctx().m());
    return conformal + (ratio + 1.0 / ratio) / volume;
}

double finite_part_expansion(const TatePoint& x1, const TatePoint& x2) {
    const auto [v1, v2, v12] = pair_valuations(x1, x2);
    const double lp = std::log(static_cast<double>(x1.ctx().p()));
    const double m = x1.ctx().m();
    const double log_n1 = -static_cast<double>(v1) * lp;
    const double log_n2 = -static_cast<double>(v2) * lp;
    const double log_n12 = -static_cast<double>(v12) * lp;
    const double d = log_n1 - log_n2;
    const double bracket = -log_n12 / lp + (log_n1 + log_n2) / (2.0 * lp) + d * d / (2.0 * m * lp * lp) + m / 12.0;
    return bracket * 2.0 * lp;
}

bool HeightLimit::holds() const { return std::abs(estimate - target) < 1e-6 * (1.0 + std::abs(target)); }

HeightLimit height_limit_check(const TatePoint& x1, const TatePoint& x2, Extrapolation mode) {
    const double lp = std::log(static_cast<double>(x1.ctx().p()));
    const double m = x1.ctx().m();
    auto f = [&](double d) { return (two_point(x1, x2, d) - 2.0 / (d * m * lp)) / d; };
    constexpr double h = 1e-3;
    const double f1 = f(h);
    const double f2 = f(h / 2);
    const double f4 = f(h / 4);
    HeightLimit out{};
    out.estimate = mode == Extrapolation::richardson ? (8.0 * f4 - 6.0 * f2 + f1) / 3.0 : f4;
    out.target = 2.0 * lp * greens_function(x1, x2).get_d();
    return out;
}

}  // namespace tate
