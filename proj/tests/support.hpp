// Shared fixtures and independent reference computations for the test suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tate/domain.hpp"
#include "tate/kernel.hpp"
#include "tate/padic.hpp"

namespace tate::fixtures {

/// p^v * c for every shell v and every unit residue c mod p^k.
inline std::vector<TatePoint> sample_points(const PrimeParams& ctx, int k) {
    std::vector<TatePoint> out;
    for (const auto& b : level_balls(ctx, k)) out.push_back(b.point());
    return out;
}

/// The unit 1 + p^l * r for l >= 1, or r + 1 for l = 0, with r = 1 + seed mod (p-2) (r = 1 for p = 2).
/// For l = 0 and v > 0 the unit is 1. For l = 0 and v = 0 it is a unit only when p > 2.
/// The point is p^v times that unit.
inline TatePoint point_with_defect(const PrimeParams& ctx, int l, long v, long seed) {
    const long p = ctx.p();
    const long r = p == 2 ? 1 : 1 + seed % (p - 2 > 0 ? p - 2 : 1);
    const Rational u = l == 0 ? Rational(v > 0 ? 1 : r + 1) : 1 + Rational(ipow(p, static_cast<unsigned long>(l))) * r;
    return TatePoint(u * Rational(ipow(p, static_cast<unsigned long>(v))), ctx);
}

/// Valuation by repeated division, written separately from the library.
inline long naive_valuation(const Rational& x, long p) {
    Integer num = x.get_num(), den = x.get_den();
    long v = 0;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    return v;
}

/// |a| for a nonzero rational, by the naive valuation.
inline Rational naive_norm(const Rational& a, long p) {
    const long v = naive_valuation(a, p);
    return v >= 0 ? Rational(1, ipow(p, static_cast<unsigned long>(v))) : Rational(ipow(p, static_cast<unsigned long>(-v)));
}

/// H from its defining norm expression, using the naive valuation only.
inline Rational naive_H(const Rational& z, const Rational& x, const PrimeParams& ctx) {
    const long p = ctx.p();
    const Rational nz = naive_norm(z, p), nx = naive_norm(x, p), nd = naive_norm(x - z, p);
    return nx * nz / (nd * nd) + (nx / nz + nz / nx) / Rational(ctx.q() - 1);
}

/// A random partition obtained by refining the level-1 partition, with integer values in [-5, 5].
inline StepFunction random_step_function(const PrimeParams& ctx, std::mt19937& rng, int refinements, int max_level) {
    ShellPartition part = ShellPartition::uniform(ctx, 1);
    for (int r = 0; r < refinements; ++r) {
        std::uniform_int_distribution<std::size_t> pick(0, part.size() - 1);
        const std::size_t i = pick(rng);
        if (part.balls()[i].k() < max_level) part = part.refine(i);
    }
    std::uniform_int_distribution<int> val(-5, 5);
    std::vector<Rational> values;
    values.reserve(part.size());
    for (std::size_t i = 0; i < part.size(); ++i) values.emplace_back(val(rng), 1 + (rng() % 3));
    for (auto& v : values) v.canonicalize();
    return {std::move(part), std::move(values)};
}

/// The height truncated at v(z-1) = K+1 as a step function: exact off 1 + p^(K+1) Z_p.
inline StepFunction truncated_height(const PrimeParams& ctx, int K) {
    const long p = ctx.p();
    const long m = ctx.m();
    std::vector<Ball> balls;
    std::vector<Rational> values;
    for (const auto& b : level_balls(ctx, K + 1)) {
        if (b.v() != 0) continue;
        balls.push_back(b);
        const Rational c(b.center());
        long defect = sgn(c - 1) == 0 ? K + 1 : naive_valuation(c - 1, p);
        if (defect > K + 1) defect = K + 1;
        values.push_back(Rational(defect) + Rational(m, 12));
    }
    for (long v = 1; v < m; ++v) {
        for (long c = 1; c < p; ++c) {
            balls.emplace_back(ctx, v, 1, Rational(c));
            Rational quad(v * (v - m), 2 * m);
            quad.canonicalize();
            Rational val = quad + Rational(m, 12);
            val.canonicalize();
            values.push_back(val);
        }
    }
    for (auto& v : values) v.canonicalize();
    return {ShellPartition(ctx, std::move(balls)), std::move(values)};
}

/// (D h)(x) via the truncated height plus the exact correction from 1 + p^(K+1) Z_p,
/// valid when v(x - 1) <= K.
inline Rational Dh_by_truncation(const TatePoint& x, int K) {
    const PrimeParams& ctx = x.ctx();
    const KernelContext kc(ctx);
    const StepFunction hk = truncated_height(ctx, K);
    const Rational tail_mass = Rational(1, ipow(ctx.p(), static_cast<unsigned long>(K + 1)) * (ctx.p() - 1));
    return apply_D_step(hk, x, kc) - kc.c_p() * naive_H(Rational(1), x.rep(), ctx) * tail_mass;
}

}  // namespace tate::fixtures
