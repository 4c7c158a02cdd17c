#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tate/padic.hpp"

namespace tate {

/// The unit-coset ball { p^v * u : u = center mod p^k, u a unit } inside E.
class Ball {
public:
    /// `center` must be a p-adic unit; it is canonicalized to its least
    /// nonnegative residue mod p^k.
    Ball(const PrimeParams& ctx, long v, int k, const Rational& center);

    long v() const { return v_; }
    int k() const { return k_; }
    const Integer& center() const { return center_; }
    const PrimeParams& ctx() const { return ctx_; }

    /// The point p^v * center of E.
    TatePoint point() const;
    bool contains(const TatePoint& x) const;
    /// The p balls of level k+1 refining this one, centers ascending.
    std::vector<Ball> children() const;
    /// True when this ball contains `other` (including equality).
    bool covers(const Ball& other) const;

    friend bool operator==(const Ball& a, const Ball& b) {
        return a.ctx_ == b.ctx_ && a.v_ == b.v_ && a.k_ == b.k_ && a.center_ == b.center_;
    }
    /// Shell by v, then level, then center.
    friend bool operator<(const Ball& a, const Ball& b);

private:
    PrimeParams ctx_;
    long v_;
    int k_;
    Integer center_;
};

bool disjoint(const Ball& a, const Ball& b);

/// Multiplicative Haar measure of a ball: p^(-k).
Rational haar_measure(const Ball& b);
/// Vol(E) = m(p-1)/p.
Rational total_volume(const PrimeParams& ctx);

/// All level-k balls, shells by v ascending and centers ascending.
std::vector<Ball> level_balls(const PrimeParams& ctx, int k);

/// Finitely many pairwise disjoint balls covering E.
class ShellPartition {
public:
    /// Validates disjointness and that the measures sum to Vol(E).
    ShellPartition(const PrimeParams& ctx, std::vector<Ball> balls);
    static ShellPartition uniform(const PrimeParams& ctx, int k);

    const PrimeParams& ctx() const { return ctx_; }
    const std::vector<Ball>& balls() const { return balls_; }
    std::size_t size() const { return balls_.size(); }
    /// Index of the ball containing x.
    std::size_t locate(const TatePoint& x) const;
    /// Replaces ball `i` by its p children, in place of i.
    ShellPartition refine(std::size_t i) const;
    int max_level() const;

private:
    PrimeParams ctx_;
    std::vector<Ball> balls_;
};

/// A function on E which is constant on each ball of a partition.
template <class T>
class BasicStepFunction {
public:
    using value_type = T;

    BasicStepFunction(ShellPartition partition, std::vector<T> values)
        : partition_(std::move(partition)), values_(std::move(values)) {
        if (values_.size() != partition_.size()) {
            throw std::invalid_argument("step function needs one value per ball");
        }
    }

    const ShellPartition& partition() const { return partition_; }
    const std::vector<T>& values() const { return values_; }
    const PrimeParams& ctx() const { return partition_.ctx(); }
    const T& operator()(const TatePoint& x) const { return values_[partition_.locate(x)]; }

    /// Same function on a finer partition (ball i split into its children).
    BasicStepFunction refine(std::size_t i) const {
        std::vector<T> vals;
        vals.reserve(values_.size() + partition_.ctx().p());
        for (std::size_t j = 0; j < values_.size(); ++j) {
            const std::size_t copies = j == i ? static_cast<std::size_t>(partition_.ctx().p()) : 1;
            for (std::size_t c = 0; c < copies; ++c) vals.push_back(values_[j]);
        }
        return BasicStepFunction(partition_.refine(i), std::move(vals));
    }

private:
    ShellPartition partition_;
    std::vector<T> values_;
};

using StepFunction = BasicStepFunction<Rational>;
using ComplexStepFunction = BasicStepFunction<std::complex<double>>;

/// The exact integral of f against d*x.
Rational integrate_step(const StepFunction& f);

/// Tail sum  sum_{j >= start} j^degree t^j  for degree 0 or 1 and |t| < 1.
Rational geom_sum(int degree, long start, const Rational& t);

/// The function x -> h(x / base), with h(x) = v(x-1) + v_x(v_x-m)/(2m) + m/12.
class HeightProfile {
public:
    explicit HeightProfile(TatePoint base) : base_(std::move(base)) {}
    const TatePoint& base() const { return base_; }
    const PrimeParams& ctx() const { return base_.ctx(); }

private:
    TatePoint base_;
};

/// h(w) for w in E, w != 1.
Rational local_height(const TatePoint& w);
/// h(x / base). Throws SingularityError at x = base.
Rational height_value(const HeightProfile& prof, const TatePoint& x);
/// Exact integral of x -> h(x / base) over a ball, finite even when the ball contains base.
Rational integrate_height_over_ball(const HeightProfile& prof, const Ball& b);

}  // namespace tate
