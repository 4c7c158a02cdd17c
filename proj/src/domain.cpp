#include "tate/domain.hpp"

#include <algorithm>
#include <string>

namespace tate {

namespace {

Rational rational_pow(const Rational& t, unsigned long e) {
    Rational r(ipow(t.get_num(), e), ipow(t.get_den(), e));
    r.canonicalize();
    return r;
}

}  // namespace

Ball::Ball(const PrimeParams& ctx, long v, int k, const Rational& center) : ctx_(ctx), v_(v), k_(k) {
    if (v < 0 || v >= ctx.m()) throw std::invalid_argument("ball shell v must lie in [0, m)");
    if (k < 1) throw std::invalid_argument("ball level k must be >= 1");
    if (valuation(center, ctx.p()) != 0) throw std::invalid_argument("ball center must be a p-adic unit");
    center_ = unit_residue(center, ctx.p(), ipow(ctx.p(), static_cast<unsigned long>(k)));
}

TatePoint Ball::point() const { return TatePoint(Rational(center_) * rpow(ctx_.p(), v_), ctx_); }

bool Ball::contains(const TatePoint& x) const {
    if (!(x.ctx() == ctx_) || x.v() != v_) return false;
    const Rational diff = x.unit() - Rational(center_);
    return sgn(diff) == 0 || valuation(diff, ctx_.p()) >= k_;
}

std::vector<Ball> Ball::children() const {
    std::vector<Ball> out;
    const Integer step = ipow(ctx_.p(), static_cast<unsigned long>(k_));
    for (std::int64_t a = 0; a < ctx_.p(); ++a) {
        out.emplace_back(ctx_, v_, k_ + 1, Rational(center_ + step * static_cast<long>(a)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Ball::covers(const Ball& other) const {
    if (!(ctx_ == other.ctx_) || v_ != other.v_ || k_ > other.k_) return false;
    const Integer mod = ipow(ctx_.p(), static_cast<unsigned long>(k_));
    return (other.center_ - center_) % mod == 0;
}

bool operator<(const Ball& a, const Ball& b) {
    if (a.v_ != b.v_) return a.v_ < b.v_;
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.center_ < b.center_;
}

bool disjoint(const Ball& a, const Ball& b) { return !a.covers(b) && !b.covers(a); }

Rational haar_measure(const Ball& b) { return rpow(b.ctx().p(), -b.k()); }

Rational total_volume(const PrimeParams& ctx) {
    return frac(ctx.m() * (ctx.p() - 1), ctx.p());
}

std::vector<Ball> level_balls(const PrimeParams& ctx, int k) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    std::vector<Ball> out;
    const Integer mod = ipow(ctx.p(), static_cast<unsigned long>(k));
    for (long v = 0; v < ctx.m(); ++v) {
        for (Integer c = 1; c < mod; ++c) {
            if (c % static_cast<long>(ctx.p()) == 0) continue;
            out.emplace_back(ctx, v, k, Rational(c));
        }
    }
    return out;
}

ShellPartition::ShellPartition(const PrimeParams& ctx, std::vector<Ball> balls)
    : ctx_(ctx), balls_(std::move(balls)) {
    Rational total = 0;
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        if (!(balls_[i].ctx() == ctx_)) throw std::invalid_argument("malformed partition: ball from another curve");
        for (std::size_t j = 0; j < i; ++j) {
            if (!disjoint(balls_[i], balls_[j])) {
                throw std::invalid_argument("malformed partition: balls " + std::to_string(j) + " and " +
                                            std::to_string(i) + " overlap");
            }
        }
        total += haar_measure(balls_[i]);
    }
    // disjoint clopen balls of full measure cover E
    if (total != total_volume(ctx_)) throw std::invalid_argument("malformed partition: balls do not cover E");
}

ShellPartition ShellPartition::uniform(const PrimeParams& ctx, int k) { return {ctx, level_balls(ctx, k)}; }

std::size_t ShellPartition::locate(const TatePoint& x) const {
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        if (balls_[i].contains(x)) return i;
    }
    throw std::logic_error("point not covered by partition");
}

ShellPartition ShellPartition::refine(std::size_t i) const {
    std::vector<Ball> out;
    out.reserve(balls_.size() + ctx_.p());
    for (std::size_t j = 0; j < balls_.size(); ++j) {
        if (j == i) {
            for (auto& c : balls_[j].children()) out.push_back(std::move(c));
        } else {
            out.push_back(balls_[j]);
        }
    }
    return {ctx_, std::move(out)};
}

int ShellPartition::max_level() const {
    int k = 0;
    for (const auto& b : balls_) k = std::max(k, b.k());
    return k;
}

Rational integrate_step(const StepFunction& f) {
    Rational acc = 0;
    const auto& balls = f.partition().balls();
    for (std::size_t i = 0; i < balls.size(); ++i) acc += f.values()[i] * haar_measure(balls[i]);
    return acc;
}

Rational geom_sum(int degree, long start, const Rational& t) {
    if (degree != 0 && degree != 1) throw std::invalid_argument("geom_sum supports degree 0 and 1 only");
    if (start < 0) throw std::invalid_argument("geom_sum start must be >= 0");
    if (abs(t) >= 1) throw std::invalid_argument("geom_sum requires |t| < 1");
    const Rational tj = rational_pow(t, static_cast<unsigned long>(start));
    const Rational one_minus = 1 - t;
    if (degree == 0) return tj / one_minus;
    return tj * (Rational(start) * one_minus + t) / (one_minus * one_minus);
}

Rational local_height(const TatePoint& w) {
    const Rational diff = w.rep() - 1;
    if (sgn(diff) == 0) throw SingularityError("height function is singular at the base point");
    const long m = w.ctx().m();
    const long vw = w.v();
    return Rational(valuation(diff, w.ctx().p())) + frac(vw * (vw - m), 2 * m) + frac(m, 12);
}

Rational height_value(const HeightProfile& prof, const TatePoint& x) {
    return local_height(tate_div(x, prof.base()));
}

Rational integrate_height_over_ball(const HeightProfile& prof, const Ball& b) {
    const PrimeParams& ctx = prof.ctx();
    const std::int64_t p = ctx.p();
    const long m = ctx.m();
    // x -> x/base carries b onto a ball of the same level and measure
    const TatePoint image_center = tate_div(b.point(), prof.base());
    const Ball image(ctx, image_center.v(), b.k(), image_center.unit());
    const Rational mu = haar_measure(image);
    const long v = image.v();
    const Rational shell_term = frac(v * (v - m), 2 * m) + frac(m, 12);
    if (v != 0) return shell_term * mu;  // v(w-1) = 0 off the unit shell
    const Integer offset = image.center() - 1;
    if (offset != 0) {
        return (Rational(valuation(Rational(offset), p)) + shell_term) * mu;
    }
    // the ball 1 + p^k Z_p carries the logarithmic singularity of h
    const Rational log_part = frac(p - 1, p) * geom_sum(1, b.k(), frac(1, p));
    return log_part + shell_term * mu;
}

}  // namespace tate
