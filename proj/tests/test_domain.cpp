#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tate/domain.hpp"

using namespace tate;

TEST(Ball, MeasureAndMembership) {
    const PrimeParams ctx(3, 2);
    const Ball b(ctx, 1, 2, Rational(4));
    EXPECT_EQ(haar_measure(b), Rational(1, 9));
    EXPECT_TRUE(b.contains(TatePoint(Rational(12), ctx)));
    EXPECT_TRUE(b.contains(TatePoint(Rational(39), ctx)));  // 3 * 13, 13 = 4 mod 9
    EXPECT_FALSE(b.contains(TatePoint(Rational(4), ctx)));
    EXPECT_FALSE(b.contains(TatePoint(Rational(21), ctx)));
    EXPECT_THROW(Ball(ctx, 2, 1, Rational(1)), std::invalid_argument);
    EXPECT_THROW(Ball(ctx, 0, 0, Rational(1)), std::invalid_argument);
    EXPECT_THROW(Ball(ctx, 0, 1, Rational(3)), std::invalid_argument);
}

TEST(Ball, ChildrenPartitionParent) {
    const PrimeParams ctx(5, 2);
    const Ball b(ctx, 1, 2, Rational(7));
    const auto kids = b.children();
    ASSERT_EQ(kids.size(), 5u);
    Rational total = 0;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        EXPECT_TRUE(b.covers(kids[i]));
        total += haar_measure(kids[i]);
        for (std::size_t j = i + 1; j < kids.size(); ++j) EXPECT_TRUE(disjoint(kids[i], kids[j]));
    }
    EXPECT_EQ(total, haar_measure(b));
}

TEST(Partition, VolumeAndValidation) {
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 4; ++m) {
            const PrimeParams ctx(p, m);
            EXPECT_EQ(total_volume(ctx), frac(m * (p - 1), p));
            for (int k = 1; k <= 3; ++k) {
                const auto part = ShellPartition::uniform(ctx, k);
                EXPECT_EQ(static_cast<long>(part.size()), m * (p - 1) * static_cast<long>(std::pow(p, k - 1)));
            }
        }
    }
    const PrimeParams ctx(3, 2);
    auto balls = level_balls(ctx, 1);
    balls.pop_back();
    EXPECT_THROW(ShellPartition(ctx, balls), std::invalid_argument);
    balls = level_balls(ctx, 1);
    balls.push_back(Ball(ctx, 0, 2, Rational(1)));
    EXPECT_THROW(ShellPartition(ctx, balls), std::invalid_argument);
}

TEST(StepFunction, RefinementPreservesValuesAndIntegral) {
    std::mt19937 rng(3);
    for (long p : {2, 3, 5}) {
        const PrimeParams ctx(p, 3);
        for (int t = 0; t < 20; ++t) {
            const auto f = fixtures::random_step_function(ctx, rng, 6, 3);
            const auto g = f.refine(rng() % f.partition().size());
            EXPECT_EQ(integrate_step(f), integrate_step(g));
            for (const auto& x : fixtures::sample_points(ctx, 3)) ASSERT_EQ(f(x), g(x));
        }
    }
}

TEST(GeomSum, ClosedForms) {
    const Rational t(1, 3);
    Rational s0 = 0, s1 = 0, tj = t * t;
    for (int j = 2; j < 200; ++j, tj *= t) {
        s0 += tj;
        s1 += j * tj;
    }
    EXPECT_NEAR(geom_sum(0, 2, t).get_d(), s0.get_d(), 1e-15);
    EXPECT_NEAR(geom_sum(1, 2, t).get_d(), s1.get_d(), 1e-15);
    EXPECT_EQ(geom_sum(0, 0, Rational(1, 2)), 2);
    EXPECT_THROW(geom_sum(0, 0, Rational(1)), std::invalid_argument);
    EXPECT_THROW(geom_sum(2, 0, t), std::invalid_argument);
}

TEST(Height, KnownValuesAndSymmetry) {
    const PrimeParams ctx(3, 2);
    EXPECT_EQ(local_height(TatePoint(Rational(4), ctx)), Rational(7, 6));
    EXPECT_EQ(local_height(TatePoint(Rational(3), ctx)), Rational(-1, 12));
    EXPECT_EQ(local_height(TatePoint(Rational(2), ctx)), Rational(1, 6));
    EXPECT_THROW(local_height(TatePoint(Rational(1), ctx)), SingularityError);
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 5; ++m) {
            const PrimeParams c(p, m);
            const HeightProfile one(TatePoint(Rational(1), c));
            const auto pts = fixtures::sample_points(c, 3);
            for (const auto& x : pts) {
                if (x.rep() == 1) continue;
                ASSERT_EQ(local_height(x), local_height(tate_inv(x)));
            }
            for (std::size_t i = 0; i < pts.size(); i += 7) {
                const HeightProfile prof(pts[i]);
                for (std::size_t j = 0; j < pts.size(); j += 5) {
                    if (i == j) continue;
                    ASSERT_EQ(height_value(prof, pts[j]), height_value(one, tate_div(pts[j], pts[i])));
                }
            }
        }
    }
}

TEST(Height, BallIntegralIsAdditive) {
    // the integral over a ball equals the sum over its children, including the singular ball
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 3; ++m) {
            const PrimeParams ctx(p, m);
            for (const auto& y : fixtures::sample_points(ctx, 1)) {
                const HeightProfile prof(y);
                for (const auto& b : level_balls(ctx, 2)) {
                    Rational kids = 0;
                    for (const auto& c : b.children()) kids += integrate_height_over_ball(prof, c);
                    ASSERT_EQ(kids, integrate_height_over_ball(prof, b));
                    if (!b.contains(y)) ASSERT_EQ(integrate_height_over_ball(prof, b), height_value(prof, b.point()) * haar_measure(b));
                }
            }
        }
    }
}
