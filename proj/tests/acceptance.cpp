// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path-to-tate-cli>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tate/correlator.hpp"
#include "tate/determinant.hpp"
#include "tate/kernel.hpp"
#include "tate/matrix.hpp"
#include "tate/spectral.hpp"

using namespace tate;
using namespace tate::fixtures;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// AC1
Outcome greens_identity() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t points = 0;
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 5; ++m) {
            const PrimeParams ctx(p, m);
            const KernelContext kc(ctx);
            const Rational expected = frac(-p, m * (p - 1));
            std::vector<TatePoint> xs;
            for (long v = 1; v < m; ++v) {
                for (const auto& b : level_balls(ctx, 2)) if (b.v() == v) xs.push_back(b.point());
            }
            for (int l = 0; l <= 6; ++l) {
                if (l == 0 && p == 2) continue;
                for (long seed = 0; seed < 3; ++seed) xs.push_back(point_with_defect(ctx, l, 0, seed));
            }
            for (const auto& x : xs) {
                ++points;
                if (apply_D_height(x, kc) != expected) o.fail("p=" + std::to_string(p) + " x=" + x.rep().get_str());
            }
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 10) o.fail("runtime " + fmt(secs) + " s");
    if (o.pass) o.detail = std::to_string(points) + " points exact, " + fmt(secs) + " s";
    return o;
}

// AC2
Outcome delta_normalization() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937 rng(2024);
    std::size_t min_pairs = SIZE_MAX;
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 5; ++m) {
            const PrimeParams ctx(p, m);
            const KernelContext kc(ctx);
            const auto pts = sample_points(ctx, 3);
            std::size_t pairs = 0;
            for (int t = 0; t < 10; ++t) {
                const auto f = random_step_function(ctx, rng, 6, 3);
                const auto Df = apply_D_step_function(f, kc);
                for (int s = 0; s < 5; ++s) {
                    const auto& y = pts[rng() % pts.size()];
                    ++pairs;
                    if (!weak_delta_check(y, f, Df).holds()) o.fail("p=" + std::to_string(p) + " m=" + std::to_string(m));
                }
            }
            min_pairs = std::min(min_pairs, pairs);
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 30) o.fail("runtime " + fmt(secs) + " s");
    if (o.pass) o.detail = std::to_string(min_pairs) + " pairs per configuration, " + fmt(secs) + " s";
    return o;
}

// AC3
Outcome kernel_identities() {
    Outcome o;
    std::size_t checks = 0;
    std::mt19937 rng(7);
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 5; ++m) {
            const PrimeParams ctx(p, m);
            const auto pts = sample_points(ctx, 3);
            auto lambdas = sample_points(ctx, 1);
            for (int i = 0; i < 2; ++i) lambdas.push_back(pts[rng() % pts.size()]);
            std::vector<TatePoint> inv;
            for (const auto& z : pts) inv.push_back(tate_inv(z));
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    if (i == j) continue;
                    ++checks;
                    const Rational n = kernel_H_norm_form(pts[i], pts[j]);
                    if (n != kernel_H_case_form(pts[i], pts[j])) o.fail("form mismatch");
                    if (n != kernel_H_norm_form(pts[j], pts[i])) o.fail("asymmetry");
                    if (n != kernel_H_norm_form(inv[i], inv[j])) o.fail("inversion");
                    const auto& lam = lambdas[(i * pts.size() + j) % lambdas.size()];
                    if (n != kernel_H_norm_form(tate_div(pts[i], lam), tate_div(pts[j], lam))) o.fail("dilation");
                }
            }
            // every lambda against a fixed stripe of pairs
            for (const auto& lam : lambdas) {
                for (std::size_t i = 0; i < pts.size(); i += 3) {
                    const std::size_t j = (i * 7 + 1) % pts.size();
                    if (i == j) continue;
                    if (kernel_H_norm_form(pts[i], pts[j]) != kernel_H_norm_form(tate_div(pts[i], lam), tate_div(pts[j], lam))) {
                        o.fail("dilation");
                    }
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " ordered pairs, zero failures";
    return o;
}

// AC4
Outcome spectrum() {
    Outcome o;
    double worst_radial = 0, worst_angular = 0, worst_residual = 0;
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 4; ++m) {
            const PrimeParams ctx(p, m);
            for (int n = 1; n <= 4; ++n) {
                const double lam = eigenvalue_radial_closed(n, ctx).get_d();
                for (const auto& chi : primitive_characters(p, n)) {
                    for (int l = 0; l < m; ++l) {
                        worst_radial = std::max(worst_radial, std::abs(eigenvalue_radial_integral(chi, AngularCharacter{m, l}, ctx) - lam) / lam);
                    }
                }
            }
        }
    }
    for (long p : {2, 3, 5, 7}) {
        for (int m = 1; m <= 12; ++m) {
            for (int l = 1; l < m; ++l) {
                const auto d = angular_eigenvalue_detail(l, PrimeParams(p, m));
                worst_angular = std::max(worst_angular, std::abs(d.closed_form - d.defining_sum));
            }
        }
    }
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 3; ++m) {
            const PrimeParams ctx(p, m);
            const KernelContext kc(ctx);
            for (int k = 1; k <= 3; ++k) {
                // D pi at each centre: -c_p sum_j H(z_j, x_i) mu_j (pi_j - pi_i), weights computed once
                const auto balls = level_balls(ctx, k);
                const std::size_t n = balls.size();
                std::vector<TatePoint> centers;
                for (const auto& b : balls) centers.push_back(b.point());
                std::vector<double> w(n * n, 0.0);
                const Rational scale = kc.c_p() * rpow(p, -k);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) {
                        w[i * n + j] = w[j * n + i] = Rational(scale * kernel_H(centers[j], centers[i])).get_d();
                    }
                }
                for (const auto& label : character_labels(ctx, k)) {
                    std::vector<std::complex<double>> vals;
                    for (const auto& x : centers) vals.push_back(label(x));
                    const double lam = eigenvalue_of(label, ctx).value;
                    for (std::size_t i = 0; i < n; ++i) {
                        std::complex<double> acc{};
                        for (std::size_t j = 0; j < n; ++j) acc += w[i * n + j] * (vals[j] - vals[i]);
                        worst_residual = std::max(worst_residual, std::abs(-acc - lam * vals[i]));
                    }
                }
            }
        }
    }
    if (worst_radial >= 1e-10) o.fail("radial deviation " + fmt(worst_radial));
    if (worst_angular >= 1e-10) o.fail("angular deviation " + fmt(worst_angular));
    if (worst_residual >= 1e-10) o.fail("residual " + fmt(worst_residual));
    if (o.pass) o.detail = "radial " + fmt(worst_radial) + ", angular " + fmt(worst_angular) + ", residual " + fmt(worst_residual);
    return o;
}

// AC5
Outcome matrix_consistency() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst = 0;
    for (auto [p, m, k] : std::vector<std::tuple<long, int, int>>{{3, 2, 2}, {2, 3, 3}, {5, 1, 2}, {2, 1, 4}}) {
        const PrimeParams ctx(p, m);
        const auto r = verify_matrix(build_matrix(k, ctx), ctx);
        worst = std::max(worst, r.max_spectrum_deviation);
        if (!r.ok()) o.fail(r.violations.front());
    }
    const double secs = seconds_since(t0);
    if (secs >= 60) o.fail("runtime " + fmt(secs) + " s");
    if (o.pass) o.detail = "max eigenvalue deviation " + fmt(worst) + ", " + fmt(secs) + " s";
    return o;
}

// AC6
Outcome weyl() {
    Outcome o;
    int cases = 0;
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 4; ++m) {
            const PrimeParams ctx(p, m);
            for (int M = 2; M <= 7; ++M) {
                ++cases;
                const auto w = weyl_count(eigenvalue_radial_closed(M, ctx), ctx);
                if (w.M != M || w.enumerated != w.m_lambda_M) o.fail("p=" + std::to_string(p) + " m=" + std::to_string(m) + " M=" + std::to_string(M));
            }
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " counts exact";
    return o;
}

// AC7
Outcome determinant() {
    Outcome o;
    double worst_series = 0, worst_exp = 0;
    for (long p : {2, 3, 5, 7}) {
        for (int m = 1; m <= 6; ++m) {
            const PrimeParams ctx(p, m);
            const auto d = det_D(ctx);
            if (!(d.value == angular_determinant(ctx).exact * d.radial) || d.radial != radial_det_contribution(ctx).exact) o.fail("factorization");
            const ZetaClosedForm z(ctx);
            for (double s : {2.0, 3.0, 4.0}) worst_series = std::max(worst_series, std::abs(z.series(s) - z.value(s)));
            const auto r = radial_det_contribution(ctx);
            worst_exp = std::max(worst_exp, std::abs(r.exp_minus_zeta_prime - r.exact.get_d()));
        }
    }
    if (worst_series >= 1e-12) o.fail("series deviation " + fmt(worst_series));
    if (worst_exp >= 1e-8) o.fail("exp(-zeta') deviation " + fmt(worst_exp));
    if (o.pass) o.detail = "28 exact factorizations, series " + fmt(worst_series) + ", exp " + fmt(worst_exp);
    return o;
}

// AC8
Outcome correlator() {
    Outcome o;
    double worst_kernel = 0;
    for (long p : {2, 3, 5}) {
        for (int m = 1; m <= 5; ++m) {
            const PrimeParams ctx(p, m);
            const auto pts = sample_points(ctx, 3);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    if (i == j) continue;
                    const double h = kernel_H_norm_form(pts[i], pts[j]).get_d();
                    worst_kernel = std::max(worst_kernel, std::abs(two_point(pts[i], pts[j], 1.0) - h) / h);
                }
            }
        }
    }
    if (worst_kernel >= 1e-12) o.fail("two_point vs H " + fmt(worst_kernel));
    double worst_limit = 0;
    std::size_t min_pairs = SIZE_MAX;
    for (auto [p, m] : std::vector<std::pair<long, int>>{{3, 2}, {2, 5}, {5, 3}}) {
        const PrimeParams ctx(p, m);
        const auto pts = sample_points(ctx, 2);
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (i == j) continue;
                const auto r = height_limit_check(pts[i], pts[j]);
                ++pairs;
                worst_limit = std::max(worst_limit, std::abs(r.estimate - r.target) / (1 + std::abs(r.target)));
                if (!r.holds()) o.fail("limit at p=" + std::to_string(p));
            }
        }
        min_pairs = std::min(min_pairs, pairs);
    }
    if (min_pairs < 20) o.fail("too few pairs");
    if (o.pass) o.detail = "kernel " + fmt(worst_kernel) + ", limit " + fmt(worst_limit) + " over >= " + std::to_string(min_pairs) + " pairs";
    return o;
}

// AC9
Outcome dtn() {
    Outcome o;
    for (long p : {2, 3, 5, 7}) {
        for (const auto& row : dtn_cross_check(PrimeParams(p, 1), 6)) {
            if (row.lhs != row.rhs) o.fail("p=" + std::to_string(p) + " n=" + std::to_string(row.n));
        }
    }
    if (o.pass) o.detail = "24 rows exact";
    return o;
}

// AC10
struct RunResult {
    int status;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult r{-1, {}};
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Outcome cli_determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.fail("no CLI path given");
        return o;
    }
    const std::vector<std::string> documented{
        "greens --p 3 --m 2",
        "greens --p 2 --m 5",
        "spectrum --p 3 --m 2 --max-conductor 2",
        "spectrum --p 2 --m 1 --max-conductor 3",
        "det --p 3 --m 2",
        "matrix --p 3 --m 2 --level 1",
        "correlator --p 3 --m 2 --x1 4 --x2 1",
        "tree --p 2 --m 5 --depth 0",
        "tree --p 2 --m 5 --depth 1",
        "tree --p 3 --m 1 --depth 1",
        "det --p 3 --m 2 --format csv",
        "spectrum --p 3 --m 2 --max-conductor 2 --format pretty",
    };
    for (const auto& args : documented) {
        const auto a = run(cli + " " + args);
        const auto b = run(cli + " " + args);
        if (a.output != b.output || a.output.empty()) o.fail("nondeterministic: " + args);
        if (a.status != 0 || b.status != 0) o.fail("nonzero exit: " + args);
    }
    if (run(cli + " correlator --p 3 --m 2 --x1 4 --x2 1 --extrapolation none").status != 1) o.fail("induced failure did not exit 1");
    if (run(cli + " greens --p 4 --m 1").status != 2) o.fail("p = 4 did not exit 2");
    if (run(cli + " spectrum --p 3 --m 2 --max-conductor 0").status != 2) o.fail("N = 0 did not exit 2");
    if (o.pass) o.detail = std::to_string(documented.size()) + " commands byte-identical; exit codes 0/1/2 as specified";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 Green's/height identity", greens_identity},
        {"AC2 delta normalization", delta_normalization},
        {"AC3 kernel identities", kernel_identities},
        {"AC4 spectrum", spectrum},
        {"AC5 matrix consistency", matrix_consistency},
        {"AC6 Weyl's law", weyl},
        {"AC7 determinant", determinant},
        {"AC8 correlator", correlator},
        {"AC9 m=1 Dirichlet-to-Neumann", dtn},
        {"AC10 CLI determinism", [&] { return cli_determinism(cli); }},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " : " << o.detail << " [" << fmt(seconds_since(t0)) << " s]" << std::endl;
        if (!o.pass) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
