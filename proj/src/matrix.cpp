#include "tate/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "tate/spectral.hpp"

namespace tate {

std::size_t default_max_dimension() {
    if (const char* env = std::getenv("TATE_MAX_DIM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw std::invalid_argument("TATE_MAX_DIM must be a positive integer");
    }
    return 20000;
}

OperatorMatrix::OperatorMatrix(int level, std::vector<Ball> basis, std::vector<Rational> entries)
    : level_(level), basis_(std::move(basis)), entries_(std::move(entries)) {
    if (entries_.size() != basis_.size() * basis_.size()) throw std::invalid_argument("matrix shape mismatch");
}

Eigen::MatrixXd OperatorMatrix::to_double() const {
    const auto n = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
        }
    }
    return out;
}

Rational OperatorMatrix::trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < dimension(); ++i) t += (*this)(i, i);
    return t;
}

std::vector<Rational> OperatorMatrix::apply(const std::vector<Rational>& vec) const {
    if (vec.size() != dimension()) throw std::invalid_argument("vector length does not match matrix dimension");
    std::vector<Rational> out(dimension(), Rational(0));
    for (std::size_t i = 0; i < dimension(); ++i) {
        for (std::size_t j = 0; j < dimension(); ++j) out[i] += (*this)(i, j) * vec[j];
    }
    return out;
}

OperatorMatrix build_matrix(int level, const PrimeParams& ctx, std::size_t max_dimension) {
    if (level < 1) throw std::invalid_argument("matrix level must be >= 1");
    // m (p-1) p^(k-1), checked before allocating anything
    double dim = static_cast<double>(ctx.m()) * static_cast<double>(ctx.p() - 1) *
                 std::pow(static_cast<double>(ctx.p()), level - 1);
    if (dim > static_cast<double>(max_dimension)) {
        throw std::length_error("matrix dimension " + std::to_string(static_cast<long long>(dim)) +
                                " exceeds cap " + std::to_string(max_dimension));
    }
    auto basis = level_balls(ctx, level);
    const std::size_t n = basis.size();
    const KernelContext kc(ctx);
    const Rational mu = rpow(ctx.p(), -level);
    std::vector<TatePoint> centers;
    centers.reserve(n);
    for (const auto& b : basis) centers.push_back(b.point());

    std::vector<Rational> entries(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational w = kc.c_p() * kernel_H(centers[j], centers[i]) * mu;
            entries[i * n + j] = -w;
            entries[j * n + i] = -w;
            entries[i * n + i] += w;
            entries[j * n + j] += w;
        }
    }
    return {level, std::move(basis), std::move(entries)};
}

std::vector<double> matrix_eigenvalues(const OperatorMatrix& mx) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mx.to_double(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

MatrixReport verify_matrix(const OperatorMatrix& mx, const PrimeParams& ctx) {
    MatrixReport r;
    const std::size_t n = mx.dimension();
    r.dimension = n;

    r.symmetric = true;
    r.zero_row_sums = true;
    for (std::size_t i = 0; i < n && r.symmetric; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (mx(i, j) != mx(j, i)) {
                r.symmetric = false;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) s += mx(i, j);
        if (sgn(s) != 0) {
            r.zero_row_sums = false;
            break;
        }
    }
    if (!r.symmetric) r.violations.emplace_back("matrix is not exactly symmetric");
    if (!r.zero_row_sums) r.violations.emplace_back("row sums are not exactly zero");

    r.eigenvalues = matrix_eigenvalues(mx);
    r.min_eigenvalue = r.eigenvalues.empty() ? 0.0 : r.eigenvalues.front();
    r.kernel_dimension = static_cast<std::size_t>(
        std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(), [](double x) { return std::abs(x) < 1e-9; }));
    if (r.min_eigenvalue < -1e-9) r.violations.emplace_back("matrix is not positive semi-definite");
    if (r.kernel_dimension != 1) r.violations.emplace_back("kernel dimension is not 1");

    const auto spectrum = enumerate_spectrum(mx.level(), ctx);
    r.expected = expand_spectrum(spectrum);
    if (r.expected.size() != r.eigenvalues.size()) {
        r.violations.emplace_back("spectrum size differs from matrix dimension");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            r.max_spectrum_deviation = std::max(r.max_spectrum_deviation, std::abs(r.eigenvalues[i] - r.expected[i]));
        }
        if (r.max_spectrum_deviation > 1e-8) r.violations.emplace_back("eigenvalue multiset differs from the character spectrum");
    }

    r.trace = mx.trace();
    for (double x : r.expected) r.expected_trace += x;
    if (std::abs(r.trace.get_d() - r.expected_trace) > 1e-8 * std::max(1.0, std::abs(r.expected_trace))) {
        r.violations.emplace_back("trace differs from the spectral sum");
    }

    // character vectors; above 600 dimensions only an evenly spaced subset
    const Eigen::MatrixXcd mc = mx.to_double().cast<std::complex<double>>();
    std::vector<TatePoint> centers;
    centers.reserve(n);
    for (const auto& b : mx.basis()) centers.push_back(b.point());
    const auto labels = character_labels(ctx, mx.level());
    const std::size_t stride = n > 600 ? (labels.size() + 599) / 600 : 1;
    for (std::size_t li = 0; li < labels.size(); li += stride) {
        const auto& label = labels[li];
        Eigen::VectorXcd vec(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) vec(static_cast<Eigen::Index>(i)) = label(centers[i]);
        const double lam = eigenvalue_of(label, ctx).value;
        const Eigen::VectorXcd res = mc * vec - lam * vec;
        r.max_character_residual = std::max(r.max_character_residual, res.cwiseAbs().maxCoeff());
        ++r.characters_checked;
    }
    if (r.max_character_residual >= 1e-10) r.violations.emplace_back("character vectors are not eigenvectors");
    return r;
}

std::string ball_label(const Ball& b) {
    return "v" + std::to_string(b.v()) + "_c" + b.center().get_str() + "_k" + std::to_string(b.k());
}

void write_matrix_csv(std::ostream& os, const OperatorMatrix& mx) {
    const std::size_t n = mx.dimension();
    os << "row";
    for (const auto& b : mx.basis()) os << ',' << ball_label(b);
    os << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        os << ball_label(mx.basis()[i]);
        for (std::size_t j = 0; j < n; ++j) os << ',' << to_string(mx(i, j));
        os << '\n';
    }
}

}  // namespace tate
