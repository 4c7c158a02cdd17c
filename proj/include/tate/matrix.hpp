#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tate/domain.hpp"
#include "tate/kernel.hpp"

namespace tate {

/// Dimension cap for build_matrix; overridden by the TATE_MAX_DIM environment variable.
std::size_t default_max_dimension();

/// D restricted to level-k step functions: entry [i][j] is D(1_{b_j}) at the centre of b_i.
class OperatorMatrix {
public:
    OperatorMatrix(int level, std::vector<Ball> basis, std::vector<Rational> entries);

    int level() const { return level_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<Ball>& basis() const { return basis_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * basis_.size() + j]; }
    /// Double-precision copy for eigendecomposition.
    Eigen::MatrixXd to_double() const;
    Rational trace() const;
    /// Exact matrix-vector product in the basis order.
    std::vector<Rational> apply(const std::vector<Rational>& vec) const;

private:
    int level_;
    std::vector<Ball> basis_;
    std::vector<Rational> entries_;
};

OperatorMatrix build_matrix(int level, const PrimeParams& ctx, std::size_t max_dimension = default_max_dimension());

/// Eigenvalues of the float mirror, ascending.
std::vector<double> matrix_eigenvalues(const OperatorMatrix& mx);

struct MatrixReport {
    std::size_t dimension = 0;
    bool symmetric = false;
    bool zero_row_sums = false;
    double min_eigenvalue = 0;
    std::size_t kernel_dimension = 0;
    std::vector<double> eigenvalues;
    std::vector<double> expected;
    double max_spectrum_deviation = 0;
    double max_character_residual = 0;
    std::size_t characters_checked = 0;
    Rational trace;
    double expected_trace = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Structural and spectral checks against the character spectrum of level k.
MatrixReport verify_matrix(const OperatorMatrix& mx, const PrimeParams& ctx);

/// Label for a ball, e.g. "v1_c4_k2".
std::string ball_label(const Ball& b);
/// Row-major exact rationals, header row of basis labels.
void write_matrix_csv(std::ostream& os, const OperatorMatrix& mx);

}  // namespace tate
