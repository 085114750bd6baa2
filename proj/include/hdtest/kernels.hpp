#pragma once

#include <Eigen/Dense>

// Data-parallel kernels shared by the test statistics. The default namespace
// holds the OpenMP versions; `reference` holds straightforward serial
// versions that the unit tests and the benchmark compare against.
//
// Parallel reductions are split into fixed-size blocks whose partial sums are
// combined in block order, so results are bit-identical for any thread count.

namespace hdtest::kernels {

/// Column means and variances with divisor n (rows are observations).
struct ColumnMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
};

/// Throws DegenerateVariance naming the first column whose variance is zero
/// relative to its magnitude.
ColumnMoments column_moments(const Eigen::MatrixXd& x);

/// Throws DegenerateVariance if any entry of `var` is not positive relative to
/// `scale` (per-column magnitude).
void require_positive_variance(const Eigen::VectorXd& var,
                               const Eigen::VectorXd& scale);

/// ||Y' Y||_F^2, computed through whichever Gram matrix is smaller.
double gram_frobenius_sq(const Eigen::MatrixXd& y);

/// (I - Q Q') X for Q with orthonormal columns; parallel over columns of X.
Eigen::MatrixXd project_out(const Eigen::MatrixXd& q, const Eigen::MatrixXd& x);

/// Euclidean norms of the columns of X.
Eigen::VectorXd column_norms(const Eigen::MatrixXd& x);

namespace reference {

ColumnMoments column_moments(const Eigen::MatrixXd& x);

/// Sum over all (j, k) of (sum_i y_ij y_ik)^2 by a direct triple loop.
double gram_frobenius_sq(const Eigen::MatrixXd& y);

/// (I - H) X with H = A (A'A)^{-1} A' formed explicitly.
Eigen::MatrixXd project_out_design(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& x);

}  // namespace reference
}  // namespace hdtest::kernels
