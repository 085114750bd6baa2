#pragma once

#include <memory>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "hdtest/rng.hpp"

namespace hdtest {

/// Sigma_ij = rho^|i-j|.
struct Ar1 {
  double rho = 0.5;
  int p = 0;
};

/// Sigma = D^{1/2} R D^{1/2}, R = I + b b' - diag(b^2). Variances
/// ~ Uniform(1, 2); the first floor(p^0.3) entries of b ~ Uniform(0.7, 0.9).
struct SpikedFactor {
  int p = 0;
};

/// Sigma = g g' + (I - rho W)^{-1} (I - rho W')^{-1} with W in rook form and
/// the first floor(p^delta_gamma) entries of g ~ Uniform(0.7, 0.9).
struct SpatialRook {
  int p = 0;
  double rho_eps = 0.5;
  double delta_gamma = 0.3;
};

struct Explicit {
  Eigen::MatrixXd matrix;
};

using CovarianceSpec = std::variant<Ar1, SpikedFactor, SpatialRook, Explicit>;

int spec_dim(const CovarianceSpec& spec);

/// Short label used in reports: "I", "II", "III", "identity" or "explicit".
std::string scenario_name(const CovarianceSpec& spec);

/// Immutable dense covariance matrix. The square-root factor is computed on
/// first use and shared between copies; concurrent first access is safe.
class CovarianceMatrix {
 public:
  /// Throws NotSymmetric if |S_ij - S_ji| exceeds 1e-12 * max|S|; the stored
  /// matrix is then exactly symmetric.
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  bool is_identity() const noexcept { return identity_; }

  /// L with L L' = Sigma (symmetric square root).
  const Eigen::MatrixXd& sqrt_factor() const;

 private:
  struct Lazy;
  Eigen::MatrixXd entries_;
  bool identity_ = false;
  std::shared_ptr<Lazy> lazy_;
};

/// Realizes a scenario. Random scenario parameters come from `stream`, so a
/// fixed stream fixes the matrix for a whole experiment.
CovarianceMatrix build_covariance(const CovarianceSpec& spec, RngStream& stream);

/// Rook-form spatial weight matrix.
Eigen::MatrixXd rook_weights(int p);

/// Symmetric square root via eigendecomposition; eigenvalues in
/// [-tol, 0) are clamped to zero, tol = 1e-10 * max|Sigma_ij|.
Eigen::MatrixXd sqrt_factor(const Eigen::MatrixXd& sigma);

/// tr(A^k) for k in 1..4 without forming A^k for k = 2.
double trace_power(const Eigen::MatrixXd& a, int k);

enum class Divisor { N, NMinus1 };

/// Rows are observations.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data,
                                  Divisor divisor = Divisor::N);

/// Pooled within-sample covariance divided by n1 + n2.
Eigen::MatrixXd pooled_covariance(const Eigen::MatrixXd& sample1,
                                  const Eigen::MatrixXd& sample2);

/// D^{-1/2} S D^{-1/2}; throws DegenerateVariance on a non-positive diagonal.
Eigen::MatrixXd correlation_of(const Eigen::MatrixXd& cov);

}  // namespace hdtest
