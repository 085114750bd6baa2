#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hdtest/covmodel.hpp"
#include "hdtest/report.hpp"

// One-sample mean tests, H0: mu = 0, on an n x p data matrix whose rows are
// observations. D holds the unbiased sample variances (divisor n - 1); the
// correlation matrix R does not depend on the divisor.

namespace hdtest {

/// Standardized diagonal quadratic form
///   (n xbar' D^{-1} xbar - (n-1)p/(n-3)) / sqrt(2 [tr(R^2) - p^2/(n-1)]).
/// Needs n >= 4. Throws Denominator when tr(R^2) <= p^2/(n-1).
double t_sum_one(const Eigen::MatrixXd& x);

/// n * max_i xbar_i^2 / sigma_ii^2, and its Gumbel centering.
MaxStatistic t_max_one(const Eigen::MatrixXd& x);

TestReport combo_one(const Eigen::MatrixXd& x, double alpha);

// --- thresholded L2 statistic (HC2) -------------------------------------

/// 0.0475 * k for k = 1..20.
std::vector<double> default_hc2_grid();

/// p {2 sqrt(l) phi(sqrt(l)) + 2 Phibar(sqrt(l))}
double hc2_null_mean(double lambda, int p);
/// p {2 [l^{3/2} + 3 sqrt(l)] phi(sqrt(l)) + 6 Phibar(sqrt(l))}
double hc2_null_variance(double lambda, int p);

/// max over s in grid of (T_2n(s) - mean(s)) / sd(s), lambda_s = 2 s log p.
double hc2_statistic(const Eigen::MatrixXd& x, std::span<const double> grid);

/// Upper-tail p-value from the extreme-value approximation
///   P(a(log p) T - b(log p, eta) <= t) -> exp(-exp(-t)),
/// a(y) = sqrt(2 log y), b(y, eta) = 2 log y + log log y / 2
///   - log(4 pi / (1 - eta)^2) / 2, with eta = 1 - max(grid). Needs p >= 16.
double hc2_pvalue(double t_hc2, int p, std::span<const double> grid);

// --- power enhancement statistic (FLY) ----------------------------------

struct FlyStatistic {
  double j = 0.0;
  double j0 = 0.0;  // screening component, >= 0
  double j1 = 0.0;  // (n xbar' D^{-1} xbar - p) / (2 sqrt p)
};

/// Screening threshold log log n * sqrt(log p / n); needs n >= 3.
FlyStatistic fly_statistic(const Eigen::MatrixXd& x);
double fly_pvalue(const FlyStatistic& s) noexcept;

// --- theory ---------------------------------------------------------------

/// Phi(-z_alpha + n mu' D^{-1} mu / sqrt(2 tr(R^2))) with population D, R.
double power_sum_theoretical(const Eigen::VectorXd& mu,
                             const CovarianceMatrix& sigma, int n, double alpha);

}  // namespace hdtest
