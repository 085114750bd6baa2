#pragma once

#include <Eigen/Dense>

#include "hdtest/report.hpp"

// Tests of H0: beta_b = 0 in y = X_a beta_a + X_b beta_b + eps, with p - q
// tested coefficients possibly exceeding n.

namespace hdtest {

struct RegressionProblem {
  Eigen::VectorXd y;    // n
  Eigen::MatrixXd x_a;  // n x q nuisance design, q may be 0
  Eigen::MatrixXd x_b;  // n x (p - q) tested design
};

/// Target squared norm of each residualized tested column.
///   ResidualDf: n - q (the centering term of the sum statistic is then
///               exactly unbiased under H0; equals n when q = 0)
///   SampleSize: n
enum class ColumnScale { ResidualDf, SampleSize };

struct ResidualizedDesign {
  int n = 0;
  int q = 0;
  Eigen::MatrixXd basis;      // n x q orthonormal basis of span(X_a)
  Eigen::MatrixXd x_tilde_b;  // (I - H_a) X_b, columns rescaled to the target norm
  Eigen::VectorXd eps_hat;    // (I - H_a) y
  double sigma2_hat = 0.0;    // eps_hat' eps_hat / (n - q)

  /// H_a v without forming H_a.
  Eigen::VectorXd project(const Eigen::VectorXd& v) const;
};

/// Throws Size (q >= n, shape mismatch), RankDeficient (X_a), ZeroNormColumn
/// (a tested column lies in span(X_a); message names the column) and
/// DegenerateResponse (y in span(X_a)).
ResidualizedDesign residualize(const RegressionProblem& problem,
                               ColumnScale scale = ColumnScale::ResidualDf);

/// n^2 / ((n + 1 - q)(n - q)) * { tr(S^2) - tr(S)^2 / (n - q) }. May be negative.
double trace_estimator(const Eigen::MatrixXd& sigma_hat_ba, int n, int q);

/// Same estimator with S = X' X / n, computed without forming S.
double trace_estimator_from_design(const Eigen::MatrixXd& x_tilde, int n, int q);

/// F_j = (y' x_j)^2 / (x_j' x_j) / sigma2_hat for each residualized column.
Eigen::VectorXd partial_f_statistics(const ResidualizedDesign& design);

MaxStatistic t_max_reg(const ResidualizedDesign& design);
double t_sum_reg(const ResidualizedDesign& design);
TestReport combo_reg(const ResidualizedDesign& design, double alpha);

MaxStatistic t_max_reg(const RegressionProblem& problem);
double t_sum_reg(const RegressionProblem& problem);
TestReport combo_reg(const RegressionProblem& problem, double alpha);

}  // namespace hdtest
