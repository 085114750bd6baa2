#pragma once

#include <Eigen/Dense>

#include "hdtest/report.hpp"

// Two-sample mean tests, H0: mu1 = mu2, with the pooled covariance
//   S = [sum (X1j - X1bar)(X1j - X1bar)' + sum (X2j - X2bar)(...)'] / (n1 + n2).
// R is the correlation of S. D holds the unbiased pooled variances
// N S_ii / (N - 2), which makes (N - 2) p / (N - 4) the exact null mean of the
// quadratic form under normality.

namespace hdtest {

struct TwoSampleData {
  Eigen::MatrixXd sample1;  // n1 x p
  Eigen::MatrixXd sample2;  // n2 x p
};

/// [ (n1 n2 / N) d' D^{-1} d - (N - 2) p / (N - 4) ]
///   / sqrt(2 [tr(R^2) - p^2 / (N - 2)] c),  c = 1 + tr(R^2) / p^{3/2},
/// with N = n1 + n2 >= 5 and d the mean difference.
double t_sum_two(const TwoSampleData& data);

/// (n1 n2 / N) max_i d_i^2 / D_ii.
MaxStatistic t_max_two(const TwoSampleData& data);

TestReport combo_two(const TwoSampleData& data, double alpha);

}  // namespace hdtest
