#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hdtest/covmodel.hpp"
#include "hdtest/ks.hpp"
#include "hdtest/rng.hpp"

// Monte Carlo checks of the limit laws behind the combined tests, on
// Z ~ N(0, Sigma) with unit-diagonal Sigma:
//   S = (sum Z_i^2 - p) / sqrt(2 tr Sigma^2)           -> N(0, 1)
//   M = max Z_i^2 - 2 log p + log log p                -> Gumbel
//   S and M asymptotically independent; min of their p-values has cdf
//   1 - (1 - w)^2.

namespace hdtest {

enum class TargetLaw { Normal, Gumbel, ComboLaw, None };

const char* target_law_name(TargetLaw law) noexcept;

/// Quadrant factorization diagnostics over a grid of marginal quantile levels:
/// gaps(a, b) = |P(S <= x_a, M <= y_b) - P(S <= x_a) P(M <= y_b)| with x_a, y_b
/// the empirical level-a/level-b quantiles, and the binomial standard error of
/// the joint cell probability.
struct FactorizationGrid {
  std::vector<double> levels;
  Eigen::MatrixXd gaps;
  Eigen::MatrixXd standard_errors;
};

struct LimitCheckReport {
  TargetLaw target = TargetLaw::None;
  int sample_size = 0;
  double ks_statistic = 0.0;
  double ks_pvalue = 1.0;
  std::vector<double> values;  // simulated statistics, replication order
  FactorizationGrid grid;      // filled by independence_check only
};

struct SumMaxDraws {
  std::vector<double> sum;  // S per replication
  std::vector<double> max;  // M per replication
};

/// Replication r uses stream.derive(kReplication, r); the output does not
/// depend on `threads`.
SumMaxDraws simulate_sum_max(const CovarianceMatrix& sigma, int reps,
                             const RngStream& stream, int threads = 0);

LimitCheckReport clt_check(const CovarianceMatrix& sigma, int reps,
                           const RngStream& stream, int threads = 0);
LimitCheckReport gumbel_check(const CovarianceMatrix& sigma, int reps,
                              const RngStream& stream, int threads = 0);

/// Needs reps * min_level^2 >= 100 so the smallest joint cell is populated.
LimitCheckReport independence_check(const CovarianceMatrix& sigma, int reps,
                                    std::span<const double> levels,
                                    const RngStream& stream, int threads = 0);

FactorizationGrid factorization_gaps(std::span<const double> first,
                                     std::span<const double> second,
                                     std::span<const double> levels);

/// Null one-sample data X = Z Sigma^{1/2} (n x p, Gaussian); KS of the combined
/// p-value min(p_sum, p_max) against 1 - (1 - w)^2.
LimitCheckReport combo_law_check(const CovarianceMatrix& sigma, int n, int reps,
                                 const RngStream& stream, int threads = 0);

}  // namespace hdtest
