#include "hdtest/asymcheck.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "hdtest/dists.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/onesample.hpp"
#include "hdtest/parallel.hpp"

namespace hdtest {
namespace {

constexpr int kBatch = 64;

void require_unit_diagonal(const CovarianceMatrix& sigma) {
  const Eigen::VectorXd d = sigma.entries().diagonal();
  if ((d.array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                "limit checks need a unit-diagonal covariance matrix");
  }
}

void require_reps(int reps) {
  if (reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
}

double empirical_quantile(std::vector<double> sorted_copy, double level) {
  const auto n = static_cast<double>(sorted_copy.size());
  auto idx = static_cast<std::size_t>(std::ceil(level * n));
  idx = std::clamp<std::size_t>(idx, 1, sorted_copy.size()) - 1;
  return sorted_copy[idx];
}

LimitCheckReport finish(TargetLaw law, std::vector<double> values) {
  LimitCheckReport report;
  report.target = law;
  report.sample_size = static_cast<int>(values.size());
  KsResult ks;
  switch (law) {
    case TargetLaw::Normal: ks = ks_test(values, normal_cdf); break;
    case TargetLaw::Gumbel: ks = ks_test(values, gumbel_cdf); break;
    case TargetLaw::ComboLaw: ks = ks_test(values, combo_cdf); break;
    case TargetLaw::None: break;
  }
  report.ks_statistic = ks.statistic;
  report.ks_pvalue = ks.pvalue;
  report.values = std::move(values);
  return report;
}

}  // namespace

const char* target_law_name(TargetLaw law) noexcept {
  switch (law) {
    case TargetLaw::Normal: return "normal";
    case TargetLaw::Gumbel: return "gumbel";
    case TargetLaw::ComboLaw: return "combo";
    case TargetLaw::None: return "none";
  }
  return "none";
}

SumMaxDraws simulate_sum_max(const CovarianceMatrix& sigma, int reps,
                             const RngStream& stream, int threads) {
  require_unit_diagonal(sigma);
  require_reps(reps);
  const int p = sigma.dim();
  const double scale = std::sqrt(2.0 * trace_power(sigma.entries(), 2));
  const double logp = std::log(static_cast<double>(p));
  const double centering = 2.0 * logp - std::log(logp);
  const Eigen::MatrixXd& factor = sigma.sqrt_factor();

  SumMaxDraws out{std::vector<double>(reps), std::vector<double>(reps)};
  const int batches = (reps + kBatch - 1) / kBatch;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (int b = 0; b < batches; ++b) {
    const int first = b * kBatch;
    const int rows = std::min(kBatch, reps - first);
    Eigen::MatrixXd z(rows, p);
    for (int i = 0; i < rows; ++i) {
      RngStream rs = stream.derive(stream_tag::kReplication,
                                   static_cast<std::uint64_t>(first + i));
      std::normal_distribution<double> normal;
      for (int j = 0; j < p; ++j) z(i, j) = normal(rs.engine());
    }
    // rows are z_i' L' = (L z_i)'; L is symmetric
    Eigen::MatrixXd x;
    if (sigma.is_identity()) {
      x = std::move(z);
    } else {
      x.noalias() = z * factor;
    }
    for (int i = 0; i < rows; ++i) {
      const auto sq = x.row(i).array().square();
      out.sum[first + i] = (sq.sum() - p) / scale;
      out.max[first + i] = sq.maxCoeff() - centering;
    }
  }
  return out;
}

LimitCheckReport clt_check(const CovarianceMatrix& sigma, int reps,
                           const RngStream& stream, int threads) {
  return finish(TargetLaw::Normal, simulate_sum_max(sigma, reps, stream, threads).sum);
}

LimitCheckReport gumbel_check(const CovarianceMatrix& sigma, int reps,
                              const RngStream& stream, int threads) {
  return finish(TargetLaw::Gumbel, simulate_sum_max(sigma, reps, stream, threads).max);
}

FactorizationGrid factorization_gaps(std::span<const double> first,
                                     std::span<const double> second,
                                     std::span<const double> levels) {
  if (first.size() != second.size() || first.empty()) {
    throw Error(ErrorCode::InvalidArgument, "paired samples must be nonempty and equal length");
  }
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "empty quantile grid");
  double min_level = 1.0;
  for (double l : levels) {
    if (!(l > 0.0 && l < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "quantile levels must lie in (0, 1)");
    }
    min_level = std::min(min_level, l);
  }
  const double n = static_cast<double>(first.size());
  if (n * min_level * min_level < 100.0) {
    throw Error(ErrorCode::InvalidArgument,
                "too few replications for the quantile grid (need reps * min_level^2 >= 100)");
  }

  std::vector<double> s1(first.begin(), first.end()), s2(second.begin(), second.end());
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  const auto k = static_cast<Eigen::Index>(levels.size());
  std::vector<double> xq, yq;
  for (double l : levels) {
    xq.push_back(empirical_quantile(s1, l));
    yq.push_back(empirical_quantile(s2, l));
  }

  FactorizationGrid grid{std::vector<double>(levels.begin(), levels.end()),
                         Eigen::MatrixXd(k, k), Eigen::MatrixXd(k, k)};
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      std::size_t joint = 0, in_a = 0, in_b = 0;
      for (std::size_t r = 0; r < first.size(); ++r) {
        const bool ea = first[r] <= xq[a];
        const bool eb = second[r] <= yq[b];
        in_a += ea;
        in_b += eb;
        joint += ea && eb;
      }
      const double pj = joint / n;
      grid.gaps(a, b) = std::abs(pj - (in_a / n) * (in_b / n));
      grid.standard_errors(a, b) = std::sqrt(pj * (1.0 - pj) / n);
    }
  }
  return grid;
}

LimitCheckReport independence_check(const CovarianceMatrix& sigma, int reps,
                                    std::span<const double> levels,
                                    const RngStream& stream, int threads) {
  require_reps(reps);
  const SumMaxDraws draws = simulate_sum_max(sigma, reps, stream, threads);
  LimitCheckReport report;
  report.target = TargetLaw::None;
  report.sample_size = reps;
  report.grid = factorization_gaps(draws.sum, draws.max, levels);
  return report;
}

LimitCheckReport combo_law_check(const CovarianceMatrix& sigma, int n, int reps,
                                 const RngStream& stream, int threads) {
  require_reps(reps);
  const int p = sigma.dim();
  const Eigen::MatrixXd& factor = sigma.sqrt_factor();
  std::vector<double> pvalues(reps);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (int r = 0; r < reps; ++r) {
    try {
      RngStream rs = stream.derive(stream_tag::kReplication, static_cast<std::uint64_t>(r));
      Eigen::MatrixXd x = sample_matrix(StdNormal{}, n, p, rs);
      if (!sigma.is_identity()) x = x * factor;
      pvalues[r] = combo_one(x, 0.05).p_combo;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return finish(TargetLaw::ComboLaw, std::move(pvalues));
}

}  // namespace hdtest
