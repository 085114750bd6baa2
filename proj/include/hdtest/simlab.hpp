#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hdtest/covmodel.hpp"
#include "hdtest/dists.hpp"

namespace hdtest {

enum class Problem { OneSample, TwoSample, Regression };
enum class Method { Sum, Max, Combo, Hc2, Fly };

std::string problem_name(Problem problem);
std::string method_name(Method method);  // SUM, MAX, COM, HC2, FLY

/// Mean-shift (or coefficient) alternative. m = 0 or total_sq_norm = 0 is the
/// null. One- and two-sample: the first m coordinates equal
/// sqrt(total_sq_norm / m). Regression: the first m tested coefficients are
/// N(0, 1) draws rescaled so that ||beta_b||^2 = total_sq_norm.
struct Alternative {
  int m = 0;
  double total_sq_norm = 0.0;
};

struct SimConfig {
  Problem problem = Problem::OneSample;
  int n = 100;   // one-sample size, n1 for two samples, rows for regression
  int n2 = 0;    // two-sample second size; 0 means n2 = n
  int q = 0;     // regression nuisance columns
  int p = 200;   // total dimension (regression: q + tested)
  CovarianceSpec scenario = Ar1{0.5, 200};
  InnovationKind innovation = StdNormal{};
  Alternative alternative;
  double alpha = 0.05;
  int reps = 1000;
  std::uint64_t seed = 1;
  std::vector<Method> methods = {Method::Sum, Method::Max, Method::Combo};
  bool redraw_scenario = false;      // draw scenario parameters per replication
  bool redraw_coefficients = false;  // draw regression beta_a (and beta_b) per replication
  int threads = 0;                   // 0: OpenMP default capped by HDTEST_THREADS
};

/// Throws Config on an invalid combination (e.g. HC2 for regression).
void validate(const SimConfig& config);

struct MethodRate {
  Method method = Method::Sum;
  long rejections = 0;
  double rate = 0.0;
  double se = 0.0;  // sqrt(rate (1 - rate) / reps)
};

struct MCReport {
  SimConfig config;
  std::vector<MethodRate> rates;
  double wall_seconds = 0.0;

  const MethodRate& rate_of(Method method) const;
};

/// Replication r draws its data from RngStream(seed, 0).derive(kReplication, r);
/// scenario parameters and regression coefficients come from their own
/// derived streams, so adding methods or changing m never perturbs the data.
MCReport run_experiment(const SimConfig& config);

/// One report per m with the total squared norm held fixed. All points share
/// replication streams (common random numbers).
std::vector<MCReport> run_power_curve(const SimConfig& config,
                                      std::span<const int> m_values);

/// Columns: problem,scenario,innovation,n,p,q,m,method,rate,se,reps,seed.
void write_report_csv(std::ostream& out, std::span<const MCReport> reports);

/// Same columns plus `reported` (published size for the cell, empty if none).
void write_reproduction_csv(std::ostream& out, const MCReport& report,
                            const std::string& table);

}  // namespace hdtest
