#include "hdtest/simlab.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <ostream>
#include <random>

#include "hdtest/errors.hpp"
#include "hdtest/onesample.hpp"
#include "hdtest/parallel.hpp"
#include "hdtest/published_sizes.hpp"
#include "hdtest/regression.hpp"
#include "hdtest/twosample.hpp"

namespace hdtest {
namespace {

constexpr std::size_t kMethodCount = 5;
using Outcome = std::array<std::uint8_t, kMethodCount>;

std::size_t slot(Method m) { return static_cast<std::size_t>(m); }

bool wants(const SimConfig& c, Method m) {
  return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

CovarianceSpec with_dim(CovarianceSpec spec, int p) {
  std::visit(
      [p](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (!std::is_same_v<T, Explicit>) s.p = p;
      },
      spec);
  return spec;
}

int second_size(const SimConfig& c) { return c.n2 > 0 ? c.n2 : c.n; }

int tested_dim(const SimConfig& c) {
  return c.problem == Problem::Regression ? c.p - c.q : c.p;
}

// Draws n rows of X = mu + Sigma^{1/2} z.
Eigen::MatrixXd draw_sample(const SimConfig& c, const CovarianceMatrix& sigma, int n,
                            RngStream& rs) {
  Eigen::MatrixXd x = sample_matrix(c.innovation, n, c.p, rs);
  if (!sigma.is_identity()) x = x * sigma.sqrt_factor();
  return x;
}

Eigen::VectorXd shift_vector(const SimConfig& c) {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(c.p);
  const auto& alt = c.alternative;
  if (alt.m > 0 && alt.total_sq_norm > 0.0) {
    mu.head(alt.m).setConstant(std::sqrt(alt.total_sq_norm / alt.m));
  }
  return mu;
}

struct Coefficients {
  Eigen::VectorXd beta_a;
  Eigen::VectorXd beta_b;
};

Coefficients draw_coefficients(const SimConfig& c, RngStream nuisance, RngStream tested) {
  std::normal_distribution<double> z;
  Coefficients out{Eigen::VectorXd(c.q), Eigen::VectorXd::Zero(c.p - c.q)};
  for (int j = 0; j < c.q; ++j) out.beta_a(j) = z(nuisance.engine());
  const auto& alt = c.alternative;
  if (alt.m > 0 && alt.total_sq_norm > 0.0) {
    // Draw a fixed-length prefix so every m sees the same leading values.
    Eigen::VectorXd draws(c.p - c.q);
    for (int j = 0; j < c.p - c.q; ++j) draws(j) = z(tested.engine());
    Eigen::VectorXd head = draws.head(alt.m);
    head *= std::sqrt(alt.total_sq_norm) / head.norm();
    out.beta_b.head(alt.m) = head;
  }
  return out;
}

Outcome run_one_sample(const SimConfig& c, const CovarianceMatrix& sigma,
                       const Eigen::VectorXd& mu, RngStream& rs) {
  Eigen::MatrixXd x = draw_sample(c, sigma, c.n, rs);
  x.rowwise() += mu.transpose();
  Outcome o{};
  if (wants(c, Method::Sum) || wants(c, Method::Max) || wants(c, Method::Combo)) {
    const TestReport r = combo_one(x, c.alpha);
    o[slot(Method::Sum)] = r.reject_sum;
    o[slot(Method::Max)] = r.reject_max;
    o[slot(Method::Combo)] = r.reject_combo;
  }
  if (wants(c, Method::Hc2)) {
    const auto grid = default_hc2_grid();
    o[slot(Method::Hc2)] = hc2_pvalue(hc2_statistic(x, grid), c.p, grid) < c.alpha;
  }
  if (wants(c, Method::Fly)) {
    o[slot(Method::Fly)] = fly_pvalue(fly_statistic(x)) < c.alpha;
  }
  return o;
}

Outcome run_two_sample(const SimConfig& c, const CovarianceMatrix& sigma,
                       const Eigen::VectorXd& mu, RngStream& rs) {
  TwoSampleData data{draw_sample(c, sigma, c.n, rs), draw_sample(c, sigma, second_size(c), rs)};
  data.sample1.rowwise() += mu.transpose();
  const TestReport r = combo_two(data, c.alpha);
  Outcome o{};
  o[slot(Method::Sum)] = r.reject_sum;
  o[slot(Method::Max)] = r.reject_max;
  o[slot(Method::Combo)] = r.reject_combo;
  return o;
}

Outcome run_regression(const SimConfig& c, const CovarianceMatrix& sigma,
                       const Coefficients& beta, RngStream& rs) {
  const Eigen::MatrixXd x = draw_sample(c, sigma, c.n, rs);
  RegressionProblem problem;
  problem.x_a = x.leftCols(c.q);
  problem.x_b = x.rightCols(c.p - c.q);
  std::normal_distribution<double> z;
  Eigen::VectorXd eps(c.n);
  for (int i = 0; i < c.n; ++i) eps(i) = z(rs.engine());
  problem.y = problem.x_a * beta.beta_a + problem.x_b * beta.beta_b + eps;
  const TestReport r = combo_reg(problem, c.alpha);
  Outcome o{};
  o[slot(Method::Sum)] = r.reject_sum;
  o[slot(Method::Max)] = r.reject_max;
  o[slot(Method::Combo)] = r.reject_combo;
  return o;
}

std::string fmt(double v, int precision) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void write_row(std::ostream& out, const MCReport& r, const MethodRate& mr) {
  const SimConfig& c = r.config;
  out << problem_name(c.problem) << ',' << scenario_name(c.scenario) << ','
      << innovation_name(c.innovation) << ',' << c.n << ',' << c.p << ',' << c.q << ','
      << c.alternative.m << ',' << method_name(mr.method) << ',' << fmt(mr.rate, 10) << ','
      << fmt(mr.se, 10) << ',' << c.reps << ',' << c.seed;
}

constexpr const char* kHeader = "problem,scenario,innovation,n,p,q,m,method,rate,se,reps,seed";

}  // namespace

std::string problem_name(Problem problem) {
  switch (problem) {
    case Problem::OneSample: return "one-sample";
    case Problem::TwoSample: return "two-sample";
    case Problem::Regression: return "regression";
  }
  return "unknown";
}

std::string method_name(Method method) {
  switch (method) {
    case Method::Sum: return "SUM";
    case Method::Max: return "MAX";
    case Method::Combo: return "COM";
    case Method::Hc2: return "HC2";
    case Method::Fly: return "FLY";
  }
  return "unknown";
}

const MethodRate& MCReport::rate_of(Method method) const {
  for (const auto& r : rates) {
    if (r.method == method) return r;
  }
  throw Error(ErrorCode::InvalidArgument, "method " + method_name(method) + " was not run");
}

void validate(const SimConfig& c) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::Config, why); };
  if (c.reps < 1) fail("reps must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (c.p < 2) fail("p must be >= 2");
  if (c.methods.empty()) fail("no methods requested");
  if (const auto* e = std::get_if<Explicit>(&c.scenario); e && e->matrix.rows() != c.p) {
    fail("explicit covariance dimension differs from p");
  }
  const auto& alt = c.alternative;
  if (alt.m < 0 || alt.total_sq_norm < 0.0) fail("alternative needs m >= 0 and total_sq_norm >= 0");
  if (alt.m > tested_dim(c)) fail("alternative m exceeds the tested dimension");
  if (alt.total_sq_norm > 0.0 && alt.m == 0) fail("a nonzero alternative needs m >= 1");
  switch (c.problem) {
    case Problem::OneSample:
      if (c.n < 4) fail("one-sample simulation needs n >= 4");
      break;
    case Problem::TwoSample:
      if (c.n < 1 || second_size(c) < 1 || c.n + second_size(c) < 5) {
        fail("two-sample simulation needs n1 + n2 >= 5");
      }
      break;
    case Problem::Regression:
      if (c.q < 0 || c.q >= c.n) fail("regression needs 0 <= q < n");
      if (c.p - c.q < 2) fail("regression needs at least two tested columns");
      break;
  }
  if (c.problem != Problem::OneSample && (wants(c, Method::Hc2) || wants(c, Method::Fly))) {
    fail("HC2 and FLY are only available for the one-sample problem");
  }
}

MCReport run_experiment(const SimConfig& input) {
  validate(input);
  const auto start = std::chrono::steady_clock::now();
  SimConfig c = input;
  c.scenario = with_dim(c.scenario, c.p);

  const RngStream base(c.seed, 0);
  RngStream scenario_stream = base.derive(stream_tag::kScenario);
  const CovarianceMatrix shared_sigma = build_covariance(c.scenario, scenario_stream);
  if (!shared_sigma.is_identity()) (void)shared_sigma.sqrt_factor();
  const Eigen::VectorXd mu = shift_vector(c);
  Coefficients shared_beta;
  if (c.problem == Problem::Regression) {
    shared_beta = draw_coefficients(c, base.derive(stream_tag::kCoefficients),
                                    base.derive(stream_tag::kAlternative));
  }

  std::vector<Outcome> outcomes(static_cast<std::size_t>(c.reps));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(c.threads))
  for (int r = 0; r < c.reps; ++r) {
    try {
      RngStream rs = base.derive(stream_tag::kReplication, static_cast<std::uint64_t>(r));
      const CovarianceMatrix* sigma = &shared_sigma;
      CovarianceMatrix local = shared_sigma;
      if (c.redraw_scenario) {
        RngStream ss = rs.derive(stream_tag::kScenario);
        local = build_covariance(c.scenario, ss);
        sigma = &local;
      }
      Outcome o{};
      switch (c.problem) {
        case Problem::OneSample: o = run_one_sample(c, *sigma, mu, rs); break;
        case Problem::TwoSample: o = run_two_sample(c, *sigma, mu, rs); break;
        case Problem::Regression: {
          if (c.redraw_coefficients) {
            const Coefficients beta = draw_coefficients(
                c, rs.derive(stream_tag::kCoefficients), rs.derive(stream_tag::kAlternative));
            o = run_regression(c, *sigma, beta, rs);
          } else {
            o = run_regression(c, *sigma, shared_beta, rs);
          }
          break;
        }
      }
      outcomes[static_cast<std::size_t>(r)] = o;
    } catch (...) {
#pragma omp critical(hdtest_simlab_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  MCReport report;
  report.config = c;
  for (Method m : c.methods) {
    MethodRate mr;
    mr.method = m;
    for (const Outcome& o : outcomes) mr.rejections += o[slot(m)];
    mr.rate = static_cast<double>(mr.rejections) / c.reps;
    mr.se = std::sqrt(mr.rate * (1.0 - mr.rate) / c.reps);
    report.rates.push_back(mr);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<MCReport> run_power_curve(const SimConfig& config,
                                      std::span<const int> m_values) {
  if (m_values.empty()) throw Error(ErrorCode::Config, "power curve needs at least one m");
  std::vector<MCReport> out;
  for (int m : m_values) {
    SimConfig c = config;
    c.alternative.m = m;
    out.push_back(run_experiment(c));
  }
  return out;
}

void write_report_csv(std::ostream& out, std::span<const MCReport> reports) {
  out << kHeader << '\n';
  for (const auto& r : reports) {
    for (const auto& mr : r.rates) {
      write_row(out, r, mr);
      out << '\n';
    }
  }
}

void write_reproduction_csv(std::ostream& out, const MCReport& report,
                            const std::string& table) {
  out << kHeader << ",reported\n";
  const SimConfig& c = report.config;
  for (const auto& mr : report.rates) {
    write_row(out, report, mr);
    out << ',';
    if (const auto v = published_size(table, scenario_name(c.scenario),
                                      innovation_name(c.innovation), c.n, c.p, c.q,
                                      mr.method)) {
      out << fmt(*v, 6);
    }
    out << '\n';
  }
}

}  // namespace hdtest
