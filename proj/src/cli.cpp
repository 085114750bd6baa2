#include "hdtest/cli.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdtest/asymcheck.hpp"
#include "hdtest/csv_io.hpp"
#include "hdtest/onesample.hpp"
#include "hdtest/regression.hpp"
#include "hdtest/sim_config.hpp"
#include "hdtest/twosample.hpp"

namespace hdtest::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string data;
  std::string data2;
  std::string response;
  std::string nuisance;
  double alpha = 0.05;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  int reps = 0;
  std::string table;
  std::string cell;
  std::string methods;
};

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_echo(std::ostream& out, const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

void write_test_report(std::ostream& out, const std::string& header, const TestReport& r) {
  write_echo(out, header);
  out << "# t_max_raw=" << std::setprecision(17) << r.t_max_raw << '\n';
  out << "statistic,centered,p_sum,p_max,p_combo,decision_sum,decision_max,decision_combo,"
         "alpha\n";
  out << std::setprecision(17) << r.t_sum << ',' << r.t_max_centered << ',' << r.p_sum << ','
      << r.p_max << ',' << r.p_combo << ',' << int(r.reject_sum) << ',' << int(r.reject_max)
      << ',' << int(r.reject_combo) << ',' << r.alpha << '\n';
}

std::string dims(const char* what, const Eigen::MatrixXd& m) {
  return std::string(what) + "=" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
         "\n";
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::Domain, "alpha must lie in (0, 1)");
}

int run_test_one(const Options& o, std::ostream& out) {
  check_alpha(o.alpha);
  const DataMatrix data = read_csv_file(o.data);
  const TestReport r = combo_one(data.values, o.alpha);
  Sink sink(o.out, out);
  write_test_report(sink.get(), "subcommand=test-one\ndata=" + o.data + "\n" +
                                    dims("shape", data.values),
                    r);
  return 0;
}

int run_test_two(const Options& o, std::ostream& out) {
  check_alpha(o.alpha);
  TwoSampleData d{read_csv_file(o.data).values, read_csv_file(o.data2).values};
  const TestReport r = combo_two(d, o.alpha);
  Sink sink(o.out, out);
  write_test_report(sink.get(), "subcommand=test-two\ndata=" + o.data + "\ndata2=" + o.data2 +
                                    "\n" + dims("shape1", d.sample1) + dims("shape2", d.sample2),
                    r);
  return 0;
}

int run_test_reg(const Options& o, std::ostream& out) {
  check_alpha(o.alpha);
  const DataMatrix data = read_csv_file(o.data);
  const RegressionProblem problem =
      to_regression(data, RegressionLayout{o.response, split_list(o.nuisance)});
  const TestReport r = combo_reg(problem, o.alpha);
  Sink sink(o.out, out);
  write_test_report(sink.get(),
                    "subcommand=test-reg\ndata=" + o.data + "\nresponse=" + o.response +
                        "\nnuisance=" + o.nuisance + "\nn=" + std::to_string(problem.y.size()) +
                        "\nq=" + std::to_string(problem.x_a.cols()) +
                        "\ntested=" + std::to_string(problem.x_b.cols()) + "\n",
                    r);
  return 0;
}

ParsedConfig load_config(const Options& o, const CLI::App& sub) {
  ParsedConfig parsed;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw Error(ErrorCode::Config, "cannot open config '" + o.config + "'");
    parsed = parse_config(in);
  }
  // check-asymptotics has no --alpha or --methods, so look options up softly.
  auto given = [&](const char* flag) {
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--seed")) parsed.sim.seed = o.seed;
  if (given("--reps")) parsed.sim.reps = o.reps;
  if (given("--alpha")) parsed.sim.alpha = o.alpha;
  if (given("--methods")) parsed.sim.methods = parse_methods(o.methods);
  return parsed;
}

int run_simulate(const Options& o, const CLI::App& sub, std::ostream& out) {
  const ParsedConfig parsed = load_config(o, sub);
  const MCReport report = run_experiment(parsed.sim);
  Sink sink(o.out, out);
  write_echo(sink.get(), config_echo(report.config));
  write_report_csv(sink.get(), std::span<const MCReport>(&report, 1));
  return 0;
}

int run_power(const Options& o, const CLI::App& sub, std::ostream& out) {
  const ParsedConfig parsed = load_config(o, sub);
  if (parsed.m_values.empty()) throw Error(ErrorCode::Config, "power-curve needs m_values");
  const auto reports = run_power_curve(parsed.sim, parsed.m_values);
  Sink sink(o.out, out);
  write_echo(sink.get(), config_echo(parsed.sim));
  std::ostringstream mv;
  for (std::size_t i = 0; i < parsed.m_values.size(); ++i) {
    mv << (i ? "," : "") << parsed.m_values[i];
  }
  sink.get() << "# m_values=" << mv.str() << '\n';
  write_report_csv(sink.get(), reports);
  return 0;
}

json check_json(const LimitCheckReport& r) {
  return json{{"target", target_law_name(r.target)},
              {"sample_size", r.sample_size},
              {"ks_statistic", r.ks_statistic},
              {"ks_pvalue", r.ks_pvalue}};
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

int run_check(const Options& o, const CLI::App& sub, std::ostream& out) {
  const ParsedConfig parsed = load_config(o, sub);
  const SimConfig& c = parsed.sim;
  if (c.reps < 2) throw Error(ErrorCode::Config, "check-asymptotics needs reps >= 2");
  const RngStream base(c.seed, 0);
  RngStream scenario_stream = base.derive(stream_tag::kScenario);
  CovarianceSpec spec = parse_scenario(scenario_name(c.scenario), c.p);
  if (const auto* ar = std::get_if<Ar1>(&c.scenario)) spec = Ar1{ar->rho, c.p};
  if (const auto* rook = std::get_if<SpatialRook>(&c.scenario)) {
    spec = SpatialRook{c.p, rook->rho_eps, rook->delta_gamma};
  }
  const CovarianceMatrix raw = build_covariance(spec, scenario_stream);
  const CovarianceMatrix sigma(correlation_of(raw.entries()));
  const RngStream checks = base.derive(stream_tag::kReplication);

  json doc;
  doc["config"] = json{{"scenario", scenario_name(c.scenario)},
                       {"p", c.p},
                       {"n", c.n},
                       {"reps", c.reps},
                       {"seed", c.seed}};
  doc["clt"] = check_json(clt_check(sigma, c.reps, checks.derive(1), c.threads));
  doc["gumbel"] = check_json(gumbel_check(sigma, c.reps, checks.derive(2), c.threads));
  const std::vector<double> levels = {0.25, 0.5, 0.75};
  if (c.reps * levels.front() * levels.front() >= 100.0) {
    const auto ind = independence_check(sigma, c.reps, levels, checks.derive(3), c.threads);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ind.grid.gaps.size(); ++i) {
      const double se = ind.grid.standard_errors.data()[i];
      if (se > 0.0) worst = std::max(worst, ind.grid.gaps.data()[i] / se);
    }
    doc["independence"] = json{{"levels", levels},
                               {"gaps", matrix_json(ind.grid.gaps)},
                               {"standard_errors", matrix_json(ind.grid.standard_errors)},
                               {"max_gap_in_se", worst}};
  } else {
    doc["independence"] = json{{"skipped", "needs reps >= 1600 for the quartile grid"}};
  }
  doc["combo"] = check_json(combo_law_check(sigma, c.n, c.reps, checks.derive(4), c.threads));
  Sink sink(o.out, out);
  sink.get() << doc.dump(2) << '\n';
  return 0;
}

std::pair<std::string, std::string> key_value(const std::string& token) {
  const auto eq = token.find('=');
  if (eq == std::string::npos) return {"", token};
  return {token.substr(0, eq), token.substr(eq + 1)};
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Config, "cell value " + key + "='" + value + "' is not an integer");
}

int run_reproduce(const Options& o, const CLI::App& sub, std::ostream& out) {
  SimConfig c = table_cell_config(o.table, o.cell);
  if (sub.count("--seed")) c.seed = o.seed;
  if (sub.count("--reps")) c.reps = o.reps;
  if (sub.count("--alpha")) c.alpha = o.alpha;
  if (sub.count("--methods")) c.methods = parse_methods(o.methods);
  const MCReport report = run_experiment(c);
  Sink sink(o.out, out);
  write_echo(sink.get(), "table=" + o.table + "\ncell=" + o.cell + "\n" + config_echo(c));
  write_reproduction_csv(sink.get(), report, o.table);
  return 0;
}

}  // namespace

std::string error_record(ErrorCode code, const std::string& message) {
  return json{{"error", std::string(code_name(code))},
              {"kind", kind_of(code) == ErrorKind::Validation ? "validation" : "numerical"},
              {"message", message}}
      .dump();
}

SimConfig table_cell_config(const std::string& table, const std::string& cell) {
  SimConfig c;
  if (table == "1") {
    c.problem = Problem::OneSample;
    c.methods = {Method::Sum, Method::Max, Method::Combo, Method::Hc2, Method::Fly};
  } else if (table == "3") {
    c.problem = Problem::Regression;
  } else if (table == "S1") {
    c.problem = Problem::TwoSample;
  } else {
    throw Error(ErrorCode::Config, "unknown table '" + table + "' (expected 1, 3 or S1)");
  }
  std::string scenario = "I";
  std::string innovation = "normal";
  int positional = 0;
  for (const auto& token : split_list(cell)) {
    const auto [key, value] = key_value(token);
    if (key.empty()) {
      if (positional == 0) {
        scenario = value;
      } else if (positional == 1) {
        innovation = value;
      } else {
        throw Error(ErrorCode::Config, "unexpected cell token '" + token + "'");
      }
      ++positional;
    } else if (key == "n" || key == "n1") {
      c.n = parse_int(key, value);
    } else if (key == "n2") {
      c.n2 = parse_int(key, value);
    } else if (key == "p") {
      c.p = parse_int(key, value);
    } else if (key == "q") {
      c.q = parse_int(key, value);
    } else {
      throw Error(ErrorCode::Config, "unknown cell key '" + key + "'");
    }
  }
  if (table != "1" && scenario != "I") {
    throw Error(ErrorCode::Config, "table " + table + " only uses scenario I");
  }
  if (c.p < 2) throw Error(ErrorCode::Config, "cell needs p >= 2");
  c.scenario = parse_scenario(scenario, c.p);
  c.innovation = parse_innovation(innovation);
  return c;
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"High-dimensional mean and regression coefficient tests"};
  app.name("hdtest");
  app.require_subcommand(1, 1);
  Options o;

  auto* one = app.add_subcommand("test-one", "One-sample mean test on a CSV file");
  auto* two = app.add_subcommand("test-two", "Two-sample mean test on two CSV files");
  auto* reg = app.add_subcommand("test-reg", "Test a block of regression coefficients");
  auto* sim = app.add_subcommand("simulate", "Monte Carlo size or power experiment");
  auto* power = app.add_subcommand("power-curve", "Power over a list of sparsity levels");
  auto* check = app.add_subcommand("check-asymptotics", "Monte Carlo checks of limit laws");
  auto* repro = app.add_subcommand("reproduce-table", "Rerun one published size-table cell");

  for (auto* s : {one, two, reg}) {
    s->add_option("--data", o.data, "CSV file, rows are observations")
        ->required()
        ->check(CLI::ExistingFile);
    s->add_option("--alpha", o.alpha, "Significance level");
    s->add_option("--out", o.out, "Output CSV (default stdout)");
  }
  two->add_option("--data2", o.data2, "Second sample CSV")->required()->check(CLI::ExistingFile);
  reg->add_option("--response", o.response, "Response column (name or 1-based index)")
      ->required();
  reg->add_option("--nuisance", o.nuisance, "Comma list of nuisance columns");

  for (auto* s : {sim, power, check}) {
    s->add_option("--config", o.config, "key=value experiment file")->check(CLI::ExistingFile);
  }
  sim->get_option("--config")->required();
  power->get_option("--config")->required();
  for (auto* s : {sim, power, check, repro}) {
    s->add_option("--seed", o.seed, "Master seed");
    s->add_option("--reps", o.reps, "Monte Carlo replications");
    s->add_option("--out", o.out, "Output file (default stdout)");
  }
  for (auto* s : {sim, power, repro}) {
    s->add_option("--alpha", o.alpha, "Significance level");
    s->add_option("--methods", o.methods, "Comma list of SUM, MAX, COM, HC2, FLY");
  }
  repro->add_option("--table", o.table, "Table id: 1, 3 or S1")->required();
  repro->add_option("--cell", o.cell, "Cell, e.g. \"I,normal,n=100,p=200\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_record(ErrorCode::InvalidArgument, e.what()) << '\n';
    return exit_code(ErrorCode::InvalidArgument);
  }

  try {
    if (one->parsed()) return run_test_one(o, out);
    if (two->parsed()) return run_test_two(o, out);
    if (reg->parsed()) return run_test_reg(o, out);
    if (sim->parsed()) return run_simulate(o, *sim, out);
    if (power->parsed()) return run_power(o, *power, out);
    if (check->parsed()) return run_check(o, *check, out);
    return run_reproduce(o, *repro, out);
  } catch (const Error& e) {
    err << error_record(e.code(), e.what()) << '\n';
    return exit_code(e.code());
  }
}

}  // namespace hdtest::cli
