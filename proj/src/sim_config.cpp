#include "hdtest/sim_config.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <set>
#include <sstream>

#include "hdtest/errors.hpp"

namespace hdtest {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value,
                      const std::string& why) {
  throw Error(ErrorCode::Config, "config key '" + key + "' = '" + value + "': " + why);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) bad(key, value, "not a number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad(key, value, "expected true or false");
}

Problem parse_problem(const std::string& value) {
  if (value == "one-sample") return Problem::OneSample;
  if (value == "two-sample") return Problem::TwoSample;
  if (value == "regression") return Problem::Regression;
  bad("problem", value, "expected one-sample, two-sample or regression");
}

const std::set<std::string> kKnownKeys = {
    "problem", "n", "n1", "n2", "q", "p", "scenario", "rho", "rho_eps", "delta_gamma",
    "innovation", "m", "total_sq_norm", "alpha", "reps", "seed", "methods",
    "redraw_scenario", "redraw_coefficients", "m_values"};

}  // namespace

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  for (const auto& token : split(list, ',')) {
    std::string up = token;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    Method m;
    if (up == "SUM") m = Method::Sum;
    else if (up == "MAX") m = Method::Max;
    else if (up == "COM" || up == "COMBO") m = Method::Combo;
    else if (up == "HC2") m = Method::Hc2;
    else if (up == "FLY") m = Method::Fly;
    else bad("methods", token, "unknown method");
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) bad("methods", list, "no methods given");
  return out;
}

InnovationKind parse_innovation(const std::string& name) {
  if (name == "normal") return StdNormal{};
  if (name == "mixture") return MixtureNormal{};
  if (name == "exp") return CenteredExp{};
  if (name.size() > 1 && name[0] == 't') {
    const int df = parse_number<int>("innovation", name.substr(1));
    if (df <= 2) bad("innovation", name, "t innovations need df > 2");
    return unit_t(df);
  }
  bad("innovation", name, "expected normal, t<df>, mixture or exp");
}

CovarianceSpec parse_scenario(const std::string& name, int p,
                              const std::map<std::string, std::string>& params) {
  auto get = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : parse_number<double>(key, it->second);
  };
  if (name == "I" || name == "ar1") return Ar1{get("rho", 0.5), p};
  if (name == "II") return SpikedFactor{p};
  if (name == "III") return SpatialRook{p, get("rho_eps", 0.5), get("delta_gamma", 0.3)};
  if (name == "identity") {
    if (p < 1) bad("p", std::to_string(p), "must be positive");
    return Explicit{Eigen::MatrixXd::Identity(p, p)};
  }
  bad("scenario", name, "expected I, II, III or identity");
}

ParsedConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Config,
                  "config line " + std::to_string(lineno) + " is not key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (!kKnownKeys.count(key)) {
      throw Error(ErrorCode::Config, "unknown config key '" + key + "' on line " +
                                         std::to_string(lineno));
    }
    kv[key] = trim(t.substr(eq + 1));
  }

  ParsedConfig out;
  SimConfig& c = out.sim;
  auto has = [&](const char* k) { return kv.count(k) > 0; };
  if (has("problem")) c.problem = parse_problem(kv["problem"]);
  if (has("n")) c.n = parse_number<int>("n", kv["n"]);
  if (has("n1")) c.n = parse_number<int>("n1", kv["n1"]);
  if (has("n2")) c.n2 = parse_number<int>("n2", kv["n2"]);
  if (has("q")) c.q = parse_number<int>("q", kv["q"]);
  if (has("p")) c.p = parse_number<int>("p", kv["p"]);
  c.scenario = parse_scenario(has("scenario") ? kv["scenario"] : "I", c.p, kv);
  if (has("innovation")) c.innovation = parse_innovation(kv["innovation"]);
  if (has("m")) c.alternative.m = parse_number<int>("m", kv["m"]);
  if (has("total_sq_norm")) {
    c.alternative.total_sq_norm = parse_number<double>("total_sq_norm", kv["total_sq_norm"]);
  }
  if (has("alpha")) c.alpha = parse_number<double>("alpha", kv["alpha"]);
  if (has("reps")) c.reps = parse_number<int>("reps", kv["reps"]);
  if (has("seed")) c.seed = parse_number<std::uint64_t>("seed", kv["seed"]);
  if (has("methods")) c.methods = parse_methods(kv["methods"]);
  if (has("redraw_scenario")) c.redraw_scenario = parse_bool("redraw_scenario", kv["redraw_scenario"]);
  if (has("redraw_coefficients")) {
    c.redraw_coefficients = parse_bool("redraw_coefficients", kv["redraw_coefficients"]);
  }
  if (has("m_values")) {
    for (const auto& v : split(kv["m_values"], ',')) {
      out.m_values.push_back(parse_number<int>("m_values", v));
    }
  }
  return out;
}

ParsedConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string config_echo(const SimConfig& c) {
  std::ostringstream out;
  out << "problem=" << problem_name(c.problem) << '\n'
      << "n=" << c.n << '\n';
  if (c.problem == Problem::TwoSample) out << "n2=" << (c.n2 > 0 ? c.n2 : c.n) << '\n';
  out << "q=" << c.q << '\n'
      << "p=" << c.p << '\n'
      << "scenario=" << scenario_name(c.scenario) << '\n';
  if (const auto* ar = std::get_if<Ar1>(&c.scenario)) out << "rho=" << ar->rho << '\n';
  if (const auto* rook = std::get_if<SpatialRook>(&c.scenario)) {
    out << "rho_eps=" << rook->rho_eps << '\n' << "delta_gamma=" << rook->delta_gamma << '\n';
  }
  out << "innovation=" << innovation_name(c.innovation) << '\n'
      << "m=" << c.alternative.m << '\n'
      << "total_sq_norm=" << c.alternative.total_sq_norm << '\n'
      << "alpha=" << c.alpha << '\n'
      << "reps=" << c.reps << '\n'
      << "seed=" << c.seed << '\n'
      << "methods=";
  for (std::size_t i = 0; i < c.methods.size(); ++i) {
    out << (i ? "," : "") << method_name(c.methods[i]);
  }
  out << '\n'
      << "redraw_scenario=" << (c.redraw_scenario ? "true" : "false") << '\n'
      << "redraw_coefficients=" << (c.redraw_coefficients ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace hdtest
