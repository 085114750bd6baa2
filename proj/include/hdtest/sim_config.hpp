#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hdtest/simlab.hpp"

// Flat key=value experiment descriptions. Blank lines and lines starting
// with '#' are ignored. Keys mirror SimConfig:
//   problem      one-sample | two-sample | regression
//   n, n2, q, p  integers
//   scenario     I | II | III | identity   (rho, rho_eps, delta_gamma optional)
//   innovation   normal | t<df> | mixture | exp
//   m, total_sq_norm, alpha, reps, seed
//   methods      comma list of SUM, MAX, COM, HC2, FLY
//   redraw_scenario, redraw_coefficients   true | false
//   m_values     comma list (power curves only)

namespace hdtest {

struct ParsedConfig {
  SimConfig sim;
  std::vector<int> m_values;
};

ParsedConfig parse_config(std::istream& in);
ParsedConfig parse_config_text(const std::string& text);

std::vector<Method> parse_methods(const std::string& list);
InnovationKind parse_innovation(const std::string& name);
/// Builds the scenario for dimension p from its label and optional parameters.
CovarianceSpec parse_scenario(const std::string& name, int p,
                              const std::map<std::string, std::string>& params = {});

/// Canonical key=value echo of a configuration, one key per line.
std::string config_echo(const SimConfig& config);

}  // namespace hdtest
