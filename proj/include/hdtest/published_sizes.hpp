#pragma once

#include <optional>
#include <string>

#include "hdtest/simlab.hpp"

namespace hdtest {

/// Empirical sizes reported for the reference simulation tables (alpha = 0.05):
///   "1"  one-sample, scenarios I-III, innovations normal / t3 / mixture
///   "3"  regression, scenario I, innovations normal / exp / mixture, q in {0, 5}
///   "S1" two-sample, scenario I, innovations normal / t5 / mixture
/// n in {100, 200}, p in {200, 400, 600}.
std::optional<double> published_size(const std::string& table,
                                     const std::string& scenario,
                                     const std::string& innovation, int n, int p,
                                     int q, Method method);

}  // namespace hdtest
