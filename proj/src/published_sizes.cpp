#include "hdtest/published_sizes.hpp"

#include <array>
#include <string_view>

namespace hdtest {
namespace {

struct Row {
  std::string_view table;
  std::string_view scenario;
  int n;
  int q;
  Method method;
  // innovation-major: (inn 0: p 200, 400, 600), (inn 1: ...), (inn 2: ...)
  std::array<double, 9> sizes;
};

constexpr Row kRows[] = {
    {"1", "I", 100, 0, Method::Max, {0.053, 0.062, 0.082, 0.026, 0.052, 0.045, 0.044, 0.039, 0.061}},
    {"1", "I", 100, 0, Method::Sum, {0.064, 0.064, 0.060, 0.052, 0.050, 0.059, 0.063, 0.058, 0.064}},
    {"1", "I", 100, 0, Method::Combo, {0.063, 0.069, 0.059, 0.040, 0.059, 0.055, 0.056, 0.047, 0.061}},
    {"1", "I", 100, 0, Method::Hc2, {0.028, 0.044, 0.034, 0.033, 0.029, 0.032, 0.038, 0.025, 0.044}},
    {"1", "I", 100, 0, Method::Fly, {0.014, 0.009, 0.004, 0.003, 0.003, 0.002, 0.025, 0.018, 0.014}},
    {"1", "I", 200, 0, Method::Max, {0.046, 0.060, 0.049, 0.045, 0.041, 0.045, 0.042, 0.045, 0.032}},
    {"1", "I", 200, 0, Method::Sum, {0.065, 0.068, 0.058, 0.053, 0.057, 0.062, 0.056, 0.054, 0.056}},
    {"1", "I", 200, 0, Method::Combo, {0.056, 0.068, 0.048, 0.042, 0.047, 0.052, 0.043, 0.050, 0.039}},
    {"1", "I", 200, 0, Method::Hc2, {0.019, 0.027, 0.030, 0.031, 0.024, 0.023, 0.029, 0.020, 0.029}},
    {"1", "I", 200, 0, Method::Fly, {0.005, 0.000, 0.000, 0.003, 0.000, 0.000, 0.017, 0.012, 0.005}},
    {"1", "II", 100, 0, Method::Max, {0.058, 0.070, 0.065, 0.044, 0.037, 0.039, 0.048, 0.042, 0.047}},
    {"1", "II", 100, 0, Method::Sum, {0.053, 0.067, 0.056, 0.054, 0.052, 0.048, 0.054, 0.055, 0.045}},
    {"1", "II", 100, 0, Method::Combo, {0.055, 0.057, 0.061, 0.054, 0.044, 0.040, 0.043, 0.047, 0.047}},
    {"1", "II", 100, 0, Method::Hc2, {0.022, 0.011, 0.013, 0.005, 0.015, 0.005, 0.011, 0.011, 0.006}},
    {"1", "II", 100, 0, Method::Fly, {0.022, 0.011, 0.011, 0.013, 0.010, 0.006, 0.024, 0.015, 0.007}},
    {"1", "II", 200, 0, Method::Max, {0.053, 0.054, 0.076, 0.025, 0.042, 0.025, 0.044, 0.040, 0.041}},
    {"1", "II", 200, 0, Method::Sum, {0.053, 0.057, 0.060, 0.053, 0.051, 0.052, 0.055, 0.065, 0.060}},
    {"1", "II", 200, 0, Method::Combo, {0.058, 0.061, 0.066, 0.037, 0.045, 0.044, 0.043, 0.053, 0.055}},
    {"1", "II", 200, 0, Method::Hc2, {0.003, 0.011, 0.006, 0.010, 0.006, 0.003, 0.004, 0.005, 0.008}},
    {"1", "II", 200, 0, Method::Fly, {0.037, 0.033, 0.025, 0.030, 0.022, 0.011, 0.032, 0.026, 0.015}},
    {"1", "III", 100, 0, Method::Max, {0.054, 0.066, 0.059, 0.053, 0.040, 0.033, 0.049, 0.039, 0.043}},
    {"1", "III", 100, 0, Method::Sum, {0.052, 0.055, 0.059, 0.053, 0.048, 0.060, 0.059, 0.064, 0.061}},
    {"1", "III", 100, 0, Method::Combo, {0.053, 0.066, 0.059, 0.053, 0.050, 0.040, 0.062, 0.046, 0.051}},
    {"1", "III", 100, 0, Method::Hc2, {0.034, 0.038, 0.035, 0.032, 0.030, 0.025, 0.036, 0.030, 0.030}},
    {"1", "III", 100, 0, Method::Fly, {0.013, 0.003, 0.005, 0.013, 0.001, 0.000, 0.020, 0.013, 0.010}},
    {"1", "III", 200, 0, Method::Max, {0.053, 0.058, 0.063, 0.034, 0.027, 0.038, 0.049, 0.039, 0.050}},
    {"1", "III", 200, 0, Method::Sum, {0.061, 0.065, 0.062, 0.044, 0.058, 0.068, 0.063, 0.058, 0.057}},
    {"1", "III", 200, 0, Method::Combo, {0.065, 0.075, 0.069, 0.033, 0.048, 0.047, 0.059, 0.051, 0.053}},
    {"1", "III", 200, 0, Method::Hc2, {0.035, 0.032, 0.032, 0.019, 0.029, 0.019, 0.029, 0.023, 0.024}},
    {"1", "III", 200, 0, Method::Fly, {0.001, 0.001, 0.000, 0.004, 0.001, 0.000, 0.016, 0.011, 0.002}},
    {"3", "I", 100, 0, Method::Max, {0.032, 0.024, 0.027, 0.026, 0.032, 0.026, 0.027, 0.036, 0.036}},
    {"3", "I", 100, 0, Method::Sum, {0.061, 0.064, 0.065, 0.060, 0.072, 0.062, 0.079, 0.058, 0.060}},
    {"3", "I", 100, 0, Method::Combo, {0.044, 0.043, 0.047, 0.046, 0.050, 0.043, 0.055, 0.047, 0.044}},
    {"3", "I", 200, 0, Method::Max, {0.032, 0.042, 0.038, 0.030, 0.032, 0.033, 0.045, 0.035, 0.041}},
    {"3", "I", 200, 0, Method::Sum, {0.069, 0.060, 0.057, 0.054, 0.052, 0.045, 0.063, 0.049, 0.064}},
    {"3", "I", 200, 0, Method::Combo, {0.053, 0.051, 0.048, 0.036, 0.039, 0.044, 0.058, 0.042, 0.050}},
    {"3", "I", 100, 5, Method::Max, {0.032, 0.029, 0.024, 0.024, 0.030, 0.020, 0.031, 0.037, 0.029}},
    {"3", "I", 100, 5, Method::Sum, {0.046, 0.049, 0.048, 0.063, 0.059, 0.064, 0.063, 0.052, 0.045}},
    {"3", "I", 100, 5, Method::Combo, {0.038, 0.037, 0.031, 0.043, 0.047, 0.041, 0.048, 0.048, 0.026}},
    {"3", "I", 200, 5, Method::Max, {0.030, 0.031, 0.030, 0.037, 0.033, 0.033, 0.034, 0.032, 0.030}},
    {"3", "I", 200, 5, Method::Sum, {0.067, 0.051, 0.049, 0.049, 0.054, 0.045, 0.070, 0.068, 0.061}},
    {"3", "I", 200, 5, Method::Combo, {0.048, 0.045, 0.036, 0.040, 0.040, 0.037, 0.051, 0.049, 0.049}},
    {"S1", "I", 100, 0, Method::Max, {0.057, 0.063, 0.058, 0.062, 0.061, 0.060, 0.060, 0.066, 0.064}},
    {"S1", "I", 100, 0, Method::Sum, {0.055, 0.058, 0.057, 0.060, 0.064, 0.065, 0.055, 0.061, 0.061}},
    {"S1", "I", 100, 0, Method::Combo, {0.057, 0.074, 0.060, 0.064, 0.065, 0.068, 0.061, 0.061, 0.062}},
    {"S1", "I", 200, 0, Method::Max, {0.053, 0.053, 0.051, 0.049, 0.062, 0.061, 0.044, 0.065, 0.055}},
    {"S1", "I", 200, 0, Method::Sum, {0.052, 0.065, 0.059, 0.065, 0.061, 0.064, 0.052, 0.056, 0.053}},
    {"S1", "I", 200, 0, Method::Combo, {0.044, 0.049, 0.056, 0.061, 0.063, 0.058, 0.046, 0.061, 0.053}},
};

int innovation_column(std::string_view table, std::string_view innovation) {
  if (innovation == "normal") return 0;
  if (innovation == "mixture") return 2;
  if (table == "1" && innovation == "t3") return 1;
  if (table == "3" && innovation == "exp") return 1;
  if (table == "S1" && innovation == "t5") return 1;
  return -1;
}

int dimension_column(int p) {
  switch (p) {
    case 200: return 0;
    case 400: return 1;
    case 600: return 2;
    default: return -1;
  }
}

}  // namespace

std::optional<double> published_size(const std::string& table,
                                     const std::string& scenario,
                                     const std::string& innovation, int n, int p,
                                     int q, Method method) {
  const int inn = innovation_column(table, innovation);
  const int dim = dimension_column(p);
  if (inn < 0 || dim < 0) return std::nullopt;
  for (const Row& row : kRows) {
    if (row.table == table && row.scenario == scenario && row.n == n && row.q == q &&
        row.method == method) {
      return row.sizes[static_cast<std::size_t>(inn * 3 + dim)];
    }
  }
  return std::nullopt;
}

}  // namespace hdtest
