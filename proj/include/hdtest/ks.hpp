#pragma once

#include <functional>
#include <span>

namespace hdtest {

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double pvalue = 1.0;
};

/// One-sample two-sided Kolmogorov-Smirnov test against a continuous cdf.
/// The p-value uses the Kolmogorov limit with Stephens' small-sample
/// correction, lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) D.
KsResult ks_test(std::span<const double> sample,
                 const std::function<double(double)>& cdf);

/// Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda) noexcept;

}  // namespace hdtest
