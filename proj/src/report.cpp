#include "hdtest/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdtest/dists.hpp"
#include "hdtest/errors.hpp"

namespace hdtest {

MaxStatistic center_max(double raw, int d) {
  if (d < 2) {
    throw Error(ErrorCode::Size, "max statistic needs dimension >= 2, got " +
                                     std::to_string(d));
  }
  const double logd = std::log(static_cast<double>(d));
  return {raw, raw - 2.0 * logd + std::log(logd)};
}

double sum_pvalue(double t_sum) noexcept { return normal_sf(t_sum); }

double max_pvalue(double centered) noexcept {
  // 1 - exp(-u) with u = exp(-x/2)/sqrt(pi), accurate for small u
  return -std::expm1(-std::exp(-0.5 * centered) * std::numbers::inv_sqrtpi);
}

TestReport make_report(double t_sum, MaxStatistic max, double alpha) {
  const double threshold = combo_threshold(alpha);  // validates alpha
  TestReport r;
  r.alpha = alpha;
  r.t_sum = t_sum;
  r.t_max_raw = max.raw;
  r.t_max_centered = max.centered;
  r.p_sum = sum_pvalue(t_sum);
  r.p_max = max_pvalue(max.centered);
  r.p_combo = std::min(r.p_sum, r.p_max);
  r.reject_sum = r.p_sum < alpha;
  r.reject_max = r.p_max < alpha;
  r.reject_combo = r.p_combo < threshold;
  return r;
}

}  // namespace hdtest
