#pragma once

namespace hdtest {

struct MaxStatistic {
  double raw = 0.0;
  double centered = 0.0;  // raw - 2 log d + log log d
};

/// Centers a maximum of d squared standardized coordinates; d >= 2.
MaxStatistic center_max(double raw, int d);

/// Sum, max and combined test outcome at level alpha. The combined p-value is
/// min(p_sum, p_max) and rejects below 1 - sqrt(1 - alpha).
struct TestReport {
  double t_sum = 0.0;
  double t_max_raw = 0.0;
  double t_max_centered = 0.0;
  double p_sum = 1.0;
  double p_max = 1.0;
  double p_combo = 1.0;
  bool reject_sum = false;
  bool reject_max = false;
  bool reject_combo = false;
  double alpha = 0.05;
};

double sum_pvalue(double t_sum) noexcept;
double max_pvalue(double centered) noexcept;

TestReport make_report(double t_sum, MaxStatistic max, double alpha);

}  // namespace hdtest
