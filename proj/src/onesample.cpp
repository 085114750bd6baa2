#include "hdtest/onesample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hdtest/dists.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/kernels.hpp"

namespace hdtest {
namespace {

void require_rows(const Eigen::MatrixXd& x, Eigen::Index min_n, const char* what) {
  if (x.rows() < min_n) {
    std::ostringstream msg;
    msg << what << " needs n >= " << min_n << ", got n = " << x.rows();
    throw Error(ErrorCode::Size, msg.str());
  }
  if (x.cols() < 1) throw Error(ErrorCode::Size, "data has no columns");
}

// xbar_j^2 / s_j^2 with the unbiased variance s_j^2 = n var_j / (n - 1). The
// sum-test centering (n-1)p/(n-3) is the exact null mean of n xbar'D^{-1}xbar
// only under this divisor.
Eigen::ArrayXd standardized_sq_means(const kernels::ColumnMoments& m, Eigen::Index rows) {
  const double n = static_cast<double>(rows);
  return m.mean.array().square() / (m.var.array() * (n / (n - 1.0)));
}

double sum_from_moments(const Eigen::MatrixXd& x, const kernels::ColumnMoments& m) {
  const double n = static_cast<double>(x.rows());
  const double p = static_cast<double>(x.cols());
  const double quad = n * standardized_sq_means(m, x.rows()).sum();

  const Eigen::RowVectorXd inv_sd = m.var.cwiseSqrt().cwiseInverse().transpose();
  const Eigen::MatrixXd y =
      (x.rowwise() - m.mean.transpose()).array().rowwise() * inv_sd.array();
  const double tr_r2 = kernels::gram_frobenius_sq(y) / (n * n);
  const double excess = tr_r2 - p * p / (n - 1.0);
  if (!(excess > 0.0)) {
    std::ostringstream msg;
    msg << "sum statistic denominator is not positive: tr(R^2) = " << tr_r2
        << ", p^2/(n-1) = " << p * p / (n - 1.0);
    throw Error(ErrorCode::Denominator, msg.str());
  }
  return (quad - (n - 1.0) * p / (n - 3.0)) / std::sqrt(2.0 * excess);
}

MaxStatistic max_from_moments(const Eigen::MatrixXd& x,
                              const kernels::ColumnMoments& m) {
  const double raw =
      static_cast<double>(x.rows()) * standardized_sq_means(m, x.rows()).maxCoeff();
  return center_max(raw, static_cast<int>(x.cols()));
}

}  // namespace

double t_sum_one(const Eigen::MatrixXd& x) {
  require_rows(x, 4, "sum statistic");
  return sum_from_moments(x, kernels::column_moments(x));
}

MaxStatistic t_max_one(const Eigen::MatrixXd& x) {
  require_rows(x, 2, "max statistic");
  if (x.cols() < 2) throw Error(ErrorCode::Size, "max statistic needs p >= 2");
  return max_from_moments(x, kernels::column_moments(x));
}

TestReport combo_one(const Eigen::MatrixXd& x, double alpha) {
  require_rows(x, 4, "sum statistic");
  if (x.cols() < 2) throw Error(ErrorCode::Size, "max statistic needs p >= 2");
  const auto m = kernels::column_moments(x);
  return make_report(sum_from_moments(x, m), max_from_moments(x, m), alpha);
}

std::vector<double> default_hc2_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(0.05 * k * 0.95);
  return grid;
}

double hc2_null_mean(double lambda, int p) {
  const double r = std::sqrt(lambda);
  return p * (2.0 * r * normal_pdf(r) + 2.0 * normal_sf(r));
}

double hc2_null_variance(double lambda, int p) {
  const double r = std::sqrt(lambda);
  return p * (2.0 * (lambda * r + 3.0 * r) * normal_pdf(r) + 6.0 * normal_sf(r));
}

double hc2_statistic(const Eigen::MatrixXd& x, std::span<const double> grid) {
  require_rows(x, 2, "HC2 statistic");
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "HC2 grid is empty");
  for (double s : grid) {
    if (!(s > 0.0 && s < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "HC2 grid points must lie in (0, 1)");
    }
  }
  const auto m = kernels::column_moments(x);
  const double n = static_cast<double>(x.rows());
  const int p = static_cast<int>(x.cols());
  const Eigen::ArrayXd z2 = n * standardized_sq_means(m, x.rows());  // n xbar^2 / sigma^2

  double best = -std::numeric_limits<double>::infinity();
  for (double s : grid) {
    const double lambda = 2.0 * s * std::log(static_cast<double>(p));
    // |xbar_j| >= sigma_j sqrt(lambda / n)  <=>  z2_j >= lambda
    const double t2n = (z2 >= lambda).select(z2, 0.0).sum();
    const double value = (t2n - hc2_null_mean(lambda, p)) /
                         std::sqrt(hc2_null_variance(lambda, p));
    best = std::max(best, value);
  }
  return best;
}

double hc2_pvalue(double t_hc2, int p, std::span<const double> grid) {
  if (p < 16) {
    throw Error(ErrorCode::Domain, "HC2 p-value approximation needs p >= 16");
  }
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "HC2 grid is empty");
  const double eta = 1.0 - *std::max_element(grid.begin(), grid.end());
  const double y = std::log(static_cast<double>(p));
  const double a = std::sqrt(2.0 * std::log(y));
  const double b = 2.0 * std::log(y) + 0.5 * std::log(std::log(y)) -
                   0.5 * std::log(4.0 * std::numbers::pi / ((1.0 - eta) * (1.0 - eta)));
  const double t = a * t_hc2 - b;
  return -std::expm1(-std::exp(-t));
}

FlyStatistic fly_statistic(const Eigen::MatrixXd& x) {
  require_rows(x, 3, "power enhancement statistic");
  const auto m = kernels::column_moments(x);
  const double n = static_cast<double>(x.rows());
  const double p = static_cast<double>(x.cols());
  const double delta = std::log(std::log(n)) * std::sqrt(std::log(p) / n);
  const Eigen::ArrayXd ratio = standardized_sq_means(m, x.rows());  // xbar^2 / sigma^2

  FlyStatistic s;
  // |xbar_j| > sigma_j delta  <=>  ratio_j > delta^2
  s.j0 = std::sqrt(p) * (ratio > delta * delta).select(ratio, 0.0).sum();
  s.j1 = (n * ratio.sum() - p) / (2.0 * std::sqrt(p));
  s.j = s.j0 + s.j1;
  return s;
}

double fly_pvalue(const FlyStatistic& s) noexcept { return normal_sf(s.j); }

double power_sum_theoretical(const Eigen::VectorXd& mu,
                             const CovarianceMatrix& sigma, int n, double alpha) {
  if (mu.size() != sigma.dim()) {
    throw Error(ErrorCode::Size, "mean vector and covariance dimensions differ");
  }
  const double z_alpha = normal_quantile(1.0 - alpha);
  const Eigen::MatrixXd r = correlation_of(sigma.entries());
  const double signal =
      n * (mu.array().square() / sigma.entries().diagonal().array()).sum();
  return normal_cdf(-z_alpha + signal / std::sqrt(2.0 * trace_power(r, 2)));
}

}  // namespace hdtest
