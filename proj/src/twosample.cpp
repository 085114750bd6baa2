#include "hdtest/twosample.hpp"

#include <cmath>
#include <sstream>

#include "hdtest/errors.hpp"
#include "hdtest/kernels.hpp"

namespace hdtest {
namespace {

struct Pooled {
  Eigen::VectorXd diff;   // X1bar - X2bar
  Eigen::VectorXd var;    // pooled variances, divisor n1 + n2
  Eigen::VectorXd var_unbiased;  // divisor n1 + n2 - 2, used in D
  Eigen::MatrixXd centered;  // both samples centered at their own means
  double weight = 0.0;    // n1 n2 / (n1 + n2)
};

Pooled pool(const TwoSampleData& data, Eigen::Index min_total) {
  const auto& x1 = data.sample1;
  const auto& x2 = data.sample2;
  if (x1.cols() != x2.cols()) {
    throw Error(ErrorCode::Size, "samples must have the same dimension");
  }
  if (x1.cols() < 2) throw Error(ErrorCode::Size, "two-sample tests need p >= 2");
  if (x1.rows() < 1 || x2.rows() < 1 || x1.rows() + x2.rows() < min_total) {
    std::ostringstream msg;
    msg << "two-sample statistic needs n1, n2 >= 1 and n1 + n2 >= " << min_total;
    throw Error(ErrorCode::Size, msg.str());
  }
  const Eigen::Index n1 = x1.rows(), n2 = x2.rows(), p = x1.cols();
  const Eigen::RowVectorXd m1 = x1.colwise().mean();
  const Eigen::RowVectorXd m2 = x2.colwise().mean();

  Pooled out;
  out.centered.resize(n1 + n2, p);
  out.centered.topRows(n1) = x1.rowwise() - m1;
  out.centered.bottomRows(n2) = x2.rowwise() - m2;
  out.diff = (m1 - m2).transpose();
  const double total = static_cast<double>(n1 + n2);
  out.var = out.centered.colwise().squaredNorm().transpose() / total;
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    scale(j) = std::max(x1.col(j).cwiseAbs().maxCoeff(), x2.col(j).cwiseAbs().maxCoeff());
  }
  kernels::require_positive_variance(out.var, scale);
  out.var_unbiased = out.var * (total / (total - 2.0));
  out.weight = static_cast<double>(n1) * static_cast<double>(n2) / total;
  return out;
}

double sum_from_pooled(const Pooled& s) {
  const double total = static_cast<double>(s.centered.rows());
  const double p = static_cast<double>(s.centered.cols());
  const double quad = s.weight * (s.diff.array().square() / s.var_unbiased.array()).sum();

  const Eigen::RowVectorXd inv_sd = s.var.cwiseSqrt().cwiseInverse().transpose();
  const Eigen::MatrixXd y = s.centered.array().rowwise() * inv_sd.array();
  const double tr_r2 = kernels::gram_frobenius_sq(y) / (total * total);
  const double excess = tr_r2 - p * p / (total - 2.0);
  const double c = 1.0 + tr_r2 / std::pow(p, 1.5);
  if (!(excess > 0.0)) {
    std::ostringstream msg;
    msg << "sum statistic denominator is not positive: tr(R^2) = " << tr_r2
        << ", p^2/(n1+n2-2) = " << p * p / (total - 2.0);
    throw Error(ErrorCode::Denominator, msg.str());
  }
  return (quad - (total - 2.0) * p / (total - 4.0)) / std::sqrt(2.0 * excess * c);
}

MaxStatistic max_from_pooled(const Pooled& s) {
  const double raw = s.weight * (s.diff.array().square() / s.var_unbiased.array()).maxCoeff();
  return center_max(raw, static_cast<int>(s.diff.size()));
}

}  // namespace

double t_sum_two(const TwoSampleData& data) { return sum_from_pooled(pool(data, 5)); }

MaxStatistic t_max_two(const TwoSampleData& data) {
  return max_from_pooled(pool(data, 3));
}

TestReport combo_two(const TwoSampleData& data, double alpha) {
  const Pooled s = pool(data, 5);
  return make_report(sum_from_pooled(s), max_from_pooled(s), alpha);
}

}  // namespace hdtest
