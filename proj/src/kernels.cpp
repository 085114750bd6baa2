#include "hdtest/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hdtest/errors.hpp"

namespace hdtest::kernels {
namespace {

constexpr Eigen::Index kBlock = 32;

Eigen::Index block_count(Eigen::Index len) { return (len + kBlock - 1) / kBlock; }

}  // namespace

void require_positive_variance(const Eigen::VectorXd& var,
                               const Eigen::VectorXd& scale) {
  for (Eigen::Index j = 0; j < var.size(); ++j) {
    const double floor = 1e-24 * scale(j) * scale(j);
    if (!(var(j) > floor) || scale(j) == 0.0) {
      throw Error(ErrorCode::DegenerateVariance,
                  "zero sample variance in column " + std::to_string(j + 1));
    }
  }
}

ColumnMoments column_moments(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows(), p = x.cols();
  if (n < 1) throw Error(ErrorCode::Size, "no observations");
  ColumnMoments m{Eigen::VectorXd(p), Eigen::VectorXd(p)};
  Eigen::VectorXd scale(p);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto col = x.col(j);
    const double mean = col.mean();
    m.mean(j) = mean;
    m.var(j) = (col.array() - mean).square().sum() / static_cast<double>(n);
    scale(j) = col.cwiseAbs().maxCoeff();
  }
  require_positive_variance(m.var, scale);
  return m;
}

double gram_frobenius_sq(const Eigen::MatrixXd& y) {
  // ||Y'Y||_F = ||Y Y'||_F; use the side with fewer entries.
  const bool rows_side = y.rows() <= y.cols();
  const Eigen::Index len = rows_side ? y.rows() : y.cols();
  const Eigen::Index blocks = block_count(len);
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index start = b * kBlock;
    const Eigen::Index width = std::min(kBlock, len - start);
    Eigen::MatrixXd g;
    if (rows_side) {
      g.noalias() = y.middleRows(start, width) * y.transpose();
    } else {
      g.noalias() = y.middleCols(start, width).transpose() * y;
    }
    partial[static_cast<std::size_t>(b)] = g.squaredNorm();
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

Eigen::MatrixXd project_out(const Eigen::MatrixXd& q, const Eigen::MatrixXd& x) {
  if (q.cols() == 0) return x;
  Eigen::MatrixXd out(x.rows(), x.cols());
  const Eigen::Index cols = x.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Eigen::VectorXd coef = q.transpose() * x.col(j);
    out.col(j) = x.col(j) - q * coef;
  }
  return out;
}

Eigen::VectorXd column_norms(const Eigen::MatrixXd& x) {
  return x.colwise().norm().transpose();
}

namespace reference {

ColumnMoments column_moments(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows(), p = x.cols();
  if (n < 1) throw Error(ErrorCode::Size, "no observations");
  ColumnMoments m{Eigen::VectorXd(p), Eigen::VectorXd(p)};
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double sum = 0.0, mx = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      sum += x(i, j);
      mx = std::max(mx, std::abs(x(i, j)));
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
    m.mean(j) = mean;
    m.var(j) = ss / static_cast<double>(n);
    scale(j) = mx;
  }
  hdtest::kernels::require_positive_variance(m.var, scale);
  return m;
}

double gram_frobenius_sq(const Eigen::MatrixXd& y) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    for (Eigen::Index k = 0; k < y.cols(); ++k) {
      double g = 0.0;
      for (Eigen::Index i = 0; i < y.rows(); ++i) g += y(i, j) * y(i, k);
      total += g * g;
    }
  }
  return total;
}

Eigen::MatrixXd project_out_design(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& x) {
  if (a.cols() == 0) return x;
  const Eigen::MatrixXd h =
      a * (a.transpose() * a).inverse() * a.transpose();
  return x - h * x;
}

}  // namespace reference
}  // namespace hdtest::kernels
