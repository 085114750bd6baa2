#include "hdtest/regression.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "hdtest/errors.hpp"
#include "hdtest/kernels.hpp"

namespace hdtest {

Eigen::VectorXd ResidualizedDesign::project(const Eigen::VectorXd& v) const {
  if (basis.cols() == 0) return Eigen::VectorXd::Zero(v.size());
  return basis * (basis.transpose() * v);
}

ResidualizedDesign residualize(const RegressionProblem& problem, ColumnScale scale) {
  const Eigen::Index n = problem.y.size();
  const Eigen::Index q = problem.x_a.cols();
  const Eigen::Index tested = problem.x_b.cols();
  if (problem.x_b.rows() != n || (q > 0 && problem.x_a.rows() != n)) {
    throw Error(ErrorCode::Size, "response and designs must have the same number of rows");
  }
  if (tested < 1) throw Error(ErrorCode::Size, "no tested columns");
  if (q >= n) {
    std::ostringstream msg;
    msg << "nuisance block needs q < n, got q = " << q << ", n = " << n;
    throw Error(ErrorCode::Size, msg.str());
  }

  ResidualizedDesign out;
  out.n = static_cast<int>(n);
  out.q = static_cast<int>(q);
  out.basis.resize(n, q);
  if (q > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.x_a);
    qr.setThreshold(1e-10);
    if (qr.rank() < q) {
      std::ostringstream msg;
      msg << "nuisance design is rank deficient (rank " << qr.rank() << " < q = " << q << ")";
      throw Error(ErrorCode::RankDeficient, msg.str());
    }
    out.basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, q);
  }

  out.x_tilde_b = kernels::project_out(out.basis, problem.x_b);
  const Eigen::VectorXd raw_norms = kernels::column_norms(problem.x_b);
  const Eigen::VectorXd norms = kernels::column_norms(out.x_tilde_b);
  for (Eigen::Index j = 0; j < tested; ++j) {
    if (!(norms(j) > 1e-10 * raw_norms(j)) || raw_norms(j) == 0.0) {
      std::ostringstream msg;
      msg << "residualized tested column " << j + 1 << " (design column " << q + j + 1
          << ") has zero norm";
      throw Error(ErrorCode::ZeroNormColumn, msg.str());
    }
  }
  const double target = scale == ColumnScale::ResidualDf ? static_cast<double>(n - q)
                                                         : static_cast<double>(n);
  out.x_tilde_b = out.x_tilde_b * (std::sqrt(target) * norms.cwiseInverse()).asDiagonal();

  out.eps_hat = problem.y - out.project(problem.y);
  const double rss = out.eps_hat.squaredNorm();
  if (!(rss > 1e-24 * problem.y.squaredNorm())) {
    throw Error(ErrorCode::DegenerateResponse,
                "response has zero residual sum of squares after removing the nuisance block");
  }
  out.sigma2_hat = rss / static_cast<double>(n - q);
  return out;
}

double trace_estimator(const Eigen::MatrixXd& sigma_hat_ba, int n, int q) {
  if (n <= q) throw Error(ErrorCode::Size, "trace estimator needs n > q");
  if (sigma_hat_ba.rows() != sigma_hat_ba.cols()) {
    throw Error(ErrorCode::Size, "trace estimator needs a square matrix");
  }
  const double r = static_cast<double>(n - q);
  const double tr = sigma_hat_ba.trace();
  const double tr2 = sigma_hat_ba.squaredNorm();  // symmetric input
  return static_cast<double>(n) * n / ((r + 1.0) * r) * (tr2 - tr * tr / r);
}

double trace_estimator_from_design(const Eigen::MatrixXd& x_tilde, int n, int q) {
  if (n <= q) throw Error(ErrorCode::Size, "trace estimator needs n > q");
  const double nn = static_cast<double>(n);
  const double r = static_cast<double>(n - q);
  const double tr = x_tilde.squaredNorm() / nn;
  const double tr2 = kernels::gram_frobenius_sq(x_tilde) / (nn * nn);
  return nn * nn / ((r + 1.0) * r) * (tr2 - tr * tr / r);
}

Eigen::VectorXd partial_f_statistics(const ResidualizedDesign& d) {
  const Eigen::VectorXd proj = d.x_tilde_b.transpose() * d.eps_hat;
  const Eigen::VectorXd norm_sq = d.x_tilde_b.colwise().squaredNorm().transpose();
  return (proj.array().square() / norm_sq.array()).matrix() / d.sigma2_hat;
}

MaxStatistic t_max_reg(const ResidualizedDesign& d) {
  return center_max(partial_f_statistics(d).maxCoeff(),
                    static_cast<int>(d.x_tilde_b.cols()));
}

double t_sum_reg(const ResidualizedDesign& d) {
  const double n = d.n;
  const double r = d.n - d.q;
  const double tested = static_cast<double>(d.x_tilde_b.cols());
  const double quad = (d.x_tilde_b.transpose() * d.eps_hat).squaredNorm() / n;
  const double numer = quad - r * tested * d.sigma2_hat / n;
  const double tr_hat = trace_estimator_from_design(d.x_tilde_b, d.n, d.q);
  if (!(tr_hat > 0.0)) {
    std::ostringstream msg;
    msg << "trace estimate is not positive (" << tr_hat << ")";
    throw Error(ErrorCode::Denominator, msg.str());
  }
  return numer / std::sqrt(2.0 * d.sigma2_hat * d.sigma2_hat * tr_hat);
}

TestReport combo_reg(const ResidualizedDesign& d, double alpha) {
  return make_report(t_sum_reg(d), t_max_reg(d), alpha);
}

MaxStatistic t_max_reg(const RegressionProblem& problem) {
  return t_max_reg(residualize(problem));
}

double t_sum_reg(const RegressionProblem& problem) {
  return t_sum_reg(residualize(problem));
}

TestReport combo_reg(const RegressionProblem& problem, double alpha) {
  return combo_reg(residualize(problem), alpha);
}

}  // namespace hdtest
