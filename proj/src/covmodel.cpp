#include "hdtest/covmodel.hpp"

#include <cmath>
#include <mutex>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "hdtest/errors.hpp"

namespace hdtest {

struct CovarianceMatrix::Lazy {
  std::once_flag once;
  Eigen::MatrixXd factor;
};

namespace {

void require_dim(int p) {
  if (p < 2) {
    throw Error(ErrorCode::Size,
                "covariance dimension must be >= 2, got " + std::to_string(p));
  }
}

int leading_count(int p, double exponent) {
  // integer part of p^exponent
  return static_cast<int>(std::floor(std::pow(static_cast<double>(p), exponent)));
}

Eigen::VectorXd uniform_vector(int len, double lo, double hi, RngStream& stream) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(len);
  for (int i = 0; i < len; ++i) v(i) = u(stream.engine());
  return v;
}

Eigen::MatrixXd ar1_matrix(const Ar1& spec) {
  require_dim(spec.p);
  if (!(spec.rho > -1.0 && spec.rho < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "AR(1) rho must lie in (-1, 1)");
  }
  Eigen::MatrixXd s(spec.p, spec.p);
  for (int i = 0; i < spec.p; ++i) {
    for (int j = 0; j < spec.p; ++j) {
      s(i, j) = std::pow(spec.rho, std::abs(i - j));
    }
  }
  return s;
}

Eigen::MatrixXd spiked_matrix(const SpikedFactor& spec, RngStream& stream) {
  require_dim(spec.p);
  const int p = spec.p;
  const Eigen::VectorXd variances = uniform_vector(p, 1.0, 2.0, stream);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  const int k = std::min(p, leading_count(p, 0.3));
  b.head(k) = uniform_vector(k, 0.7, 0.9, stream);

  Eigen::MatrixXd r = b * b.transpose();
  r.diagonal().setOnes();
  const Eigen::VectorXd sd = variances.cwiseSqrt();
  return sd.asDiagonal() * r * sd.asDiagonal();
}

Eigen::MatrixXd rook_matrix(const SpatialRook& spec, RngStream& stream) {
  require_dim(spec.p);
  const int p = spec.p;
  const Eigen::MatrixXd w = rook_weights(p);
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(p, p) - spec.rho_eps * w;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::Singular, "I - rho W is singular");
  }
  const Eigen::MatrixXd inv = lu.inverse();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p);
  const int k = std::min(p, leading_count(p, spec.delta_gamma));
  g.head(k) = uniform_vector(k, 0.7, 0.9, stream);
  Eigen::MatrixXd s = g * g.transpose() + inv * inv.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace

int spec_dim(const CovarianceSpec& spec) {
  struct Visitor {
    int operator()(const Ar1& s) const { return s.p; }
    int operator()(const SpikedFactor& s) const { return s.p; }
    int operator()(const SpatialRook& s) const { return s.p; }
    int operator()(const Explicit& s) const {
      return static_cast<int>(s.matrix.rows());
    }
  };
  return std::visit(Visitor{}, spec);
}

std::string scenario_name(const CovarianceSpec& spec) {
  struct Visitor {
    std::string operator()(const Ar1&) const { return "I"; }
    std::string operator()(const SpikedFactor&) const { return "II"; }
    std::string operator()(const SpatialRook&) const { return "III"; }
    std::string operator()(const Explicit& s) const {
      return s.matrix.isIdentity(0.0) ? "identity" : "explicit";
    }
  };
  return std::visit(Visitor{}, spec);
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)), lazy_(std::make_shared<Lazy>()) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::Size, "covariance matrix must be square and nonempty");
  }
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric,
                "covariance matrix is not symmetric (max |S - S'| = " +
                    std::to_string(asym) + ")");
  }
  entries_ = (0.5 * (entries_ + entries_.transpose())).eval();  // transpose aliases
  identity_ = entries_.isIdentity(0.0);
}

const Eigen::MatrixXd& CovarianceMatrix::sqrt_factor() const {
  std::call_once(lazy_->once, [this] {
    lazy_->factor = identity_ ? Eigen::MatrixXd::Identity(dim(), dim())
                              : hdtest::sqrt_factor(entries_);
  });
  return lazy_->factor;
}

CovarianceMatrix build_covariance(const CovarianceSpec& spec, RngStream& stream) {
  struct Visitor {
    RngStream& stream;
    Eigen::MatrixXd operator()(const Ar1& s) const { return ar1_matrix(s); }
    Eigen::MatrixXd operator()(const SpikedFactor& s) const {
      return spiked_matrix(s, stream);
    }
    Eigen::MatrixXd operator()(const SpatialRook& s) const {
      return rook_matrix(s, stream);
    }
    Eigen::MatrixXd operator()(const Explicit& s) const {
      require_dim(static_cast<int>(s.matrix.rows()));
      return s.matrix;
    }
  };
  return CovarianceMatrix(std::visit(Visitor{stream}, spec));
}

Eigen::MatrixXd rook_weights(int p) {
  require_dim(p);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  // 0-based: w(i+1, i) = 0.5 for i = 0..p-3, w(i-1, i) = 0.5 for i = 2..p-1
  for (int i = 0; i + 2 < p; ++i) w(i + 1, i) = 0.5;
  for (int i = 2; i < p; ++i) w(i - 1, i) = 0.5;
  w(0, 1) = 1.0;
  w(p - 1, p - 2) = 1.0;
  return w;
}

Eigen::MatrixXd sqrt_factor(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols()) {
    throw Error(ErrorCode::Size, "sqrt_factor needs a square matrix");
  }
  const double tol = 1e-10 * sigma.cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPsd, "eigendecomposition failed");
  }
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -tol) {
    throw Error(ErrorCode::NotPsd, "matrix is not positive semidefinite (min eigenvalue " +
                                       std::to_string(lambda.minCoeff()) + ")");
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  return v * lambda.asDiagonal() * v.transpose();
}

double trace_power(const Eigen::MatrixXd& a, int k) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::Size, "trace_power needs a square matrix");
  }
  switch (k) {
    case 1:
      return a.trace();
    case 2:
      return a.cwiseProduct(a.transpose()).sum();
    case 3:
      return (a * a).cwiseProduct(a.transpose()).sum();
    case 4: {
      const Eigen::MatrixXd b = a * a;
      return b.cwiseProduct(b.transpose()).sum();
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "trace_power supports k = 1..4");
  }
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data, Divisor divisor) {
  const auto n = data.rows();
  if (n < 2) throw Error(ErrorCode::Size, "sample covariance needs n >= 2");
  const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  const double denom = divisor == Divisor::N ? static_cast<double>(n)
                                             : static_cast<double>(n - 1);
  return (centered.transpose() * centered) / denom;
}

Eigen::MatrixXd pooled_covariance(const Eigen::MatrixXd& sample1,
                                  const Eigen::MatrixXd& sample2) {
  if (sample1.cols() != sample2.cols()) {
    throw Error(ErrorCode::Size, "samples must have the same dimension");
  }
  if (sample1.rows() < 1 || sample2.rows() < 1) {
    throw Error(ErrorCode::Size, "both samples must be nonempty");
  }
  const Eigen::MatrixXd c1 = sample1.rowwise() - sample1.colwise().mean();
  const Eigen::MatrixXd c2 = sample2.rowwise() - sample2.colwise().mean();
  return (c1.transpose() * c1 + c2.transpose() * c2) /
         static_cast<double>(sample1.rows() + sample2.rows());
}

Eigen::MatrixXd correlation_of(const Eigen::MatrixXd& cov) {
  const Eigen::VectorXd d = cov.diagonal();
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    if (!(d(j) > 0.0)) {
      throw Error(ErrorCode::DegenerateVariance,
                  "zero sample variance in column " + std::to_string(j + 1));
    }
  }
  const Eigen::VectorXd inv_sd = d.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd r = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
  r.diagonal().setOnes();
  return r;
}

}  // namespace hdtest
