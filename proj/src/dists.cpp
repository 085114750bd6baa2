#include "hdtest/dists.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "hdtest/errors.hpp"

namespace hdtest {
namespace {

void check_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::Domain,
                "level must lie in (0, 1), got " + std::to_string(alpha));
  }
}

template <class Draw>
Eigen::MatrixXd fill(int n, int p, Draw&& draw) {
  Eigen::MatrixXd out(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) out(i, j) = draw();
  }
  return out;
}

}  // namespace

ScaledT unit_t(int df) {
  if (df <= 2) {
    throw Error(ErrorCode::InvalidArgument, "unit-variance t needs df > 2");
  }
  return ScaledT{df, std::sqrt((df - 2.0) / df)};
}

double mixture_raw_variance(const MixtureNormal& m) noexcept {
  return m.weight * m.sd_wide * m.sd_wide +
         (1.0 - m.weight) * m.sd_narrow * m.sd_narrow;
}

std::string innovation_name(const InnovationKind& kind) {
  struct Visitor {
    std::string operator()(const StdNormal&) const { return "normal"; }
    std::string operator()(const ScaledT& t) const {
      return "t" + std::to_string(t.df);
    }
    std::string operator()(const MixtureNormal&) const { return "mixture"; }
    std::string operator()(const CenteredExp&) const { return "exp"; }
  };
  return std::visit(Visitor{}, kind);
}

Eigen::MatrixXd sample_matrix(const InnovationKind& kind, int n, int p,
                              RngStream& stream) {
  if (n < 1 || p < 1) {
    throw Error(ErrorCode::Size, "sample_matrix needs n, p >= 1");
  }
  auto& eng = stream.engine();
  struct Visitor {
    int n, p;
    RngStream::Engine& eng;
    Eigen::MatrixXd operator()(const StdNormal&) const {
      std::normal_distribution<double> z;
      return fill(n, p, [&] { return z(eng); });
    }
    Eigen::MatrixXd operator()(const ScaledT& t) const {
      if (t.df < 1) throw Error(ErrorCode::InvalidArgument, "t df must be >= 1");
      std::normal_distribution<double> z;
      std::chi_squared_distribution<double> chi(t.df);
      const double df = t.df;
      return fill(n, p, [&] {
        const double num = z(eng);
        return t.scale * num / std::sqrt(chi(eng) / df);
      });
    }
    Eigen::MatrixXd operator()(const MixtureNormal& m) const {
      std::normal_distribution<double> z;
      std::bernoulli_distribution wide(m.weight);
      return fill(n, p, [&] {
        const double sd = wide(eng) ? m.sd_wide : m.sd_narrow;
        return m.scale * sd * z(eng);
      });
    }
    Eigen::MatrixXd operator()(const CenteredExp&) const {
      std::exponential_distribution<double> e(1.0);
      return fill(n, p, [&] { return e(eng) - 1.0; });
    }
  };
  return std::visit(Visitor{n, p, eng}, kind);
}

double gumbel_cdf(double x) noexcept {
  return std::exp(-std::exp(-0.5 * x) / std::sqrt(std::numbers::pi));
}

double gumbel_quantile(double alpha) {
  check_level(alpha);
  return -std::log(std::numbers::pi) -
         2.0 * std::log(std::log(1.0 / (1.0 - alpha)));
}

double combo_cdf(double w) noexcept {
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  return 1.0 - (1.0 - w) * (1.0 - w);
}

double combo_threshold(double alpha) {
  check_level(alpha);
  return 1.0 - std::sqrt(1.0 - alpha);
}

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_sf(double x) noexcept {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) * 0.5 * std::numbers::inv_sqrtpi *
         std::numbers::sqrt2;
}

double normal_quantile(double alpha) {
  check_level(alpha);
  // Phi(z) = alpha  <=>  erfc(-z / sqrt2) = 2 alpha
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * alpha);
}

}  // namespace hdtest
