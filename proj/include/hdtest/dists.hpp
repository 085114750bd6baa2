#pragma once

#include <string>
#include <variant>

#include <Eigen/Dense>

#include "hdtest/rng.hpp"

namespace hdtest {

// Innovation laws used to build synthetic data. Each is standardized to mean 0
// and variance 1.
struct StdNormal {};

/// t(df) * scale; the unit-variance choice is scale = sqrt((df - 2) / df).
struct ScaledT {
  int df = 3;
  double scale = 0.0;
};

/// V * scale with V ~ weight * N(0, sd_wide^2) + (1 - weight) * N(0, sd_narrow^2).
struct MixtureNormal {
  double weight = 0.1;
  double sd_wide = 3.0;
  double sd_narrow = 1.0;
  double scale = 0.74535599249992989;  // 1 / sqrt(1.8)
};

/// Exp(1) - 1.
struct CenteredExp {};

using InnovationKind = std::variant<StdNormal, ScaledT, MixtureNormal, CenteredExp>;

/// Unit-variance Student t innovation, df > 2.
ScaledT unit_t(int df);

/// Variance of the mixture before scaling: weight*sd_wide^2 + (1-weight)*sd_narrow^2.
double mixture_raw_variance(const MixtureNormal& m) noexcept;

std::string innovation_name(const InnovationKind& kind);

/// n x p matrix of i.i.d. innovations, filled row by row.
Eigen::MatrixXd sample_matrix(const InnovationKind& kind, int n, int p,
                              RngStream& stream);

// Gumbel law of the centered maximum: F(x) = exp(-exp(-x/2) / sqrt(pi)).
double gumbel_cdf(double x) noexcept;
double gumbel_quantile(double alpha);  // upper-alpha point: F(q) = 1 - alpha

// Null law of min(p_sum, p_max) for independent uniforms.
double combo_cdf(double w) noexcept;
double combo_threshold(double alpha);

double normal_cdf(double x) noexcept;
double normal_sf(double x) noexcept;  // 1 - cdf without cancellation
double normal_pdf(double x) noexcept;
double normal_quantile(double u);  // inverse cdf, u in (0, 1)

}  // namespace hdtest
