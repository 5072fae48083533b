#pragma once

#include "mmdbound/location_model.hpp"
#include "mmdbound/rng.hpp"
#include "mmdbound/sample.hpp"

#include <cstdint>
#include <variant>

namespace mmdb {

namespace noise {
/// N(mu, s^2 I).
struct GaussianShift {
  Vector mu;
  double s;
};
struct PointMass {
  Vector x0;
};
/// Independent Cauchy coordinates centred at loc.
struct Cauchy {
  Vector loc;
  double scale;
};
}  // namespace noise

using NoiseLaw = std::variant<noise::GaussianShift, noise::PointMass, noise::Cauchy>;

/// Data law (1 - xi) N(theta0, sigma^2 I_d) + xi H.
struct HuberConfig {
  Vector theta0;
  double sigma = 1.0;
  double xi = 0.0;
  NoiseLaw noise;

  Eigen::Index dim() const { return theta0.size(); }
  void validate() const;
};

/// Point mass at theta0 + 10 sigma (1,...,1)/sqrt(d).
NoiseLaw default_noise(const Vector& theta0, double sigma);

/// n independent draws; rows are generated in order from one stream.
Sample sample_huber(const HuberConfig& cfg, Eigen::Index n, RngStream& rng);
Sample sample_huber(const HuberConfig& cfg, Eigen::Index n, std::uint64_t seed);

/// Min-MMD location estimate in the model N(theta, sigma^2 I).
EstimateResult min_mmd_estimate(double gamma, double sigma, const Sample& x, const MinimizerOptions& opts = {});

/// MMD-space radius for the min-MMD estimate under contamination:
/// 4 xi sqrt(psi_sup) + 2 sqrt(2 [(1 - 2 xi) v0 + 2 xi psi_sup] L / n) + 2 (4/3) sqrt(psi_sup) L / n,
/// L = log(1/delta).
double mmd_bound_huber(double xi, double v0, double psi_sup, Eigen::Index n, double delta);

/// Link function of the Gaussian location model: the smallest F with
/// |theta - theta'| <= F(|mu_theta - mu_theta'|). Returns +inf when h exceeds
/// the largest attainable MMD.
double link_gaussian(double h, double sigma, double gamma, Eigen::Index d);

/// Parameter-space radius sqrt(G) from the variance-aware bound with
/// gamma = lambda sigma sqrt(d); +inf when the log argument is nonpositive.
double param_bound_G(Eigen::Index d, double sigma, Eigen::Index n, double lambda, double xi, double delta);

/// Parameter-space radius sqrt(H) from the McDiarmid bound; +inf when the
/// log argument is nonpositive.
double param_bound_H(Eigen::Index d, double sigma, Eigen::Index n, double lambda, double xi, double delta);

}  // namespace mmdb
