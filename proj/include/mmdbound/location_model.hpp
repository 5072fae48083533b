#pragma once

#include "mmdbound/sample.hpp"

namespace mmdb {

/// theta -> |mu_hat - mu_{N(theta, sigma^2 I)}|^2 under the Gaussian kernel
/// of lengthscale gamma, with its exact gradient. The Gram part of the
/// objective does not depend on theta and is computed once.
class LocationObjective {
 public:
  LocationObjective(double gamma, double sigma, const Sample& x);

  double value(const Vector& theta) const;
  Vector gradient(const Vector& theta) const;

  /// value(theta + step) - value(theta) without cancellation.
  double change(const Vector& theta, const Vector& step) const;

  /// Characteristic gradient magnitude, used to scale stopping tolerances.
  double gradient_scale() const;

  const Sample& sample() const { return x_; }
  double gamma() const { return gamma_; }
  double sigma() const { return sigma_; }

 private:
  double gamma_;
  double sigma_;
  const Sample& x_;
  double width2_;      // sigma^2 + gamma^2
  double amplitude_;   // (gamma^2 / (sigma^2 + gamma^2))^{d/2}
  double constant_;    // empirical Gram term + model self term
};

struct MinimizerOptions {
  int max_iterations = 500;
  /// Stop once |grad| <= grad_tol * gradient_scale().
  double grad_tol = 1e-8;
};

/// Outcome of the min-MMD location fit.
struct EstimateResult {
  Vector theta_hat;
  int iterations = 0;
  double final_mmd2 = 0.0;
  double initial_mmd2 = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// Gradient descent with Armijo backtracking from `init` (default: sample
/// mean). The first trial step lands on the kernel-weighted mean of the data,
/// the fixed point of the stationarity condition.
EstimateResult minimize_location_mmd(const LocationObjective& objective, const MinimizerOptions& opts,
                                     const Vector* init = nullptr);

}  // namespace mmdb
