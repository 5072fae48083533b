#include "mmdbound/location_model.hpp"

#include "mmdbound/embeddings.hpp"
#include "mmdbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mmdb {

LocationObjective::LocationObjective(double gamma, double sigma, const Sample& x)
    : gamma_(gamma), sigma_(sigma), x_(x) {
  require(gamma > 0.0 && sigma > 0.0, "gamma and sigma must be positive");
  width2_ = sigma * sigma + gamma * gamma;
  amplitude_ = std::pow(gamma * gamma / width2_, 0.5 * static_cast<double>(x.dim()));
  const double n = static_cast<double>(x.size());
  constant_ = gram_stats(gaussian_kernel(gamma), x).full_sum / (n * n) + gaussian_model_self_term(gamma, sigma, x.dim());
}

double LocationObjective::value(const Vector& theta) const {
  double cross = 0.0;
  for (Eigen::Index t = 0; t < x_.size(); ++t) cross += gaussian_cross_term(gamma_, sigma_, x_.row(t), theta);
  return constant_ - 2.0 * cross / static_cast<double>(x_.size());
}

Vector LocationObjective::gradient(const Vector& theta) const {
  const Eigen::Index d = x_.dim();
  Vector g = Vector::Zero(d);
  for (Eigen::Index t = 0; t < x_.size(); ++t) {
    const double c = gaussian_cross_term(gamma_, sigma_, x_.row(t), theta);
    for (Eigen::Index i = 0; i < d; ++i) g[i] += c * (x_.matrix()(t, i) - theta[i]);
  }
  return -2.0 / (static_cast<double>(x_.size()) * width2_) * g;
}

double LocationObjective::change(const Vector& theta, const Vector& step) const {
  const Eigen::Index d = x_.dim();
  const double step2 = step.squaredNorm();
  double acc = 0.0;
  for (Eigen::Index t = 0; t < x_.size(); ++t) {
    double dot = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) dot += (x_.matrix()(t, i) - theta[i]) * step[i];
    // |x - theta - step|^2 - |x - theta|^2 = step^2 - 2 (x - theta).step
    const double exponent = -(step2 - 2.0 * dot) / (2.0 * width2_);
    acc += gaussian_cross_term(gamma_, sigma_, x_.row(t), theta) * std::expm1(exponent);
  }
  return -2.0 * acc / static_cast<double>(x_.size());
}

double LocationObjective::gradient_scale() const { return 2.0 * amplitude_ / std::sqrt(width2_); }

EstimateResult minimize_location_mmd(const LocationObjective& objective, const MinimizerOptions& opts,
                                     const Vector* init) {
  const Sample& x = objective.sample();
  require(x.size() >= 2, "location fit needs at least two observations");
  Vector theta = init ? *init : x.mean();
  require(theta.size() == x.dim(), "initial point has wrong dimension");

  EstimateResult res;
  res.initial_mmd2 = std::max(objective.value(theta), 0.0);
  const double tol = opts.grad_tol * objective.gradient_scale();
  const double n = static_cast<double>(x.size());
  const double width2 = objective.sigma() * objective.sigma() + objective.gamma() * objective.gamma();

  Vector grad = objective.gradient(theta);
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (grad.norm() <= tol) {
      res.converged = true;
      break;
    }
    double weight_sum = 0.0;
    for (Eigen::Index t = 0; t < x.size(); ++t)
      weight_sum += gaussian_cross_term(objective.gamma(), objective.sigma(), x.row(t), theta);
    // Step that moves theta onto the kernel-weighted mean.
    double alpha = weight_sum > 0.0 ? width2 * n / (2.0 * weight_sum) : 1.0;
    alpha = std::min(alpha, 1e12);
    const double slope = grad.squaredNorm();
    bool accepted = false;
    for (int halving = 0; halving < 80; ++halving) {
      const Vector step = -alpha * grad;
      if (objective.change(theta, step) <= -1e-4 * alpha * slope) {
        theta += step;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    grad = objective.gradient(theta);
  }
  if (!res.converged && grad.norm() <= tol) res.converged = true;
  res.iterations = it;
  res.theta_hat = theta;
  res.gradient_norm = grad.norm();
  res.final_mmd2 = std::max(objective.value(theta), 0.0);
  return res;
}

}  // namespace mmdb
