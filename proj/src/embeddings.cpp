#include "mmdbound/embeddings.hpp"

#include "mmdbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mmdb {
namespace {

void check_kernel_dim(const KernelSpec& k, const Sample& x) {
  Eigen::Index need = k.required_dim();
  require(need == 0 || need == x.dim(), "sample dimension does not match the kernel domain");
}

}  // namespace

GramStats gram_stats(const KernelSpec& k, const Sample& x) {
  check_kernel_dim(k, x);
  const Eigen::Index n = x.size();
  GramStats g;
  g.n = n;
  std::vector<double> row_offdiag(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index t = 0; t < n; ++t) {
    g.diag_sum += k.eval_unchecked(x.row(t), x.row(t));
    double acc = 0.0;
    for (Eigen::Index s = t + 1; s < n; ++s) acc += k.eval_unchecked(x.row(t), x.row(s));
    row_offdiag[static_cast<std::size_t>(t)] = acc;
  }
  double upper = 0.0;
  for (double r : row_offdiag) upper += r;
  g.offdiag_sum = 2.0 * upper;
  g.full_sum = g.diag_sum + g.offdiag_sum;
  return g;
}

double cross_sum(const KernelSpec& k, const Sample& x, const Sample& y) {
  require(x.dim() == y.dim(), "samples have different dimensions");
  check_kernel_dim(k, x);
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < y.size(); ++j) acc += k.eval_unchecked(x.row(i), y.row(j));
    s += acc;
  }
  return s;
}

double clamp_mmd2(double value, double scale) {
  if (value <= 1e-14 * std::abs(scale)) return 0.0;
  return value;
}

double mmd2_empirical(const KernelSpec& k, const Sample& x, const Sample& y) {
  require(x.dim() == y.dim(), "samples have different dimensions");
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  const double xx = gram_stats(k, x).full_sum / (n * n);
  const double yy = gram_stats(k, y).full_sum / (m * m);
  // Summing both cross orders makes the result exactly symmetric in (x, y).
  const double xy = (cross_sum(k, x, y) + cross_sum(k, y, x)) / (n * m);
  return clamp_mmd2((xx + yy) - xy, std::max({std::abs(xx), std::abs(yy), std::abs(xy)}));
}

double mmd2_gaussian_model(double gamma, double sigma, Eigen::Index d, const Vector& theta, const Vector& theta2) {
  require(gamma > 0.0 && sigma > 0.0, "gamma and sigma must be positive");
  require(theta.size() == d && theta2.size() == d, "parameter vectors must have length d");
  const double g2 = gamma * gamma, s2 = sigma * sigma;
  const double amp = std::pow(g2 / (2.0 * s2 + g2), 0.5 * static_cast<double>(d));
  const double dist2 = (theta - theta2).squaredNorm();
  return 2.0 * amp * -std::expm1(-dist2 / (4.0 * s2 + 2.0 * g2));
}

double gaussian_cross_term(double gamma, double sigma, std::span<const double> x, const Vector& theta) {
  const double g2 = gamma * gamma, s2 = sigma * sigma;
  double dist2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double diff = x[i] - theta[static_cast<Eigen::Index>(i)];
    dist2 += diff * diff;
  }
  return std::pow(g2 / (s2 + g2), 0.5 * static_cast<double>(x.size())) * std::exp(-dist2 / (2.0 * (s2 + g2)));
}

double gaussian_model_self_term(double gamma, double sigma, Eigen::Index d) {
  const double g2 = gamma * gamma, s2 = sigma * sigma;
  return std::pow(g2 / (2.0 * s2 + g2), 0.5 * static_cast<double>(d));
}

double mmd2_empirical_to_gaussian(double gamma, double sigma, const Sample& x, const Vector& theta) {
  require(gamma > 0.0 && sigma > 0.0, "gamma and sigma must be positive");
  require(theta.size() == x.dim(), "parameter dimension does not match the sample");
  const double n = static_cast<double>(x.size());
  const double empirical = gram_stats(gaussian_kernel(gamma), x).full_sum / (n * n);
  const double model = gaussian_model_self_term(gamma, sigma, x.dim());
  double cross = 0.0;
  for (Eigen::Index t = 0; t < x.size(); ++t) cross += gaussian_cross_term(gamma, sigma, x.row(t), theta);
  cross = 2.0 * cross / n;
  return clamp_mmd2(empirical + model - cross, std::max({empirical, model, cross}));
}

}  // namespace mmdb
