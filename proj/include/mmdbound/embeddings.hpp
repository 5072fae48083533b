#pragma once

#include "mmdbound/kernels.hpp"
#include "mmdbound/sample.hpp"

namespace mmdb {

/// Sums over the n x n Gram matrix of a sample.
struct GramStats {
  double diag_sum = 0.0;     ///< sum_t k(X_t, X_t)
  double full_sum = 0.0;     ///< sum_s sum_t k(X_t, X_s)
  double offdiag_sum = 0.0;  ///< sum_{s != t} k(X_t, X_s)
  Eigen::Index n = 0;
};

/// O(n^2) kernel calls; rows are reduced in index order so results are
/// reproducible bit for bit.
GramStats gram_stats(const KernelSpec& k, const Sample& x);

/// Sum over all (x_i, y_j) pairs of k(x_i, y_j).
double cross_sum(const KernelSpec& k, const Sample& x, const Sample& y);

/// Squared MMD between two empirical measures (V-statistic, diagonal included).
double mmd2_empirical(const KernelSpec& k, const Sample& x, const Sample& y);

/// Squared MMD between N(theta, sigma^2 I) and N(theta2, sigma^2 I) under the
/// Gaussian kernel of lengthscale gamma.
double mmd2_gaussian_model(double gamma, double sigma, Eigen::Index d, const Vector& theta, const Vector& theta2);

/// E_{Z ~ N(theta, sigma^2 I)} k_gamma(x, Z).
double gaussian_cross_term(double gamma, double sigma, std::span<const double> x, const Vector& theta);

/// E k_gamma(Z, Z') for Z, Z' independent N(., sigma^2 I_d).
double gaussian_model_self_term(double gamma, double sigma, Eigen::Index d);

/// Squared MMD between the empirical measure of x and N(theta, sigma^2 I).
double mmd2_empirical_to_gaussian(double gamma, double sigma, const Sample& x, const Vector& theta);

/// Clamps a squared distance assembled from terms of size `scale`; results
/// below 1e-14 * scale are rounding noise and become 0.
double clamp_mmd2(double value, double scale);

}  // namespace mmdb
