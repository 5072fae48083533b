#pragma once

#include "mmdbound/kernels.hpp"
#include "mmdbound/sample.hpp"

namespace mmdb {

enum class ProxyForm { general, translation_invariant };

const char* to_string(ProxyForm form);

/// Unbiased empirical estimate of v = E k(X,X) - E k(X,X').
struct VarianceProxy {
  double vhat = 0.0;
  ProxyForm form = ProxyForm::general;
  Eigen::Index n = 0;
};

/// (1/(n-1)) sum_t [k(X_t,X_t) - (1/n) sum_s k(X_t,X_s)]. Needs n >= 2.
VarianceProxy vhat_general(const KernelSpec& k, const Sample& x);

/// psi(0) - (1/(n(n-1))) sum_{t != s} psi(X_t - X_s) for translation invariant k.
VarianceProxy vhat_ti(const KernelSpec& k, const Sample& x);

/// Picks the translation invariant form when available.
VarianceProxy vhat_auto(const KernelSpec& k, const Sample& x);

/// Sum over coordinates of (1/(2n(n-1))) sum_{s,t} (X_t^i - X_s^i)^2, for
/// samples in [0,1]^d.
double trace_cov_hat(const Sample& x);

/// Two-sided radius sqrt(2 log(1/delta) / (n-1)) for sqrt(Tr Sigma / d).
double trace_deviation_bound(Eigen::Index n, double delta);

/// 1 - exp(-trace_sigma / gamma^2): upper bound on v for the Gaussian kernel.
double v_bound_gaussian(double gamma, double trace_sigma);

/// r_sup - r(-mean_sq_dist) for k(x,x') = r(-|x-x'|^2) with r convex.
///
/// `mean_sq_dist` is E|X - X'|^2 = 2 Tr Sigma. With r(z) = exp(z / (2 gamma^2))
/// this reproduces v_bound_gaussian(gamma, Tr Sigma).
double v_bound_convex_radial(const KernelSpec& k, double mean_sq_dist);

/// Bound on v for (1 - xi) P0 + xi H given v0 = v(P0).
///
/// Precise form: v0 + 2 xi (dpsi - v0) + xi^2 (v0 - dpsi). Streamlined form:
/// (1 - 2 xi) v0 + 2 xi psi_sup when psi >= 0, else (1 - 2 xi) v0 + 2 xi dpsi.
double v_bound_huber(double v0, double xi, double psi_sup, double psi_inf, bool streamlined);

}  // namespace mmdb
