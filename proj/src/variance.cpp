#include "mmdbound/variance.hpp"

#include "mmdbound/embeddings.hpp"
#include "mmdbound/errors.hpp"

#include <cmath>
#include <vector>

namespace mmdb {

const char* to_string(ProxyForm form) {
  return form == ProxyForm::general ? "general" : "translation_invariant";
}

VarianceProxy vhat_general(const KernelSpec& k, const Sample& x) {
  const Eigen::Index n = x.size();
  if (n < 2) throw DegenerateSampleError("variance proxy needs at least two observations");
  const GramStats g = gram_stats(k, x);
  const double nd = static_cast<double>(n);
  return {(nd * g.diag_sum - g.full_sum) / (nd * (nd - 1.0)), ProxyForm::general, n};
}

VarianceProxy vhat_ti(const KernelSpec& k, const Sample& x) {
  require(k.is_translation_invariant(), "vhat_ti needs a translation invariant kernel");
  const Eigen::Index n = x.size();
  if (n < 2) throw DegenerateSampleError("variance proxy needs at least two observations");
  const Eigen::Index d = x.dim();
  std::vector<double> disp(static_cast<std::size_t>(d), 0.0);
  const double psi0 = k.psi(disp);
  double pairs = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    double acc = 0.0;
    for (Eigen::Index s = t + 1; s < n; ++s) {
      for (Eigen::Index i = 0; i < d; ++i) disp[static_cast<std::size_t>(i)] = x.matrix()(s, i) - x.matrix()(t, i);
      acc += k.psi(disp);
    }
    pairs += acc;
  }
  const double nd = static_cast<double>(n);
  return {psi0 - 2.0 * pairs / (nd * (nd - 1.0)), ProxyForm::translation_invariant, n};
}

VarianceProxy vhat_auto(const KernelSpec& k, const Sample& x) {
  return k.is_translation_invariant() ? vhat_ti(k, x) : vhat_general(k, x);
}

double trace_cov_hat(const Sample& x) {
  const Eigen::Index n = x.size();
  if (n < 2) throw DegenerateSampleError("trace estimate needs at least two observations");
  require(x.matrix().minCoeff() >= 0.0 && x.matrix().maxCoeff() <= 1.0, "entries must lie in [0, 1]");
  const auto& m = x.matrix();
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    double s = 0.0;
    for (Eigen::Index t = 0; t < n; ++t)
      for (Eigen::Index u = t + 1; u < n; ++u) {
        double diff = m(t, i) - m(u, i);
        s += diff * diff;
      }
    // Each unordered pair appears twice in the double sum.
    total += 2.0 * s / (2.0 * static_cast<double>(n) * static_cast<double>(n - 1));
  }
  return total;
}

double trace_deviation_bound(Eigen::Index n, double delta) {
  require(n >= 2, "n must be at least 2");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  return std::sqrt(2.0 * std::log(1.0 / delta) / static_cast<double>(n - 1));
}

double v_bound_gaussian(double gamma, double trace_sigma) {
  require(gamma > 0.0, "gamma must be positive");
  require(trace_sigma >= 0.0, "trace must be nonnegative");
  return -std::expm1(-trace_sigma / (gamma * gamma));
}

double v_bound_convex_radial(const KernelSpec& k, double mean_sq_dist) {
  const auto* cr = std::get_if<family::ConvexRadial>(&k.family());
  require(cr != nullptr, "v_bound_convex_radial needs a convex radial kernel");
  require(mean_sq_dist >= 0.0, "mean squared distance must be nonnegative");
  return cr->r_sup - cr->r(-mean_sq_dist);
}

double v_bound_huber(double v0, double xi, double psi_sup, double psi_inf, bool streamlined) {
  require(xi >= 0.0 && xi <= 1.0, "contamination rate must lie in [0, 1]");
  const double dpsi = psi_sup - psi_inf;
  require(v0 >= 0.0 && v0 <= dpsi, "v0 must lie in [0, delta_psi]");
  if (!streamlined) return v0 + 2.0 * xi * (dpsi - v0) + xi * xi * (v0 - dpsi);
  return (1.0 - 2.0 * xi) * v0 + 2.0 * xi * (psi_inf >= 0.0 ? psi_sup : dpsi);
}

}  // namespace mmdb
