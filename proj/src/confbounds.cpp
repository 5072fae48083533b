#include "mmdbound/confbounds.hpp"

#include "mmdbound/errors.hpp"
#include "mmdbound/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmdb {
namespace {

void check_common(Eigen::Index n, double delta, Eigen::Index min_n = 1) {
  require(n >= min_n, "n must be at least " + std::to_string(min_n));
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
}

BoundReport make_report(BoundMethod method, double delta, Eigen::Index n, double leading, double higher) {
  BoundReport r;
  r.method = method;
  r.delta = delta;
  r.n = n;
  r.leading_term = leading;
  r.higher_order_term = higher;
  r.radius = leading + higher;
  return r;
}

}  // namespace

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::mcdiarmid: return "mcdiarmid";
    case BoundMethod::bernstein: return "bernstein";
    case BoundMethod::emp_bernstein_ti: return "emp_bernstein_ti";
    case BoundMethod::emp_bernstein_general: return "emp_bernstein_general";
    case BoundMethod::bernstein_maximal: return "bernstein_maximal";
  }
  return "unknown";
}

BoundReport mcdiarmid_bound(double k_sup, Eigen::Index n, double delta) {
  check_common(n, delta);
  require(k_sup > 0.0, "k_sup must be positive");
  const double nd = static_cast<double>(n);
  const double leading = std::sqrt(k_sup / nd) + std::sqrt(2.0 * k_sup * std::log(1.0 / delta) / nd);
  return make_report(BoundMethod::mcdiarmid, delta, n, leading, 0.0);
}

BoundReport bernstein_bound(double v, double k_sup, Eigen::Index n, double delta) {
  check_common(n, delta);
  require(k_sup > 0.0, "k_sup must be positive");
  require(v >= 0.0, "variance must be nonnegative");
  std::optional<std::string> note;
  if (v > k_sup) {
    note = "variance " + format_num(v) + " exceeds k_sup " + format_num(k_sup) + "; clamped";
    v = k_sup;
  }
  const double nd = static_cast<double>(n);
  const double log_term = std::log(1.0 / delta);
  auto r = make_report(BoundMethod::bernstein, delta, n, std::sqrt(2.0 * v * log_term / nd),
                       (4.0 / 3.0) * std::sqrt(k_sup) * log_term / nd);
  r.diagnostic = std::move(note);
  return r;
}

double bernstein_maximal_bound(double v, double k_sup, Eigen::Index n, double delta) {
  check_common(n, delta);
  require(k_sup > 0.0, "k_sup must be positive");
  require(v >= 0.0, "variance must be nonnegative");
  v = std::min(v, k_sup);
  const double nd = static_cast<double>(n);
  const double log_term = std::log(1.0 / delta);
  return std::sqrt(2.0 * v * nd * log_term) + (4.0 / 3.0) * std::sqrt(k_sup) * log_term;
}

BoundReport emp_bernstein_ti(double vhat, double delta_psi, Eigen::Index n, double delta) {
  check_common(n, delta, 2);
  require(delta_psi > 0.0, "delta_psi must be positive");
  vhat = std::max(vhat, 0.0);
  const double nd = static_cast<double>(n);
  const double log_term = std::log(2.0 / delta);
  return make_report(BoundMethod::emp_bernstein_ti, delta, n, std::sqrt(2.0 * vhat * log_term / nd),
                     (16.0 / 3.0) * std::sqrt(delta_psi) * log_term / nd);
}

BoundReport emp_bernstein_general(double vhat, double delta_k, double delta_diag, Eigen::Index n, double delta) {
  check_common(n, delta, 2);
  require(delta_k >= 0.0 && delta_diag >= 0.0, "kernel constants must be nonnegative");
  vhat = std::max(vhat, 0.0);
  const double nd = static_cast<double>(n);
  const double log_term = std::log(2.0 / delta);
  return make_report(
      BoundMethod::emp_bernstein_general, delta, n, std::sqrt(2.0 * (vhat + delta_diag) * log_term / nd),
      ((16.0 / 3.0) * std::sqrt(delta_k) + 2.0 * std::numbers::sqrt2 * std::sqrt(delta_diag)) * log_term / nd);
}

double sqrt_v_radius(const SqrtVConstants& c, Eigen::Index n, double delta) {
  check_common(n, delta, 2);
  require(c.delta_k >= 0.0 && c.delta_diag >= 0.0, "kernel constants must be nonnegative");
  const double nd = static_cast<double>(n);
  const double log_term = std::log(1.0 / delta);
  if (!c.general) return 2.0 * std::sqrt(2.0 * c.delta_k * log_term / nd);
  return 2.0 * std::sqrt((c.delta_diag + 2.0 * c.delta_k) * log_term / nd);
}

double sqrt_v_limit(double vhat, const SqrtVConstants& c, Eigen::Index n, double delta, Side side) {
  const double r = sqrt_v_radius(c, n, delta);
  const double shift = c.general ? c.delta_diag : 0.0;
  const double centre = std::sqrt(std::max(vhat, 0.0) + shift);
  const double limit = side == Side::upper ? centre + r : std::max(centre - r, 0.0);
  return std::sqrt(std::max(limit * limit - shift, 0.0));
}

}  // namespace mmdb
