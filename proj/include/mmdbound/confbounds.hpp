#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

namespace mmdb {

enum class BoundMethod { mcdiarmid, bernstein, emp_bernstein_ti, emp_bernstein_general, bernstein_maximal };

const char* to_string(BoundMethod method);

/// Confidence radius for |mu_hat - mu| together with its two parts.
struct BoundReport {
  double radius = 0.0;
  BoundMethod method = BoundMethod::mcdiarmid;
  double delta = 0.0;
  Eigen::Index n = 0;
  double leading_term = 0.0;       ///< O(n^-1/2) part
  double higher_order_term = 0.0;  ///< O(n^-1) part
  std::optional<std::string> diagnostic;
};

/// sqrt(k_sup/n) + sqrt(2 k_sup log(1/delta) / n).
BoundReport mcdiarmid_bound(double k_sup, Eigen::Index n, double delta);

/// sqrt(2 v log(1/delta) / n) + (4/3) sqrt(k_sup) log(1/delta) / n.
/// v above k_sup is clamped to k_sup and reported in `diagnostic`.
BoundReport bernstein_bound(double v, double k_sup, Eigen::Index n, double delta);

/// Bound on max_t t |mu_hat(X_1..X_t) - mu|: n times bernstein_bound.
double bernstein_maximal_bound(double v, double k_sup, Eigen::Index n, double delta);

/// Fully empirical radius for translation invariant kernels:
/// sqrt(2 vhat log(2/delta) / n) + (16/3) sqrt(delta_psi) log(2/delta) / n.
BoundReport emp_bernstein_ti(double vhat, double delta_psi, Eigen::Index n, double delta);

/// Fully empirical radius for general kernels:
/// sqrt(2 (vhat + ddiag) L / n) + ((16/3) sqrt(dk) + 2 sqrt(2) sqrt(ddiag)) L / n,
/// with L = log(2/delta).
BoundReport emp_bernstein_general(double vhat, double delta_k, double delta_diag, Eigen::Index n, double delta);

/// Constants entering the concentration of sqrt(vhat).
struct SqrtVConstants {
  double delta_k = 0.0;     ///< delta_psi for translation invariant kernels
  double delta_diag = 0.0;  ///< zero for translation invariant kernels
  bool general = false;
};

/// Radius r with |sqrt(vhat) - sqrt(v)| <= r (translation invariant) or
/// |sqrt(vhat + ddiag) - sqrt(v + ddiag)| <= r (general), each side holding
/// with probability 1 - delta.
double sqrt_v_radius(const SqrtVConstants& c, Eigen::Index n, double delta);

enum class Side { lower = -1, upper = +1 };

/// One-sided confidence limit on sqrt(v) derived from sqrt_v_radius.
double sqrt_v_limit(double vhat, const SqrtVConstants& c, Eigen::Index n, double delta, Side side);

}  // namespace mmdb
