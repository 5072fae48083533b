#pragma once

#include "mmdbound/sample.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mmdb {

class KernelSpec;

/// Function of the displacement x' - x for translation invariant kernels.
using DisplacementFn = std::function<double(std::span<const double>)>;
/// Profile r of a radial kernel k(x, x') = r(-|x - x'|^2), defined on (-inf, 0].
using RadialProfile = std::function<double(double)>;

namespace family {

/// exp(-|x - x'|^2 / (2 gamma^2)).
struct Gaussian {
  double gamma;
};

struct TranslationInvariant {
  DisplacementFn psi;
  double psi_sup;
  double psi_inf;
};

struct ConvexRadial {
  RadialProfile r;
  double r_sup;
  double r_inf;
};

/// Kernel on the alphabet {0, ..., m-1}; points are 1-d rows holding an index.
struct FiniteMatrix {
  RowMatrix gram;
};

/// Weighted sum of kernels sharing a domain.
struct Mixture {
  std::vector<std::shared_ptr<const KernelSpec>> components;
  std::vector<double> weights;
};

}  // namespace family

/// Immutable kernel descriptor: evaluation rule plus the constants used by
/// every confidence bound (sup k, inf k, inf of the diagonal).
class KernelSpec {
 public:
  using Family = std::variant<family::Gaussian, family::TranslationInvariant, family::ConvexRadial,
                              family::FiniteMatrix, family::Mixture>;

  KernelSpec(Family family, double k_sup, double k_inf, double diag_inf, bool characteristic);

  const Family& family() const { return family_; }

  /// k(x, y). Throws ValidationError on dimension mismatch or non-finite input.
  double eval(std::span<const double> x, std::span<const double> y) const;
  /// k(x, y) without argument validation; callers guarantee well-formed rows.
  double eval_unchecked(std::span<const double> x, std::span<const double> y) const;

  bool is_translation_invariant() const;
  /// psi(x' - x) for translation invariant kernels; throws otherwise.
  double psi(std::span<const double> displacement) const;

  /// Required row dimension, or 0 when any dimension is accepted.
  Eigen::Index required_dim() const;

  double k_sup() const { return k_sup_; }
  double k_inf() const { return k_inf_; }
  double diag_inf() const { return diag_inf_; }
  bool characteristic() const { return characteristic_; }

  /// k_sup - k_inf.
  double delta_k() const { return k_sup_ - k_inf_; }
  /// sup diag - inf diag; zero for translation invariant kernels.
  double delta_diag() const { return k_sup_ - diag_inf_; }
  /// sup psi - inf psi; equals delta_k for translation invariant kernels.
  double delta_psi() const;

  std::string describe() const;

 private:
  Family family_;
  double k_sup_;
  double k_inf_;
  double diag_inf_;
  bool characteristic_;
};

KernelSpec gaussian_kernel(double gamma);

KernelSpec translation_invariant_kernel(DisplacementFn psi, double psi_sup, double psi_inf,
                                        bool characteristic = true);

/// k(x, x') = r(-|x - x'|^2) with r convex. Convexity is checked with
/// three-point secants on `convexity_grid` (nonpositive abscissae).
KernelSpec convex_radial_kernel(RadialProfile r, double r_sup, double r_inf,
                                std::span<const double> convexity_grid, bool characteristic = true);

/// Kernel given by a symmetric positive definite matrix over a finite alphabet.
KernelSpec finite_matrix_kernel(RowMatrix gram);

/// sum_i weights[i] * kernels[i], with interval-arithmetic bound constants.
KernelSpec mix(std::span<const KernelSpec> kernels, std::span<const double> weights);

/// True when every consecutive grid triple satisfies the secant inequality.
bool passes_secant_convexity(const RadialProfile& r, std::span<const double> grid, double tol = 1e-12);

/// Parses `gaussian:gamma=<g>` or `matrix:path=<csv>`.
KernelSpec parse_kernel(const std::string& text);

}  // namespace mmdb
