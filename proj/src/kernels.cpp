#include "mmdbound/kernels.hpp"

#include "mmdbound/errors.hpp"
#include "mmdbound/format.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace mmdb {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double diff = x[i] - y[i];
    s += diff * diff;
  }
  return s;
}

double squared_norm(std::span<const double> t) {
  double s = 0.0;
  for (double v : t) s += v * v;
  return s;
}

std::size_t alphabet_index(double coord, Eigen::Index size) {
  if (coord < 0.0 || coord != std::floor(coord) || coord >= static_cast<double>(size))
    throw ValidationError("alphabet index " + format_num(coord) + " out of range");
  return static_cast<std::size_t>(coord);
}

}  // namespace

KernelSpec::KernelSpec(Family family, double k_sup, double k_inf, double diag_inf, bool characteristic)
    : family_(std::move(family)),
      k_sup_(k_sup),
      k_inf_(k_inf),
      diag_inf_(diag_inf),
      characteristic_(characteristic) {
  require(std::isfinite(k_sup) && std::isfinite(k_inf) && std::isfinite(diag_inf),
          "kernel constants must be finite");
  require(k_sup >= diag_inf && diag_inf >= k_inf, "kernel constants must satisfy k_sup >= diag_inf >= k_inf");
}

double KernelSpec::eval(std::span<const double> x, std::span<const double> y) const {
  require(x.size() == y.size(), "kernel arguments have different dimensions");
  Eigen::Index need = required_dim();
  require(need == 0 || static_cast<Eigen::Index>(x.size()) == need, "kernel argument has wrong dimension");
  for (std::size_t i = 0; i < x.size(); ++i)
    require(std::isfinite(x[i]) && std::isfinite(y[i]), "kernel arguments must be finite");
  return eval_unchecked(x, y);
}

double KernelSpec::eval_unchecked(std::span<const double> x, std::span<const double> y) const {
  return std::visit(
      overloaded{
          [&](const family::Gaussian& g) {
            return std::exp(-squared_distance(x, y) / (2.0 * g.gamma * g.gamma));
          },
          [&](const family::TranslationInvariant& ti) {
            std::vector<double> disp(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) disp[i] = y[i] - x[i];
            return ti.psi(disp);
          },
          [&](const family::ConvexRadial& cr) { return cr.r(-squared_distance(x, y)); },
          [&](const family::FiniteMatrix& fm) {
            auto m = fm.gram.rows();
            return fm.gram(static_cast<Eigen::Index>(alphabet_index(x[0], m)),
                           static_cast<Eigen::Index>(alphabet_index(y[0], m)));
          },
          [&](const family::Mixture& mx) {
            double s = 0.0;
            for (std::size_t i = 0; i < mx.components.size(); ++i)
              s += mx.weights[i] * mx.components[i]->eval_unchecked(x, y);
            return s;
          },
      },
      family_);
}

bool KernelSpec::is_translation_invariant() const {
  return std::visit(overloaded{
                        [](const family::Gaussian&) { return true; },
                        [](const family::TranslationInvariant&) { return true; },
                        [](const family::ConvexRadial&) { return true; },
                        [](const family::FiniteMatrix&) { return false; },
                        [](const family::Mixture& mx) {
                          return std::all_of(mx.components.begin(), mx.components.end(),
                                             [](const auto& c) { return c->is_translation_invariant(); });
                        },
                    },
                    family_);
}

double KernelSpec::psi(std::span<const double> t) const {
  return std::visit(
      overloaded{
          [&](const family::Gaussian& g) { return std::exp(-squared_norm(t) / (2.0 * g.gamma * g.gamma)); },
          [&](const family::TranslationInvariant& ti) { return ti.psi(t); },
          [&](const family::ConvexRadial& cr) { return cr.r(-squared_norm(t)); },
          [&](const family::FiniteMatrix&) -> double {
            throw ValidationError("finite-matrix kernel is not translation invariant");
          },
          [&](const family::Mixture& mx) {
            double s = 0.0;
            for (std::size_t i = 0; i < mx.components.size(); ++i) s += mx.weights[i] * mx.components[i]->psi(t);
            return s;
          },
      },
      family_);
}

Eigen::Index KernelSpec::required_dim() const {
  return std::visit(overloaded{
                        [](const family::FiniteMatrix&) -> Eigen::Index { return 1; },
                        [](const family::Mixture& mx) -> Eigen::Index {
                          Eigen::Index d = 0;
                          for (const auto& c : mx.components) d = std::max(d, c->required_dim());
                          return d;
                        },
                        [](const auto&) -> Eigen::Index { return 0; },
                    },
                    family_);
}

double KernelSpec::delta_psi() const {
  require(is_translation_invariant(), "delta_psi is only defined for translation invariant kernels");
  return delta_k();
}

std::string KernelSpec::describe() const {
  return std::visit(overloaded{
                        [](const family::Gaussian& g) { return "gaussian:gamma=" + format_num(g.gamma); },
                        [](const family::TranslationInvariant&) { return std::string("translation_invariant"); },
                        [](const family::ConvexRadial&) { return std::string("convex_radial"); },
                        [](const family::FiniteMatrix& fm) {
                          return "matrix:size=" + std::to_string(fm.gram.rows());
                        },
                        [](const family::Mixture& mx) {
                          return "mixture:" + std::to_string(mx.components.size());
                        },
                    },
                    family_);
}

KernelSpec gaussian_kernel(double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "gaussian lengthscale must be positive");
  return KernelSpec(family::Gaussian{gamma}, 1.0, 0.0, 1.0, true);
}

KernelSpec translation_invariant_kernel(DisplacementFn psi, double psi_sup, double psi_inf, bool characteristic) {
  require(static_cast<bool>(psi), "psi must be callable");
  require(psi_sup >= psi_inf, "psi_sup must be >= psi_inf");
  require(!characteristic || psi_sup > psi_inf, "a characteristic kernel cannot have constant psi");
  return KernelSpec(family::TranslationInvariant{std::move(psi), psi_sup, psi_inf}, psi_sup, psi_inf, psi_sup,
                    characteristic);
}

bool passes_secant_convexity(const RadialProfile& r, std::span<const double> grid, double tol) {
  std::vector<double> z(grid.begin(), grid.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  for (std::size_t i = 0; i + 2 < z.size(); ++i) {
    double a = z[i], b = z[i + 1], c = z[i + 2];
    double ra = r(a), rb = r(b), rc = r(c);
    double chord = ra + (rc - ra) * (b - a) / (c - a);
    if (rb > chord + tol * std::max({1.0, std::abs(ra), std::abs(rc)})) return false;
  }
  return true;
}

KernelSpec convex_radial_kernel(RadialProfile r, double r_sup, double r_inf, std::span<const double> convexity_grid,
                                bool characteristic) {
  require(static_cast<bool>(r), "radial profile must be callable");
  require(std::all_of(convexity_grid.begin(), convexity_grid.end(), [](double z) { return z <= 0.0; }),
          "convexity grid must lie in (-inf, 0]");
  require(passes_secant_convexity(r, convexity_grid), "radial profile failed the secant convexity check");
  double diag = r(0.0);
  return KernelSpec(family::ConvexRadial{std::move(r), r_sup, r_inf}, r_sup, r_inf, diag, characteristic);
}

KernelSpec finite_matrix_kernel(RowMatrix gram) {
  require(gram.rows() >= 1 && gram.rows() == gram.cols(), "kernel matrix must be square and nonempty");
  require(gram.allFinite(), "kernel matrix entries must be finite");
  require((gram - gram.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, gram.cwiseAbs().maxCoeff()),
          "kernel matrix must be symmetric");
  const Eigen::MatrixXd dense = gram;
  Eigen::LLT<Eigen::MatrixXd> llt(dense);
  require(llt.info() == Eigen::Success, "kernel matrix must be positive definite");
  double k_sup = gram.diagonal().maxCoeff();
  double diag_inf = gram.diagonal().minCoeff();
  double k_inf = gram.minCoeff();
  return KernelSpec(family::FiniteMatrix{std::move(gram)}, k_sup, k_inf, diag_inf, true);
}

KernelSpec mix(std::span<const KernelSpec> kernels, std::span<const double> weights) {
  require(!kernels.empty(), "mixture needs at least one kernel");
  require(kernels.size() == weights.size(), "mixture weights and kernels differ in length");
  family::Mixture mx;
  double k_sup = 0.0, k_inf = 0.0, diag_inf = 0.0;
  Eigen::Index dim = 0;
  bool characteristic = false;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const double a = weights[i];
    require(std::isfinite(a), "mixture weights must be finite");
    const KernelSpec& k = kernels[i];
    Eigen::Index d = k.required_dim();
    require(dim == 0 || d == 0 || d == dim, "mixture components must share a domain");
    dim = std::max(dim, d);
    if (a >= 0.0) {
      k_sup += a * k.k_sup();
      k_inf += a * k.k_inf();
      diag_inf += a * k.diag_inf();
    } else {
      k_sup += a * k.k_inf();
      k_inf += a * k.k_sup();
      diag_inf += a * k.k_sup();
    }
    if (a > 0.0 && k.characteristic()) characteristic = true;
    mx.components.push_back(std::make_shared<const KernelSpec>(k));
    mx.weights.push_back(a);
  }
  bool all_nonnegative = std::all_of(weights.begin(), weights.end(), [](double a) { return a >= 0.0; });
  return KernelSpec(std::move(mx), k_sup, k_inf, diag_inf, characteristic && all_nonnegative);
}

KernelSpec parse_kernel(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  auto value_of = [&](const std::string& key) {
    require(arg.rfind(key + "=", 0) == 0, "kernel '" + name + "' expects " + key + "=<value>");
    return arg.substr(key.size() + 1);
  };
  if (name == "gaussian") {
    std::string v = value_of("gamma");
    double gamma = 0.0;
    try {
      std::size_t used = 0;
      gamma = std::stod(v, &used);
      require(used == v.size(), "bad gamma");
    } catch (const std::logic_error&) {
      throw ValidationError("bad gaussian lengthscale '" + v + "'");
    }
    return gaussian_kernel(gamma);
  }
  if (name == "matrix") {
    std::string path = value_of("path");
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open kernel matrix " + path);
    return finite_matrix_kernel(parse_numeric_csv(in));
  }
  throw ValidationError("unknown kernel family '" + name + "'");
}

}  // namespace mmdb
