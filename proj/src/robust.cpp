#include "mmdbound/robust.hpp"

#include "mmdbound/errors.hpp"

#include <cmath>
#include <limits>

namespace mmdb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_bound_args(Eigen::Index n, double xi, double delta) {
  require(n >= 1, "n must be positive");
  require(xi >= 0.0 && xi < 0.5, "contamination rate must lie in [0, 1/2)");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
}

// sqrt(-2 sigma^2 (2 + d lambda^2) log(1 - (1 + 2/(d lambda^2))^{d/2} r^2)),
// i.e. link_gaussian(sqrt(2) r) at gamma = lambda sigma sqrt(d).
double link_with_lambda(double radius, Eigen::Index d, double sigma, double lambda) {
  const double dl2 = static_cast<double>(d) * lambda * lambda;
  const double arg = std::pow(1.0 + 2.0 / dl2, 0.5 * static_cast<double>(d)) * radius * radius;
  if (!(arg < 1.0)) return kInf;
  return std::sqrt(-2.0 * sigma * sigma * (2.0 + dl2) * std::log1p(-arg));
}

}  // namespace

void HuberConfig::validate() const {
  require(theta0.size() >= 1, "theta0 must be nonempty");
  require(theta0.allFinite(), "theta0 must be finite");
  require(sigma > 0.0, "sigma must be positive");
  require(xi >= 0.0 && xi < 0.5, "contamination rate must lie in [0, 1/2)");
  std::visit(overloaded{
                 [&](const noise::GaussianShift& g) {
                   require(g.mu.size() == dim() && g.s > 0.0, "invalid gaussian noise law");
                 },
                 [&](const noise::PointMass& p) { require(p.x0.size() == dim(), "invalid point-mass noise law"); },
                 [&](const noise::Cauchy& c) {
                   require(c.loc.size() == dim() && c.scale > 0.0, "invalid cauchy noise law");
                 },
             },
             noise);
}

NoiseLaw default_noise(const Vector& theta0, double sigma) {
  const double shift = 10.0 * sigma / std::sqrt(static_cast<double>(theta0.size()));
  return noise::PointMass{(theta0.array() + shift).matrix()};
}

Sample sample_huber(const HuberConfig& cfg, Eigen::Index n, RngStream& rng) {
  cfg.validate();
  require(n >= 1, "n must be positive");
  const Eigen::Index d = cfg.dim();
  RowMatrix m(n, d);
  for (Eigen::Index t = 0; t < n; ++t) {
    const bool contaminated = cfg.xi > 0.0 && rng.bernoulli(cfg.xi);
    if (!contaminated) {
      for (Eigen::Index i = 0; i < d; ++i) m(t, i) = cfg.theta0[i] + cfg.sigma * rng.normal();
      continue;
    }
    std::visit(overloaded{
                   [&](const noise::GaussianShift& g) {
                     for (Eigen::Index i = 0; i < d; ++i) m(t, i) = g.mu[i] + g.s * rng.normal();
                   },
                   [&](const noise::PointMass& p) {
                     for (Eigen::Index i = 0; i < d; ++i) m(t, i) = p.x0[i];
                   },
                   [&](const noise::Cauchy& c) {
                     for (Eigen::Index i = 0; i < d; ++i) m(t, i) = c.loc[i] + c.scale * rng.cauchy();
                   },
               },
               cfg.noise);
  }
  return Sample(std::move(m));
}

Sample sample_huber(const HuberConfig& cfg, Eigen::Index n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return sample_huber(cfg, n, rng);
}

EstimateResult min_mmd_estimate(double gamma, double sigma, const Sample& x, const MinimizerOptions& opts) {
  const LocationObjective objective(gamma, sigma, x);
  return minimize_location_mmd(objective, opts);
}

double mmd_bound_huber(double xi, double v0, double psi_sup, Eigen::Index n, double delta) {
  check_bound_args(n, xi, delta);
  require(psi_sup > 0.0, "psi_sup must be positive");
  require(v0 >= 0.0, "v0 must be nonnegative");
  const double log_term = std::log(1.0 / delta);
  const double nd = static_cast<double>(n);
  const double root_psi = std::sqrt(psi_sup);
  const double v = (1.0 - 2.0 * xi) * v0 + 2.0 * xi * psi_sup;
  return 4.0 * xi * root_psi + 2.0 * std::sqrt(2.0 * v * log_term / nd) + 2.0 * (4.0 * root_psi / 3.0) * log_term / nd;
}

double link_gaussian(double h, double sigma, double gamma, Eigen::Index d) {
  require(h >= 0.0, "h must be nonnegative");
  require(sigma > 0.0 && gamma > 0.0, "sigma and gamma must be positive");
  require(d >= 1, "d must be positive");
  const double s2 = sigma * sigma, g2 = gamma * gamma;
  const double arg = 0.5 * h * h * std::pow(1.0 + 2.0 * s2 / g2, 0.5 * static_cast<double>(d));
  if (!(arg < 1.0)) return kInf;
  return std::sqrt(-2.0 * (2.0 * s2 + g2) * std::log1p(-arg));
}

double param_bound_G(Eigen::Index d, double sigma, Eigen::Index n, double lambda, double xi, double delta) {
  check_bound_args(n, xi, delta);
  require(lambda > 0.0 && sigma > 0.0 && d >= 1, "lambda, sigma and d must be positive");
  const double log_term = std::log(1.0 / delta);
  const double nd = static_cast<double>(n);
  const double v0 = -std::expm1(-1.0 / (lambda * lambda));
  const double radius = 4.0 * xi + std::sqrt(2.0 * ((1.0 - 2.0 * xi) * v0 + 2.0 * xi) * log_term / nd) +
                        (4.0 / 3.0) * log_term / nd;
  return link_with_lambda(radius, d, sigma, lambda);
}

double param_bound_H(Eigen::Index d, double sigma, Eigen::Index n, double lambda, double xi, double delta) {
  check_bound_args(n, xi, delta);
  require(lambda > 0.0 && sigma > 0.0 && d >= 1, "lambda, sigma and d must be positive");
  const double log_term = std::log(1.0 / delta);
  const double radius = 4.0 * xi + (1.0 + std::sqrt(2.0 * log_term)) / std::sqrt(static_cast<double>(n));
  return link_with_lambda(radius, d, sigma, lambda);
}

}  // namespace mmdb
