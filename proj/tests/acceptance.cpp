// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "mmdbound/confbounds.hpp"
#include "mmdbound/embeddings.hpp"
#include "mmdbound/experiments.hpp"
#include "mmdbound/gof.hpp"
#include "mmdbound/robust.hpp"
#include "mmdbound/variance.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace mmdb;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

std::span<const double> sp(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// 1. Plug-in values of every closed-form bound.
Outcome formula_fidelity() {
  const double inv_e = std::exp(-1.0);
  const double l = std::log(20.0);
  struct Case {
    const char* name;
    double got, want;
  };
  const double v0 = 1.0 - std::exp(-1.0);  // lambda = 1
  auto g_hand = [&](double xi, double n) {
    const double r = 4 * xi + std::sqrt(2 * ((1 - 2 * xi) * v0 + 2 * xi) * l / n) + 4.0 / 3.0 * l / n;
    return std::sqrt(-2.0 * 4.0 * std::log(1.0 - 2.0 * r * r));
  };
  auto h_hand = [&](double xi, double n) {
    const double r = 4 * xi + (1 + std::sqrt(2 * l)) / std::sqrt(n);
    return std::sqrt(-2.0 * 4.0 * std::log(1.0 - 2.0 * r * r));
  };
  const std::vector<Case> cases{
      {"mcdiarmid", mcdiarmid_bound(1.0, 100, inv_e).radius, 0.1 + std::sqrt(0.02)},
      {"bernstein", bernstein_bound(1.0, 1.0, 100, inv_e).radius, std::sqrt(0.02) + 4.0 / 300.0},
      {"bernstein_v0", bernstein_bound(0.0, 1.0, 100, inv_e).radius, 4.0 / 300.0},
      {"bernstein_maximal", bernstein_maximal_bound(1.0, 1.0, 100, inv_e), std::sqrt(200.0) + 4.0 / 3.0},
      {"emp_bernstein_ti", emp_bernstein_ti(1.0, 1.0, 100, 2 * inv_e).radius, std::sqrt(0.02) + 16.0 / 300.0},
      {"emp_bernstein_general", emp_bernstein_general(0.0, 1.0, 1.0, 100, 2 * inv_e).radius,
       std::sqrt(0.02) + (16.0 / 3.0 + 2.0 * std::numbers::sqrt2) / 100.0},
      {"emp_bernstein_general_ti", emp_bernstein_general(0.4, 0.7, 0.0, 60, 0.05).radius,
       emp_bernstein_ti(0.4, 0.7, 60, 0.05).radius},
      {"mmd_bound_huber_xi0", mmd_bound_huber(0.0, 0.3, 1.0, 250, 0.05),
       2.0 * bernstein_bound(0.3, 1.0, 250, 0.05).radius},
      {"mmd_bound_huber", mmd_bound_huber(0.1, 0.3, 1.0, 250, 0.05),
       0.4 + 2 * std::sqrt(2 * (0.8 * 0.3 + 0.2) * l / 250) + 2 * 4.0 / 3.0 * l / 250},
      {"param_bound_G", param_bound_G(2, 1.0, 500, 1.0, 0.0, 0.05), g_hand(0.0, 500)},
      {"param_bound_G_xi", param_bound_G(2, 1.0, 5000, 1.0, 0.01, 0.05), g_hand(0.01, 5000)},
      {"param_bound_H", param_bound_H(2, 1.0, 500, 1.0, 0.0, 0.05), h_hand(0.0, 500)},
      {"param_bound_H_xi", param_bound_H(2, 1.0, 5000, 1.0, 0.01, 0.05), h_hand(0.01, 5000)},
  };
  for (const auto& c : cases)
    if (!close_rel(c.got, c.want, 1e-10))
      return {false, std::string(c.name) + " got " + std::to_string(c.got) + " want " + std::to_string(c.want)};
  return {true, std::to_string(cases.size()) + " plug-in values within 1e-10"};
}

// 2. Unbiasedness of vhat.
Outcome unbiasedness() {
  const auto k = gaussian_kernel(1.0);
  double sum = 0.0;
  for (std::uint64_t r = 0; r < 2000; ++r) {
    RngStream rng(1002, r);
    sum += vhat_ti(k, oracle::random_sample(rng, 50, 2)).vhat;
  }
  const double mean = sum / 2000.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "mean vhat %.5f vs 2/3", mean);
  return {std::abs(mean - 2.0 / 3.0) <= 0.01, buf};
}

// 3. Coverage of the Bernstein and empirical Bernstein radii.
Outcome coverage() {
  const auto k = gaussian_kernel(1.0);
  const Vector zero = Vector::Zero(2);
  int bern = 0, emp = 0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    RngStream rng(1003, r);
    const auto x = oracle::random_sample(rng, 100, 2);
    const double dist = std::sqrt(mmd2_empirical_to_gaussian(1.0, 1.0, x, zero));
    bern += dist <= bernstein_bound(2.0 / 3.0, 1.0, 100, 0.05).radius;
    emp += dist <= emp_bernstein_ti(vhat_ti(k, x).vhat, 1.0, 100, 0.05).radius;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "bernstein %d/1000, empirical %d/1000", bern, emp);
  return {bern >= 950 && emp >= 950, buf};
}

// 4. Level of both tests under the null.
Outcome test_level() {
  int rejects[2] = {0, 0};
  for (std::uint64_t r = 0; r < 400; ++r) {
    RngStream rng(1004, r);
    const auto x = oracle::random_sample(rng, 100, 2);
    const auto stat = test_statistic(1.0, 1.0, x);
    rejects[0] += stat.value > test_threshold(1.0, x, 0.05, TestMethod::mcdiarmid);
    rejects[1] += stat.value > test_threshold(1.0, x, 0.05, TestMethod::emp_bernstein);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "rejection rate mcdia %.4f, empber %.4f", rejects[0] / 400.0, rejects[1] / 400.0);
  return {rejects[0] / 400.0 <= 0.08 && rejects[1] / 400.0 <= 0.08, buf};
}

// 5. Power ordering over sigma in [0, 0.7].
Outcome power_ordering() {
  auto cfg = default_config(ExperimentKind::power);
  cfg.n_list = {16, 40};
  cfg.sigma_grid.clear();
  for (int i = 0; i <= 35; ++i) cfg.sigma_grid.push_back(i / 50.0);
  cfg.replicates = 100;
  cfg.seed = 1005;
  const auto t = run_power_experiment(cfg);
  const auto rate = t.numeric("reject_rate");
  std::string detail;
  bool pass = true;
  for (long n : cfg.n_list) {
    double mean_mcd = 0.0, mean_emp = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i + 1 < t.rows.size(); i += 2) {
      if (t.rows[i][0] != std::to_string(n)) continue;
      const double mcd = rate[i], emp = rate[i + 1];
      if (t.rows[i][2] != "mcdia" || t.rows[i + 1][2] != "empber") return {false, "unexpected row order"};
      pass &= emp >= mcd - 0.02;
      mean_mcd += mcd;
      mean_emp += emp;
      ++cells;
    }
    mean_mcd /= cells;
    mean_emp /= cells;
    pass &= mean_emp >= mean_mcd - 0.02;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sn=%ld mean power empber %.3f mcdia %.3f", detail.empty() ? "" : "; ", n,
                  mean_emp, mean_mcd);
    detail += buf;
  }
  return {pass, detail};
}

// 6. sqrt(G) <= sqrt(H) on the default grid.
Outcome bound_dominance() {
  const auto cfg = default_config(ExperimentKind::bounds_vs_gamma);
  int checked = 0;
  for (double xi : cfg.xi_list)
    for (double lambda : cfg.lambda_grid) {
      const double g = param_bound_G(cfg.d, cfg.sigma, cfg.n_list.front(), lambda, xi, cfg.delta);
      const double h = param_bound_H(cfg.d, cfg.sigma, cfg.n_list.front(), lambda, xi, cfg.delta);
      if (!std::isfinite(g) || !std::isfinite(h)) continue;
      ++checked;
      if (!(g <= h)) return {false, "G > H at lambda " + std::to_string(lambda) + ", xi " + std::to_string(xi)};
    }
  return {checked > 0, std::to_string(checked) + " finite grid points, G <= H at all"};
}

// 7. Asymptotic ratio of the two parameter bounds.
Outcome asymptotic_ratio() {
  const Eigen::Index n = 100'000'000;
  const double h = std::pow(param_bound_H(2, 1.0, n, 1.0, 0.0, 0.05), 2);
  const double g = std::pow(param_bound_G(2, 1.0, n, 50.0, 0.0, 0.05), 2);
  char buf[96];
  std::snprintf(buf, sizeof buf, "H/G = %.4f vs 2e*0.9 = %.4f", h / g, 2 * std::numbers::e * 0.9);
  return {h / g >= 2 * std::numbers::e * 0.9, buf};
}

// 8. Bounded differences and weak self-bounding, 500 trials per suite.
Outcome self_bounding() {
  int violations = 0;
  auto best_in_box = [](const Sample& x, Eigen::Index t, const std::function<double(const Sample&)>& f, RngStream& rng) {
    const Vector lo = x.matrix().colwise().minCoeff().transpose();
    const Vector hi = x.matrix().colwise().maxCoeff().transpose();
    double best = f(x);
    Vector p(x.dim());
    for (int c = 0; c < 50; ++c) {
      for (Eigen::Index i = 0; i < x.dim(); ++i) p[i] = rng.uniform(lo[i], hi[i]);
      best = std::min(best, f(x.with_row(t, sp(p))));
    }
    return best;
  };

  // Translation invariant kernel (Gaussian, delta_psi = 1).
  const auto k = gaussian_kernel(1.0);
  auto vti = [&](const Sample& s) { return vhat_ti(k, s).vhat; };
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    RngStream rng(1008, trial);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(11));
    const auto x = oracle::random_sample(rng, n, 2, 0.3 + 2.0 * rng.uniform());
    const double nd = static_cast<double>(n);
    // Bounded differences against an arbitrary replacement.
    const auto t0 = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    Vector p(2);
    p << 4.0 * rng.normal(), 4.0 * rng.normal();
    violations += std::abs(vti(x) - vti(x.with_row(t0, sp(p)))) > 2.0 / nd + 1e-12;
    const double value = vti(x);
    double total = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
      const double gap = value - best_in_box(x, t, vti, rng);
      violations += gap > 2.0 / nd + 1e-12;
      total += gap * gap;
    }
    violations += total > 4.0 / nd * value + 1e-10;
    violations += value > k.delta_k() * nd / (nd - 1.0) + 1e-12;
  }

  // General kernel over a finite alphabet: the infimum is an exact minimum.
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    RngStream rng(2008, trial);
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(rng.below(4));
    RowMatrix a(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) a(i, j) = rng.normal();
    RowMatrix gram = a * a.transpose() / static_cast<double>(m);
    gram.diagonal().array() += 0.1;
    const auto km = finite_matrix_kernel(gram);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(9));
    RowMatrix data(n, 1);
    for (Eigen::Index t = 0; t < n; ++t) data(t, 0) = static_cast<double>(rng.below(static_cast<std::uint64_t>(m)));
    const Sample x(data);
    const double nd = static_cast<double>(n);
    const double value = vhat_general(km, x).vhat;
    const double c = km.delta_diag() + 2.0 * km.delta_k();
    double total = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
      double best = value;
      for (Eigen::Index s = 0; s < m; ++s)
        best = std::min(best, vhat_general(km, x.with_row(t, std::vector<double>{static_cast<double>(s)})).vhat);
      const double gap = value - best;
      violations += gap > c / nd + 1e-12;
      total += gap * gap;
    }
    violations += total > 2.0 * c / nd * (value + km.delta_diag()) + 1e-10;
  }

  // Trace of the covariance on the unit cube.
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    RngStream rng(3008, trial);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(11));
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.below(4));
    const auto x = oracle::uniform_sample(rng, n, d);
    auto f = [d](const Sample& s) { return trace_cov_hat(s) / static_cast<double>(d); };
    const double value = f(x);
    double total = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
      double best = best_in_box(x, t, f, rng);
      const Vector others =
          (x.matrix().colwise().sum().transpose() - x.matrix().row(t).transpose()) / static_cast<double>(n - 1);
      best = std::min(best, f(x.with_row(t, sp(others))));
      const double gap = value - best;
      violations += gap > 1.0;
      total += gap * gap;
    }
    violations += total > static_cast<double>(n) / static_cast<double>(n - 1) * value + 1e-12;
  }
  return {violations == 0, std::to_string(violations) + " violations over 3 x 500 trials"};
}

// 9. Independent recomputation of the Gram sums and both variance forms.
Outcome oracle_equivalence() {
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    RngStream rng(1009, trial);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(9));
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.below(4));
    const auto k = gaussian_kernel(0.3 + 2.0 * rng.uniform());
    const auto x = oracle::random_sample(rng, n, d);
    const auto g = gram_stats(k, x);
    const auto full = oracle::gram(k, x);
    worst = std::max({worst, std::abs(g.full_sum - full.sum()), std::abs(g.diag_sum - full.trace()),
                      std::abs(g.offdiag_sum - (full.sum() - full.trace())),
                      std::abs(vhat_general(k, x).vhat - vhat_ti(k, x).vhat),
                      std::abs(vhat_general(k, x).vhat - oracle::vhat_double_loop(k, x))});
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max abs difference %.3g over 100 samples", worst);
  return {worst <= 1e-12, buf};
}

// 10. Gradient check, consistency and contaminated coverage of the estimator.
Outcome estimator_sanity() {
  double worst_fd = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(1010, seed);
    const auto x = oracle::random_sample(rng, 40, 2, 1.5);
    const LocationObjective obj(0.5 + 2.0 * rng.uniform(), 0.3 + rng.uniform(), x);
    Vector theta(2);
    theta << rng.normal(), rng.normal();
    const Vector g = obj.gradient(theta);
    Vector fd(2);
    for (Eigen::Index i = 0; i < 2; ++i) {
      Vector e = Vector::Zero(2);
      e[i] = 1e-5;
      fd[i] = (obj.value(theta + e) - obj.value(theta - e)) / 2e-5;
    }
    worst_fd = std::max(worst_fd, (g - fd).norm() / g.norm());
  }
  const Vector theta0 = Vector::Zero(2);
  double worst_err = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HuberConfig clean{theta0, 1.0, 0.0, default_noise(theta0, 1.0)};
    const auto est = min_mmd_estimate(1.0, 1.0, sample_huber(clean, 5000, 1010 + seed));
    worst_err = std::max(worst_err, est.converged ? (est.theta_hat - theta0).norm() : 1e9);
  }
  const double radius = param_bound_G(2, 1.0, 500, 1.0, 0.05, 0.05);
  const HuberConfig dirty{theta0, 1.0, 0.05, default_noise(theta0, 1.0)};
  int covered = 0;
  for (std::uint64_t r = 0; r < 200; ++r) {
    RngStream rng(2010, r);
    const auto est = min_mmd_estimate(std::numbers::sqrt2, 1.0, sample_huber(dirty, 500, rng));
    covered += (est.theta_hat - theta0).norm() <= radius;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "fd rel err %.2g, max |theta_hat| %.4f at n=5000, coverage %d/200 of sqrt(G)=%.4f",
                worst_fd, worst_err, covered, radius);
  return {worst_fd <= 1e-5 && worst_err <= 0.1 && covered >= 190, buf};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"formula fidelity", formula_fidelity},     {"unbiasedness of vhat", unbiasedness},
      {"coverage", coverage},                     {"test level", test_level},
      {"power ordering", power_ordering},         {"bound dominance", bound_dominance},
      {"asymptotic ratio", asymptotic_ratio},     {"self-bounding suites", self_bounding},
      {"oracle equivalence", oracle_equivalence}, {"estimator sanity", estimator_sanity},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] AC%d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
