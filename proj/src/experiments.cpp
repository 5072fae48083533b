#include "mmdbound/experiments.hpp"

#include "mmdbound/errors.hpp"
#include "mmdbound/format.hpp"
#include "mmdbound/gof.hpp"
#include "mmdbound/plot.hpp"
#include "mmdbound/rng.hpp"
#include "mmdbound/robust.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace mmdb {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::power: return "power";
    case ExperimentKind::bounds_vs_gamma: return "bounds";
    case ExperimentKind::optimal_gamma: return "optgamma";
    case ExperimentKind::mse: return "mse";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "power") return ExperimentKind::power;
  if (text == "bounds" || text == "bounds_vs_gamma") return ExperimentKind::bounds_vs_gamma;
  if (text == "optgamma" || text == "optimal_gamma") return ExperimentKind::optimal_gamma;
  if (text == "mse") return ExperimentKind::mse;
  throw ValidationError("unknown experiment '" + text + "'");
}

void ExperimentConfig::validate() const {
  require(replicates >= 1, "replicates must be at least 1");
  require(!n_list.empty(), "n_list must be nonempty");
  require(std::all_of(n_list.begin(), n_list.end(), [](long n) { return n >= 2; }), "sample sizes must be >= 2");
  require(d >= 1, "d must be positive");
  require(sigma > 0.0 && gamma > 0.0, "sigma and gamma must be positive");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(threads >= 1, "threads must be positive");
  if (experiment == ExperimentKind::power) {
    require(!sigma_grid.empty(), "sigma grid must be nonempty");
    require(std::all_of(sigma_grid.begin(), sigma_grid.end(), [](double s) { return s >= 0.0; }),
            "data scales must be nonnegative");
  } else {
    require(!lambda_grid.empty(), "lambda grid must be nonempty");
    require(std::all_of(lambda_grid.begin(), lambda_grid.end(), [](double l) { return l > 0.0; }),
            "lambda values must be positive");
    require(!xi_list.empty(), "xi list must be nonempty");
    require(std::all_of(xi_list.begin(), xi_list.end(), [](double x) { return x >= 0.0 && x < 0.5; }),
            "xi values must lie in [0, 1/2)");
  }
}

std::vector<double> log_grid(double lo, double hi, int n) {
  require(lo > 0.0 && hi >= lo && n >= 1, "invalid log grid");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::power:
      c.replicates = 100;
      c.n_list = {16, 40, 100, 250};
      for (int i = 0; i <= 50; ++i) c.sigma_grid.push_back(i / 50.0);
      break;
    case ExperimentKind::bounds_vs_gamma:
      c.replicates = 1;
      c.n_list = {500};
      c.lambda_grid = log_grid(0.25, 8.0, 32);
      c.xi_list = {0.0, 0.01, 0.05};
      break;
    case ExperimentKind::optimal_gamma:
      c.replicates = 1;
      c.n_list = {20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
      c.lambda_grid = log_grid(0.25, 8.0, 32);
      c.xi_list = {0.0, 0.01, 0.05};
      break;
    case ExperimentKind::mse:
      c.replicates = 50;
      c.n_list = {500};
      c.lambda_grid = log_grid(0.25, 8.0, 32);
      c.xi_list = {0.0};
      break;
  }
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["seed"] = c.seed;
  j["replicates"] = c.replicates;
  j["n_list"] = c.n_list;
  j["sigma_grid"] = c.sigma_grid;
  j["lambda_grid"] = c.lambda_grid;
  j["xi_list"] = c.xi_list;
  j["alpha"] = c.alpha;
  j["delta"] = c.delta;
  j["d"] = c.d;
  j["sigma"] = c.sigma;
  j["gamma"] = c.gamma;
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  return j.dump(2) + '\n';
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c = default_config(parse_experiment_kind(j.at("experiment").get<std::string>()));
  try {
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("replicates")) c.replicates = j["replicates"].get<int>();
    if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<long>>();
    if (j.contains("sigma_grid")) c.sigma_grid = j["sigma_grid"].get<std::vector<double>>();
    if (j.contains("lambda_grid")) c.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
    if (j.contains("xi_list")) c.xi_list = j["xi_list"].get<std::vector<double>>();
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("delta")) c.delta = j["delta"].get<double>();
    if (j.contains("d")) c.d = j["d"].get<long>();
    if (j.contains("sigma")) c.sigma = j["sigma"].get<double>();
    if (j.contains("gamma")) c.gamma = j["gamma"].get<double>();
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad config field: ") + e.what());
  }
  return c;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

namespace {

std::string cell(double x) { return std::isinf(x) ? std::string() : format_num(x); }

}  // namespace

Table run_power_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n_sigma = cfg.sigma_grid.size();
  const std::size_t cells = cfg.n_list.size() * n_sigma;
  // Per cell: rejection counts for {mcdia, empber}.
  std::vector<std::array<int, 2>> rejections(cells, {0, 0});

  parallel_for(cells, cfg.threads, [&](std::size_t c) {
    const long n = cfg.n_list[c / n_sigma];
    const double scale = cfg.sigma_grid[c % n_sigma];
    for (int r = 0; r < cfg.replicates; ++r) {
      RngStream rng(cfg.seed, cell_stream(c, static_cast<std::uint64_t>(r)));
      RowMatrix m(n, cfg.d);
      for (long t = 0; t < n; ++t)
        for (long i = 0; i < cfg.d; ++i) m(t, i) = scale * rng.normal();
      const Sample x(std::move(m));
      const Statistic stat = test_statistic(cfg.gamma, cfg.sigma, x);
      const double thr_mcd = test_threshold(cfg.gamma, x, cfg.alpha, TestMethod::mcdiarmid);
      const double thr_emp = test_threshold(cfg.gamma, x, cfg.alpha, TestMethod::emp_bernstein);
      rejections[c][0] += stat.value > thr_mcd;
      rejections[c][1] += stat.value > thr_emp;
    }
  });

  Table t;
  t.header = {"n", "sigma", "method", "reject_rate"};
  for (std::size_t c = 0; c < cells; ++c) {
    const std::string n = std::to_string(cfg.n_list[c / n_sigma]);
    const std::string s = format_num(cfg.sigma_grid[c % n_sigma]);
    for (int m = 0; m < 2; ++m) {
      const double rate = static_cast<double>(rejections[c][static_cast<std::size_t>(m)]) / cfg.replicates;
      t.add_row({n, s, m == 0 ? "mcdia" : "empber", format_num(rate)});
    }
  }
  return t;
}

Table run_bounds_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Table t;
  t.header = {"lambda_or_n", "xi", "boundG", "boundH"};
  if (cfg.experiment == ExperimentKind::optimal_gamma) {
    for (double xi : cfg.xi_list)
      for (long n : cfg.n_list) {
        double best_g = std::numeric_limits<double>::infinity();
        double best_h = best_g;
        for (double lambda : cfg.lambda_grid) {
          best_g = std::min(best_g, param_bound_G(cfg.d, cfg.sigma, n, lambda, xi, cfg.delta));
          best_h = std::min(best_h, param_bound_H(cfg.d, cfg.sigma, n, lambda, xi, cfg.delta));
        }
        t.add_row({std::to_string(n), format_num(xi), cell(best_g), cell(best_h)});
      }
    return t;
  }
  const long n = cfg.n_list.front();
  for (double xi : cfg.xi_list)
    for (double lambda : cfg.lambda_grid)
      t.add_row({format_num(lambda), format_num(xi), cell(param_bound_G(cfg.d, cfg.sigma, n, lambda, xi, cfg.delta)),
                 cell(param_bound_H(cfg.d, cfg.sigma, n, lambda, xi, cfg.delta))});
  return t;
}

Table run_mse_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const long n = cfg.n_list.front();
  const double xi = cfg.xi_list.front();
  const std::size_t cells = cfg.lambda_grid.size();
  std::vector<double> mse(cells, 0.0);
  std::vector<int> nonconverged(cells, 0);
  HuberConfig hc;
  hc.theta0 = Vector::Zero(cfg.d);
  hc.sigma = cfg.sigma;
  hc.xi = xi;
  hc.noise = default_noise(hc.theta0, cfg.sigma);

  parallel_for(cells, cfg.threads, [&](std::size_t c) {
    const double gamma = cfg.lambda_grid[c] * cfg.sigma * std::sqrt(static_cast<double>(cfg.d));
    double acc = 0.0;
    for (int r = 0; r < cfg.replicates; ++r) {
      // Replicate r uses the same data at every gamma.
      RngStream rng(cfg.seed, cell_stream(0, static_cast<std::uint64_t>(r)));
      const Sample x = sample_huber(hc, n, rng);
      const EstimateResult fit = min_mmd_estimate(gamma, cfg.sigma, x);
      acc += (fit.theta_hat - hc.theta0).squaredNorm();
      nonconverged[c] += !fit.converged;
    }
    mse[c] = acc / cfg.replicates;
  });

  Table t;
  t.header = {"gamma", "boundG", "boundH", "empirical_mse", "nonconverged"};
  for (std::size_t c = 0; c < cells; ++c) {
    const double lambda = cfg.lambda_grid[c];
    const double gamma = lambda * cfg.sigma * std::sqrt(static_cast<double>(cfg.d));
    t.add_row({format_num(gamma), cell(param_bound_G(cfg.d, cfg.sigma, n, lambda, xi, cfg.delta)),
               cell(param_bound_H(cfg.d, cfg.sigma, n, lambda, xi, cfg.delta)), format_num(mse[c]),
               std::to_string(nonconverged[c])});
  }
  return t;
}

Table run_experiment_table(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::power: return run_power_experiment(cfg);
    case ExperimentKind::bounds_vs_gamma:
    case ExperimentKind::optimal_gamma: return run_bounds_experiment(cfg);
    case ExperimentKind::mse: return run_mse_experiment(cfg);
  }
  throw ValidationError("unknown experiment");
}

std::filesystem::path run_experiment(const ExperimentConfig& cfg) {
  const Table table = run_experiment_table(cfg);
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  const std::string name = to_string(cfg.experiment);
  const auto csv = dir / (name + ".csv");
  write_text(csv, table.to_csv());
  emit_plot(table, plot_kind_for(cfg.experiment), dir / (name + ".svg"));
  write_text(dir / (name + ".json"), config_to_json(cfg));
  return csv;
}

}  // namespace mmdb
