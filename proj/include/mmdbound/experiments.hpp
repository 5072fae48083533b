#pragma once

#include "mmdbound/table.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace mmdb {

enum class ExperimentKind { power, bounds_vs_gamma, optimal_gamma, mse };

const char* to_string(ExperimentKind kind);
/// Accepts the CLI names power, bounds, optgamma, mse.
ExperimentKind parse_experiment_kind(const std::string& text);

/// Everything an experiment depends on. Each experiment is a pure function
/// of this struct (thread count excepted, which never changes the output).
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::power;
  std::uint64_t seed = 0;
  int replicates = 100;
  std::vector<long> n_list;
  std::vector<double> sigma_grid;   ///< data scales (power)
  std::vector<double> lambda_grid;  ///< gamma = lambda sigma sqrt(d) (bounds, optgamma, mse)
  std::vector<double> xi_list;
  double alpha = 0.05;
  double delta = 0.05;
  long d = 2;
  double sigma = 1.0;  ///< model scale
  double gamma = 1.0;  ///< kernel lengthscale of the power experiment
  std::string output_dir = ".";
  int threads = 1;

  void validate() const;
};

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

ExperimentConfig default_config(ExperimentKind kind);

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

/// Rejection frequency of both tests; columns n,sigma,method,reject_rate.
Table run_power_experiment(const ExperimentConfig& cfg);
/// sqrt(G), sqrt(H) over lambda (bounds_vs_gamma) or per-n minimum over the
/// lambda grid (optimal_gamma); columns lambda_or_n,xi,boundG,boundH.
Table run_bounds_experiment(const ExperimentConfig& cfg);
/// Columns gamma,boundG,boundH,empirical_mse,nonconverged.
Table run_mse_experiment(const ExperimentConfig& cfg);

Table run_experiment_table(const ExperimentConfig& cfg);

/// Writes <name>.csv, <name>.svg and <name>.json into cfg.output_dir.
/// Returns the CSV path.
std::filesystem::path run_experiment(const ExperimentConfig& cfg);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace mmdb
