// mmdbound command-line front end.

#include "mmdbound/confbounds.hpp"
#include "mmdbound/errors.hpp"
#include "mmdbound/experiments.hpp"
#include "mmdbound/format.hpp"
#include "mmdbound/gof.hpp"
#include "mmdbound/kernels.hpp"
#include "mmdbound/robust.hpp"
#include "mmdbound/variance.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out = ".";
  int threads = 1;
};

void print_row(std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) std::cout << ',';
    std::cout << c;
    first = false;
  }
  std::cout << '\n';
}

double gaussian_gamma(const mmdb::KernelSpec& k) {
  const auto* g = std::get_if<mmdb::family::Gaussian>(&k.family());
  mmdb::require(g != nullptr, "this command needs a gaussian kernel");
  return g->gamma;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel mean embedding confidence bounds, goodness-of-fit tests and robust estimation"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Root RNG seed")->capture_default_str();
  app.add_option("--out", global.out, "Output directory")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads for experiments")->capture_default_str();

  // bound
  auto* bound = app.add_subcommand("bound", "Confidence radius for the empirical embedding");
  std::string bound_method;
  long bound_n = 0;
  double bound_delta = 0.05;
  std::optional<double> bound_v;
  std::string bound_sample;
  std::string bound_kernel = "gaussian:gamma=1";
  bound->add_option("--method", bound_method)->required()->check(CLI::IsMember({"mcdiarmid", "bernstein", "empber"}));
  bound->add_option("--n", bound_n, "Sample size (taken from --from-sample when given)");
  bound->add_option("--delta", bound_delta)->capture_default_str();
  bound->add_option("--v", bound_v, "Variance v (bernstein) or proxy vhat (empber)");
  bound->add_option("--from-sample", bound_sample, "CSV sample used to compute vhat and n");
  bound->add_option("--kernel", bound_kernel)->capture_default_str();

  // vhat
  auto* vhat = app.add_subcommand("vhat", "Empirical variance proxy of a sample");
  std::string vhat_kernel = "gaussian:gamma=1";
  std::string vhat_data;
  vhat->add_option("--kernel", vhat_kernel)->capture_default_str();
  vhat->add_option("--data", vhat_data)->required();

  // test
  auto* test = app.add_subcommand("test", "Goodness-of-fit test of the Gaussian location model");
  std::string test_kernel = "gaussian:gamma=1";
  double test_sigma = 1.0, test_alpha = 0.05;
  std::string test_method = "empber", test_data;
  test->add_option("--kernel", test_kernel)->capture_default_str();
  test->add_option("--sigma", test_sigma)->capture_default_str();
  test->add_option("--alpha", test_alpha)->capture_default_str();
  test->add_option("--method", test_method)
      ->capture_default_str()
      ->check(CLI::IsMember({"mcdia", "mcdiarmid", "empber", "emp_bernstein"}));
  test->add_option("--data", test_data)->required();
  mmdb::MinimizerOptions test_opts;
  test->add_option("--max-iterations", test_opts.max_iterations)->capture_default_str()->check(CLI::PositiveNumber);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Min-MMD location estimate");
  double est_gamma = 1.0, est_sigma = 1.0;
  std::string est_data;
  estimate->add_option("--gamma", est_gamma)->capture_default_str();
  estimate->add_option("--sigma", est_sigma)->capture_default_str();
  estimate->add_option("--data", est_data)->required();
  mmdb::MinimizerOptions est_opts;
  estimate->add_option("--max-iterations", est_opts.max_iterations)->capture_default_str()->check(CLI::PositiveNumber);

  // pbound
  auto* pbound = app.add_subcommand("pbound", "Parameter-space radius sqrt(G) or sqrt(H)");
  std::string pb_which;
  long pb_d = 2, pb_n = 500;
  double pb_sigma = 1.0, pb_lambda = 1.0, pb_xi = 0.0, pb_delta = 0.05;
  pbound->add_option("--which", pb_which)->required()->check(CLI::IsMember({"G", "H"}));
  pbound->add_option("--d", pb_d)->capture_default_str();
  pbound->add_option("--sigma", pb_sigma)->capture_default_str();
  pbound->add_option("--n", pb_n)->capture_default_str();
  pbound->add_option("--lambda", pb_lambda)->capture_default_str();
  pbound->add_option("--xi", pb_xi)->capture_default_str();
  pbound->add_option("--delta", pb_delta)->capture_default_str();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment; writes CSV, SVG and config JSON");
  std::string exp_kind, exp_config;
  std::optional<int> exp_replicates;
  std::vector<long> exp_n;
  experiment->add_option("kind", exp_kind)->required()->check(CLI::IsMember({"power", "bounds", "optgamma", "mse"}));
  experiment->add_option("--config", exp_config, "JSON config; flags below override it");
  experiment->add_option("--replicates", exp_replicates);
  experiment->add_option("--n", exp_n, "Sample sizes");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*bound) {
      const mmdb::KernelSpec k = mmdb::parse_kernel(bound_kernel);
      long n = bound_n;
      std::optional<double> v = bound_v;
      if (!bound_sample.empty()) {
        const mmdb::Sample x = mmdb::load_sample_csv(bound_sample);
        n = static_cast<long>(x.size());
        if (!v) v = mmdb::vhat_auto(k, x).vhat;
      }
      mmdb::require(n >= 1, "--n is required (or --from-sample)");
      mmdb::BoundReport r;
      if (bound_method == "mcdiarmid") {
        r = mmdb::mcdiarmid_bound(k.k_sup(), n, bound_delta);
      } else if (bound_method == "bernstein") {
        mmdb::require(v.has_value(), "bernstein needs --v or --from-sample");
        r = mmdb::bernstein_bound(*v, k.k_sup(), n, bound_delta);
      } else {
        mmdb::require(v.has_value(), "empber needs --v or --from-sample");
        r = k.delta_diag() == 0.0 ? mmdb::emp_bernstein_ti(*v, k.delta_k(), n, bound_delta)
                                  : mmdb::emp_bernstein_general(*v, k.delta_k(), k.delta_diag(), n, bound_delta);
      }
      if (r.diagnostic) std::cerr << "warning: " << *r.diagnostic << '\n';
      print_row({mmdb::to_string(r.method), std::to_string(r.n), mmdb::format_num(r.delta),
                 mmdb::format_num(r.leading_term), mmdb::format_num(r.higher_order_term), mmdb::format_num(r.radius)});
    } else if (*vhat) {
      const mmdb::KernelSpec k = mmdb::parse_kernel(vhat_kernel);
      const mmdb::VarianceProxy p = mmdb::vhat_auto(k, mmdb::load_sample_csv(vhat_data));
      print_row({mmdb::format_num(p.vhat), mmdb::to_string(p.form)});
    } else if (*test) {
      const double gamma = gaussian_gamma(mmdb::parse_kernel(test_kernel));
      const mmdb::Sample x = mmdb::load_sample_csv(test_data);
      const mmdb::TestResult r =
          mmdb::run_test(gamma, test_sigma, x, test_alpha, mmdb::parse_test_method(test_method), test_opts);
      print_row({mmdb::format_num(r.statistic), mmdb::format_num(r.threshold), r.reject ? "1" : "0"});
      if (!r.converged) {
        std::cerr << "error: optimizer did not converge\n";
        return kExitNonConvergence;
      }
    } else if (*estimate) {
      const mmdb::Sample x = mmdb::load_sample_csv(est_data);
      const mmdb::EstimateResult r = mmdb::min_mmd_estimate(est_gamma, est_sigma, x, est_opts);
      std::string row;
      for (Eigen::Index i = 0; i < r.theta_hat.size(); ++i) {
        if (i) row += ',';
        row += mmdb::format_num(r.theta_hat[i]);
      }
      std::cout << row << '\n';
      if (!r.converged) {
        std::cerr << "error: optimizer did not converge after " << r.iterations << " iterations\n";
        return kExitNonConvergence;
      }
    } else if (*pbound) {
      const double value = pb_which == "G" ? mmdb::param_bound_G(pb_d, pb_sigma, pb_n, pb_lambda, pb_xi, pb_delta)
                                           : mmdb::param_bound_H(pb_d, pb_sigma, pb_n, pb_lambda, pb_xi, pb_delta);
      std::cout << mmdb::format_num(value) << '\n';
    } else if (*experiment) {
      mmdb::ExperimentConfig cfg = exp_config.empty()
                                       ? mmdb::default_config(mmdb::parse_experiment_kind(exp_kind))
                                       : mmdb::config_from_json(mmdb::read_text(exp_config));
      cfg.experiment = mmdb::parse_experiment_kind(exp_kind);
      if (app.count("--seed") || exp_config.empty()) cfg.seed = global.seed;
      if (app.count("--out") || exp_config.empty()) cfg.output_dir = global.out;
      if (app.count("--threads") || exp_config.empty()) cfg.threads = global.threads;
      if (exp_replicates) cfg.replicates = *exp_replicates;
      if (!exp_n.empty()) cfg.n_list = exp_n;
      std::cout << mmdb::run_experiment(cfg).string() << '\n';
    }
  } catch (const mmdb::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const mmdb::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
