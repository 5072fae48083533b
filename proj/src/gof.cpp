#include "mmdbound/gof.hpp"

#include "mmdbound/confbounds.hpp"
#include "mmdbound/errors.hpp"
#include "mmdbound/kernels.hpp"
#include "mmdbound/variance.hpp"

#include <cmath>

namespace mmdb {

const char* to_string(TestMethod method) {
  return method == TestMethod::mcdiarmid ? "mcdia" : "empber";
}

TestMethod parse_test_method(const std::string& text) {
  if (text == "mcdia" || text == "mcdiarmid") return TestMethod::mcdiarmid;
  if (text == "empber" || text == "emp_bernstein") return TestMethod::emp_bernstein;
  throw ValidationError("unknown test method '" + text + "'");
}

Statistic test_statistic(double gamma, double sigma, const Sample& x, const MinimizerOptions& opts) {
  if (x.size() < 2) throw DegenerateSampleError("test statistic needs at least two observations");
  const LocationObjective objective(gamma, sigma, x);
  const EstimateResult fit = minimize_location_mmd(objective, opts);
  return {std::sqrt(fit.final_mmd2), fit.theta_hat, fit.converged, fit.iterations};
}

double test_threshold(double gamma, const Sample& x, double alpha, TestMethod method) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  if (method == TestMethod::mcdiarmid) return mcdiarmid_bound(1.0, x.size(), alpha).radius;
  const double vhat = vhat_ti(gaussian_kernel(gamma), x).vhat;
  return emp_bernstein_ti(vhat, 1.0, x.size(), alpha).radius;
}

TestResult run_test(double gamma, double sigma, const Sample& x, double alpha, TestMethod method,
                    const MinimizerOptions& opts) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  TestResult r;
  r.method = method;
  r.alpha = alpha;
  r.threshold = test_threshold(gamma, x, alpha, method);
  const Statistic s = test_statistic(gamma, sigma, x, opts);
  r.statistic = s.value;
  r.theta_star = s.theta_star;
  r.converged = s.converged;
  r.reject = r.statistic > r.threshold;
  return r;
}

}  // namespace mmdb
