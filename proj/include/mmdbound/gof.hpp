#pragma once

#include "mmdbound/location_model.hpp"
#include "mmdbound/sample.hpp"

namespace mmdb {

enum class TestMethod { mcdiarmid, emp_bernstein };

const char* to_string(TestMethod method);
/// Accepts "mcdia"/"mcdiarmid" and "empber"/"emp_bernstein".
TestMethod parse_test_method(const std::string& text);

/// inf over theta of |mu_hat - mu_{N(theta, sigma^2 I)}| and its minimiser.
struct Statistic {
  double value = 0.0;
  Vector theta_star;
  bool converged = false;
  int iterations = 0;
};

/// Goodness-of-fit test of the Gaussian location model with known sigma.
struct TestResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool reject = false;
  TestMethod method = TestMethod::mcdiarmid;
  double alpha = 0.0;
  Vector theta_star;
  bool converged = false;
};

Statistic test_statistic(double gamma, double sigma, const Sample& x, const MinimizerOptions& opts = {});

/// Rejection threshold B(n, alpha) for the Gaussian kernel (k_sup = delta_psi = 1).
double test_threshold(double gamma, const Sample& x, double alpha, TestMethod method);

/// Rejects when the statistic exceeds the threshold; level alpha under the null.
TestResult run_test(double gamma, double sigma, const Sample& x, double alpha, TestMethod method,
                    const MinimizerOptions& opts = {});

}  // namespace mmdb
