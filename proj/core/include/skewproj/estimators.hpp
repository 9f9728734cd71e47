#pragma once

#include <span>
#include <string>
#include <string_view>

namespace skewproj {

enum class Method { gm, gm_beta, hm, mle05, op };

std::string_view method_name(Method m);
// Accepts "gm", "gm-beta", "hm", "mle05", "op". Throws ConfigError otherwise.
Method parse_method(std::string_view name);

struct EstimateReport {
  double estimate = 0.0;
  Method method = Method::gm;
  std::size_t k = 0;
  double variance_factor = 0.0;  // V in Var ~ V F^2 / k
  double alpha = 0.0;
  bool degenerate = false;       // a zero sample forced the estimate to 0
};

struct OptimalPower {
  double alpha = 0.0;
  double lambda_star = 0.0;
  double g_min = 0.0;
};

namespace estimators {

inline constexpr double kLambdaCap = 50.0;

// Geometric mean estimator for beta = 1 samples. Requires k >= 2.
EstimateReport gm_estimate(std::span<const double> samples, double alpha);

// Geometric mean estimator for S(alpha, beta, F) samples, 0 <= beta <= 1.
EstimateReport gm_estimate_beta(std::span<const double> samples, double alpha, double beta);

// Exact Var(F_hat) / F^2 of gm_estimate_beta for k samples.
double gm_beta_variance(double alpha, double beta, std::size_t k);

// pi^2 / 12 (alpha^2 + 2 - 3 kappa^2).
double gm_variance_factor(double alpha);

// 2 Gamma^2(1 + alpha) / Gamma(1 + 2 alpha) - 1.
double hm_variance_factor(double alpha);

EstimateReport hm_estimate(std::span<const double> samples, double alpha, bool corrected);

EstimateReport mle05_estimate(std::span<const double> samples, bool corrected);

// g(lambda; alpha), the variance factor of the power estimator with exponent
// lambda * alpha. Continuous through lambda = 0.
double power_variance_factor(double lambda, double alpha);
// d g / d lambda.
double power_variance_factor_derivative(double lambda, double alpha);

// Minimizer of g over (-kLambdaCap, 1/2) for alpha < 1 and (-1/(2 alpha), 1/2)
// for alpha > 1. alpha = 2 maps to the arithmetic mean of squares (lambda = 1).
// Results are cached per alpha.
OptimalPower solve_optimal_lambda(double alpha);

EstimateReport op_estimate(std::span<const double> samples, double alpha,
                           const OptimalPower& power);

}  // namespace estimators
}  // namespace skewproj
