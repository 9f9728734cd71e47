#include "skewproj/estimators.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "skewproj/error.hpp"
#include "skewproj/numerics.hpp"
#include "skewproj/stable.hpp"

namespace skewproj {

using numerics::kPi;

std::string_view method_name(Method m) {
  switch (m) {
    case Method::gm: return "gm";
    case Method::gm_beta: return "gm-beta";
    case Method::hm: return "hm";
    case Method::mle05: return "mle05";
    case Method::op: return "op";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "gm") return Method::gm;
  if (name == "gm-beta" || name == "gm_beta") return Method::gm_beta;
  if (name == "hm") return Method::hm;
  if (name == "mle05" || name == "mle") return Method::mle05;
  if (name == "op") return Method::op;
  throw ConfigError("unknown estimator method '" + std::string(name) + "'");
}

namespace estimators {
namespace {

constexpr double kZeroWindow = 1e-6;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    throw DomainError("estimator: alpha must lie in (0, 2] \\ {1}");
  }
}

void check_k(std::span<const double> samples, std::size_t min_k) {
  if (samples.size() < min_k) {
    throw DomainError("estimator: requires at least " + std::to_string(min_k) + " samples");
  }
}

// log of (2/pi) sin(pi x / 2) Gamma(x) Gamma(1 - x / alpha') style brackets:
// returns log[ (2/pi) sin(pi a / 2) Gamma(a) Gamma(1 - b) ] for a > 0, b < 1.
double log_sin_gamma_bracket(double a, double b) {
  return numerics::log_sinc(0.5 * kPi * a) + numerics::lgamma1p(a) + numerics::lgamma1p(-b);
}

// log of the Eq-7-style denominator at beta = 1 for k samples.
double log_gm_denominator(double alpha, std::size_t k) {
  const double kd = static_cast<double>(k);
  const double kap = stable::kappa(alpha);
  return kd * numerics::log_cos(0.5 * kPi * kap / kd) - numerics::log_cos(0.5 * kPi * kap) +
         kd * log_sin_gamma_bracket(alpha / kd, 1.0 / kd);
}

struct LogProduct {
  double log_sum = 0.0;
  bool has_zero = false;
};

LogProduct log_abs_sum(std::span<const double> samples) {
  LogProduct r;
  numerics::CompensatedSum s;
  for (double x : samples) {
    if (!std::isfinite(x)) throw InputError("estimator: non-finite sample");
    if (x == 0.0) {
      r.has_zero = true;
      continue;
    }
    s.add(std::log(std::fabs(x)));
  }
  r.log_sum = s.value();
  return r;
}

// log M(lambda) where M = E|x|^(2 lambda alpha) / (E|x|^(lambda alpha))^2.
double log_power_ratio(double lambda, double alpha) {
  if (alpha < 1.0) {
    return numerics::lgamma1p(-2.0 * lambda) + 2.0 * numerics::lgamma1p(-lambda * alpha) -
           numerics::lgamma1p(-2.0 * lambda * alpha) - 2.0 * numerics::lgamma1p(-lambda);
  }
  const double kap = stable::kappa(alpha);
  auto log_m = [&](double l) {
    return numerics::log_cos(0.5 * kPi * kap * l) + numerics::lgamma1p(-l) +
           numerics::lgamma1p(l * alpha) + numerics::log_sinc(0.5 * kPi * l * alpha);
  };
  return log_m(2.0 * lambda) - 2.0 * log_m(lambda);
}

double log_power_ratio_derivative(double lambda, double alpha) {
  using numerics::digamma;
  if (alpha < 1.0) {
    return -2.0 * digamma(1.0 - 2.0 * lambda) - 2.0 * alpha * digamma(1.0 - lambda * alpha) +
           2.0 * alpha * digamma(1.0 - 2.0 * lambda * alpha) + 2.0 * digamma(1.0 - lambda);
  }
  const double kap = stable::kappa(alpha);
  auto dlog_m = [&](double l) {
    return -0.5 * kPi * kap * std::tan(0.5 * kPi * kap * l) - digamma(1.0 - l) +
           alpha * digamma(1.0 + l * alpha) +
           0.5 * kPi * alpha * numerics::log_sinc_derivative(0.5 * kPi * l * alpha);
  };
  return 2.0 * dlog_m(2.0 * lambda) - 2.0 * dlog_m(lambda);
}

void check_lambda(double lambda, double alpha) {
  check_alpha(alpha);
  if (alpha == 2.0) throw DomainError("power estimator: alpha = 2 is special-cased");
  const bool ok = alpha < 1.0 ? (lambda < 0.5)
                              : (lambda > -0.5 / alpha && lambda < 0.5);
  if (!ok) {
    throw DomainError("power estimator: lambda " + std::to_string(lambda) +
                      " outside the variance-existence range");
  }
}

double g_direct(double lambda, double alpha) {
  return std::expm1(log_power_ratio(lambda, alpha)) / (lambda * lambda);
}

double g_prime_direct(double lambda, double alpha) {
  const double log_m = log_power_ratio(lambda, alpha);
  const double m = std::exp(log_m);
  const double dlog_m = log_power_ratio_derivative(lambda, alpha);
  return (m * dlog_m * lambda - 2.0 * std::expm1(log_m)) / (lambda * lambda * lambda);
}

OptimalPower compute_optimal_lambda(double alpha) {
  const double lo = alpha < 1.0 ? -kLambdaCap : -0.5 / alpha + 1e-9;
  const double hi = 0.5 - 1e-9;
  auto g = [alpha](double l) { return power_variance_factor(l, alpha); };

  constexpr int n_grid = 1000;
  std::vector<double> xs(n_grid + 1);
  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i <= n_grid; ++i) {
    xs[i] = lo + (hi - lo) * i / n_grid;
    const double v = g(xs[i]);
    if (i == 0 || v < best_val) {
      best = i;
      best_val = v;
    }
  }
  if (best == 0 && alpha < 1.0) return {alpha, lo, best_val};
  const double a = xs[best > 0 ? best - 1 : 0];
  const double b = xs[best < n_grid ? best + 1 : n_grid];
  numerics::Minimum m = numerics::minimize_1d(g, a, b);

  // The minimizer is only accurate to sqrt(machine epsilon) in lambda; polish
  // it as a root of g' when the derivative changes sign around it.
  auto gp = [alpha](double l) { return power_variance_factor_derivative(l, alpha); };
  const double step = (b - a) / 4.0;
  const double pa = std::max(a, m.argmin - step);
  const double pb = std::min(b, m.argmin + step);
  try {
    const double root = numerics::find_root(gp, {pa, pb, 1e-14});
    const double v = g(root);
    if (v <= m.value + 1e-12) m = {root, v};
  } catch (const NumericError&) {
  }
  return {alpha, m.argmin, m.value};
}

}  // namespace

double gm_variance_factor(double alpha) {
  check_alpha(alpha);
  const double kap = stable::kappa(alpha);
  return kPi * kPi / 12.0 * (alpha * alpha + 2.0 - 3.0 * kap * kap);
}

double hm_variance_factor(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hm: requires 0 < alpha < 1");
  return std::expm1(std::log(2.0) + 2.0 * numerics::lgamma1p(alpha) -
                    numerics::lgamma1p(2.0 * alpha));
}

EstimateReport gm_estimate(std::span<const double> samples, double alpha) {
  check_alpha(alpha);
  check_k(samples, 2);
  EstimateReport r;
  r.method = Method::gm;
  r.k = samples.size();
  r.alpha = alpha;
  r.variance_factor = gm_variance_factor(alpha);
  const LogProduct lp = log_abs_sum(samples);
  if (lp.has_zero) {
    r.degenerate = true;
    return r;
  }
  const double kd = static_cast<double>(samples.size());
  r.estimate = std::exp(alpha / kd * lp.log_sum - log_gm_denominator(alpha, samples.size()));
  return r;
}

EstimateReport gm_estimate_beta(std::span<const double> samples, double alpha, double beta) {
  check_alpha(alpha);
  check_k(samples, 2);
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("gm_beta: beta must lie in [0, 1]");
  EstimateReport r;
  r.method = Method::gm_beta;
  r.k = samples.size();
  r.alpha = alpha;
  r.variance_factor =
      samples.size() > 2 ? static_cast<double>(samples.size()) * gm_beta_variance(alpha, beta, samples.size())
                         : std::numeric_limits<double>::infinity();
  const LogProduct lp = log_abs_sum(samples);
  if (lp.has_zero) {
    r.degenerate = true;
    return r;
  }
  const double kd = static_cast<double>(samples.size());
  const double bt = beta * std::tan(0.5 * kPi * alpha);
  const double theta = alpha == 2.0 ? 0.0 : std::atan(bt);
  const double log_den = kd * numerics::log_cos(theta / kd) + 0.5 * std::log1p(bt * bt) +
                         kd * log_sin_gamma_bracket(alpha / kd, 1.0 / kd);
  r.estimate = std::exp(alpha / kd * lp.log_sum - log_den);
  return r;
}

double gm_beta_variance(double alpha, double beta, std::size_t k) {
  check_alpha(alpha);
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("gm_beta: beta must lie in [0, 1]");
  if (k <= 2) throw DomainError("gm_beta_variance: requires k > 2");
  const double kd = static_cast<double>(k);
  const double theta = alpha == 2.0 ? 0.0 : std::atan(beta * std::tan(0.5 * kPi * alpha));
  const double log_ratio =
      kd * (numerics::log_cos(2.0 * theta / kd) - 2.0 * numerics::log_cos(theta / kd)) +
      kd * (log_sin_gamma_bracket(2.0 * alpha / kd, 2.0 / kd) -
            2.0 * log_sin_gamma_bracket(alpha / kd, 1.0 / kd));
  return std::expm1(log_ratio);
}

EstimateReport hm_estimate(std::span<const double> samples, double alpha, bool corrected) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hm: requires 0 < alpha < 1");
  check_k(samples, 1);
  const double v = hm_variance_factor(alpha);
  numerics::CompensatedSum s;
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("hm: samples must be positive (non-negative signal required)");
    }
    s.add(std::pow(x, -alpha));
  }
  const double kd = static_cast<double>(samples.size());
  double est = kd * std::cos(0.5 * kPi * alpha) / numerics::gamma(1.0 + alpha) / s.value();
  if (corrected) est *= 1.0 - v / kd;
  EstimateReport r;
  r.estimate = est;
  r.method = Method::hm;
  r.k = samples.size();
  r.alpha = alpha;
  r.variance_factor = v;
  return r;
}

EstimateReport mle05_estimate(std::span<const double> samples, bool corrected) {
  check_k(samples, 1);
  numerics::CompensatedSum s;
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("mle05: samples must be positive (non-negative signal required)");
    }
    s.add(1.0 / x);
  }
  const double kd = static_cast<double>(samples.size());
  double est = std::sqrt(kd / s.value());
  if (corrected) est *= 1.0 - 0.75 / kd;
  EstimateReport r;
  r.estimate = est;
  r.method = Method::mle05;
  r.k = samples.size();
  r.alpha = 0.5;
  r.variance_factor = 0.5;
  return r;
}

double power_variance_factor(double lambda, double alpha) {
  check_lambda(lambda, alpha);
  if (std::fabs(lambda) < kZeroWindow) {
    const double gm = g_direct(-kZeroWindow, alpha);
    const double gp = g_direct(kZeroWindow, alpha);
    return gm + (gp - gm) * (lambda + kZeroWindow) / (2.0 * kZeroWindow);
  }
  return g_direct(lambda, alpha);
}

double power_variance_factor_derivative(double lambda, double alpha) {
  check_lambda(lambda, alpha);
  if (std::fabs(lambda) < kZeroWindow) {
    return (g_direct(kZeroWindow, alpha) - g_direct(-kZeroWindow, alpha)) / (2.0 * kZeroWindow);
  }
  return g_prime_direct(lambda, alpha);
}

OptimalPower solve_optimal_lambda(double alpha) {
  check_alpha(alpha);
  if (alpha == 2.0) return {2.0, 1.0, 2.0};
  static std::shared_mutex mutex;
  static std::map<double, OptimalPower> cache;
  {
    std::shared_lock lock(mutex);
    const auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
  }
  const OptimalPower p = compute_optimal_lambda(alpha);
  std::unique_lock lock(mutex);
  cache.emplace(alpha, p);
  return p;
}

EstimateReport op_estimate(std::span<const double> samples, double alpha,
                           const OptimalPower& power) {
  check_alpha(alpha);
  check_k(samples, 1);
  if (power.alpha != alpha) throw ConfigError("op: optimal power was solved for another alpha");
  EstimateReport r;
  r.method = Method::op;
  r.k = samples.size();
  r.alpha = alpha;
  r.variance_factor = power.g_min;
  const double kd = static_cast<double>(samples.size());
  numerics::CompensatedSum s;
  if (alpha == 2.0) {
    for (double x : samples) s.add(x * x);
    r.estimate = s.value() / (2.0 * kd);
    return r;
  }
  const double lambda = power.lambda_star;
  check_lambda(lambda, alpha);
  const double p = lambda * alpha;
  for (double x : samples) {
    if (!std::isfinite(x)) throw InputError("op: non-finite sample");
    if (x == 0.0 && p < 0.0) throw DomainError("op: zero sample with negative power");
    s.add(std::pow(std::fabs(x), p));
  }
  const double log_norm = stable::log_abs_moment({alpha, 1.0, 1.0}, p);
  const double log_mean = std::log(s.value() / kd) - log_norm;
  const double correction =
      1.0 - (1.0 / kd) * (1.0 / (2.0 * lambda)) * (1.0 / lambda - 1.0) *
                std::expm1(log_power_ratio(lambda, alpha));
  r.estimate = std::exp(log_mean / lambda) * correction;
  return r;
}

}  // namespace estimators
}  // namespace skewproj
