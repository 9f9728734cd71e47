#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace skewproj::bounds {

enum class Side { right, left };
enum class BoundEstimator { gm, hm, mle05 };

std::string_view side_name(Side s);
std::string_view bound_estimator_name(BoundEstimator e);

// Pr(F_hat >= (1+eps)F) or Pr(F_hat <= (1-eps)F) <= exp(-k * rate).
struct TailBoundSpec {
  double alpha = 0.0;
  double epsilon = 0.0;
  Side side = Side::right;
  BoundEstimator estimator = BoundEstimator::gm;
  double rate = 0.0;
  double inner_constant = 0.0;  // C_R, C_L, t1 or t2; 0 for closed forms
  std::optional<std::uint64_t> k0;

  double G() const { return epsilon * epsilon / rate; }
  double bound(double k) const;
};

struct ComplexityResult {
  std::uint64_t k = 0;
  double G = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
};

// Finite-k normalizer [cos(kappa pi/(2k)) (2/pi) Gamma(alpha/k) Gamma(1-1/k) sin(pi alpha/(2k))]^k.
double gm_normalizer_limit(double alpha, std::uint64_t k);
double log_gm_normalizer(double alpha, std::uint64_t k);

// First-order condition for C_R whose root defines the right GM rate.
double gm_right_condition(double alpha, double epsilon, double c);
// Right GM exponent at an arbitrary c in (0, 1); maximized at C_R.
double gm_right_exponent(double alpha, double epsilon, double c);
TailBoundSpec gm_right_rate(double alpha, double epsilon);

// Left GM first-order condition and exponent. Without k0 the normalizer is
// replaced by its k -> infinity limit.
double gm_left_condition(double alpha, double epsilon, double c,
                         std::optional<std::uint64_t> k0 = std::nullopt);
double gm_left_exponent(double alpha, double epsilon, double c,
                        std::optional<std::uint64_t> k0 = std::nullopt);
// Largest admissible c for the left GM exponent (infinite for alpha < 1).
double gm_left_domain_limit(double alpha);
TailBoundSpec gm_left_rate(double alpha, double epsilon,
                           std::optional<std::uint64_t> k0 = std::nullopt);

// S(x) = sum_m Gamma^m(1+alpha) / Gamma(1+m alpha) x^m and its derivative.
struct SeriesValue {
  double value;
  double derivative;
  int terms;
};
SeriesValue hm_series(double alpha, double x);

// Residual of the HM first-order condition at t on the given side.
double hm_condition(double alpha, double epsilon, Side side, double t);
double hm_exponent(double alpha, double epsilon, Side side, double t);
TailBoundSpec hm_rate(double alpha, double epsilon, Side side);

TailBoundSpec mle05_rate(double epsilon, Side side);

// Dispatches on estimator; the left GM side uses the asymptotic normalizer.
TailBoundSpec tail_rate(BoundEstimator estimator, double alpha, double epsilon, Side side);

// k = ceil(G log(2/delta) / eps^2) with G the larger side constant, at least 2.
// For eps >= 1 the left tail is vacuous and only the right side counts.
ComplexityResult sample_complexity(double alpha, double epsilon, double delta,
                                   BoundEstimator estimator);

// (alpha^2 + 2) pi^2 / 12.
double symmetric_gm_reference_variance(double alpha);

// eps^2 / (log(1+eps) - 2 sqrt(delta_offset log(1+eps))) for alpha = 1 +- delta_offset.
double near_one_approximation(double epsilon, double delta_offset);

}  // namespace skewproj::bounds
