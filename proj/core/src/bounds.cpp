#include "skewproj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "skewproj/error.hpp"
#include "skewproj/estimators.hpp"
#include "skewproj/numerics.hpp"
#include "skewproj/stable.hpp"

namespace skewproj::bounds {

using numerics::digamma;
using numerics::kEulerGamma;
using numerics::kPi;
using numerics::lgamma1p;
using numerics::log_cos;
using numerics::log_sinc;
using numerics::log_sinc_derivative;

namespace {

constexpr double kEdge = 1e-6;
constexpr double kLeftScanCap = 1e300;
constexpr double kHmScanCap = 1e3;
constexpr int kSeriesCap = 500;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw DomainError("bounds: alpha must lie in (0, 2) \\ {1}, got " + std::to_string(alpha));
  }
}

void check_epsilon(double epsilon, Side side) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("bounds: epsilon must be positive");
  }
  if (side == Side::left && !(epsilon < 1.0)) {
    throw DomainError("bounds: left tail requires epsilon < 1");
  }
}

// log of the normalizer used in the left bound: the finite-k0 bracket or its limit.
double left_log_normalizer(double alpha, std::optional<std::uint64_t> k0) {
  if (k0) return log_gm_normalizer(alpha, *k0);
  return -kEulerGamma * (alpha - 1.0);
}

// Neumaier summation in long double.
class LongSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    comp_ += std::fabs(sum_) >= std::fabs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

TailBoundSpec make_spec(double alpha, double epsilon, Side side, BoundEstimator e, double rate,
                        double inner, std::optional<std::uint64_t> k0 = std::nullopt) {
  TailBoundSpec s;
  s.alpha = alpha;
  s.epsilon = epsilon;
  s.side = side;
  s.estimator = e;
  s.rate = rate;
  s.inner_constant = inner;
  s.k0 = k0;
  return s;
}

}  // namespace

std::string_view side_name(Side s) { return s == Side::right ? "right" : "left"; }

std::string_view bound_estimator_name(BoundEstimator e) {
  switch (e) {
    case BoundEstimator::gm: return "gm";
    case BoundEstimator::hm: return "hm";
    case BoundEstimator::mle05: return "mle05";
  }
  return "unknown";
}

double TailBoundSpec::bound(double k) const { return std::exp(-k * rate); }

double log_gm_normalizer(double alpha, std::uint64_t k) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("gm_normalizer: alpha out of range");
  if (k < 2) throw DomainError("gm_normalizer: requires k >= 2");
  const double kd = static_cast<double>(k);
  const double kap = alpha < 1.0 ? alpha : 2.0 - alpha;
  const double a = alpha / kd;
  return kd * (log_cos(0.5 * kPi * kap / kd) + log_sinc(0.5 * kPi * a) + lgamma1p(a) +
               lgamma1p(-1.0 / kd));
}

double gm_normalizer_limit(double alpha, std::uint64_t k) {
  return std::exp(log_gm_normalizer(alpha, k));
}

double gm_right_condition(double alpha, double epsilon, double c) {
  const double kap = stable::kappa(alpha);
  return kEulerGamma * (alpha - 1.0) - std::log1p(epsilon) -
         0.5 * kPi * kap * std::tan(0.5 * kPi * kap * c) +
         0.5 * kPi * alpha * log_sinc_derivative(0.5 * kPi * alpha * c) +
         alpha * digamma(1.0 + alpha * c) - digamma(1.0 - c);
}

double gm_right_exponent(double alpha, double epsilon, double c) {
  const double kap = stable::kappa(alpha);
  const double log_bracket = log_cos(0.5 * kPi * kap * c) + log_sinc(0.5 * kPi * alpha * c) +
                             lgamma1p(alpha * c) + lgamma1p(-c);
  return c * std::log1p(epsilon) - c * kEulerGamma * (alpha - 1.0) - log_bracket;
}

TailBoundSpec gm_right_rate(double alpha, double epsilon) {
  check_alpha(alpha);
  check_epsilon(epsilon, Side::right);
  const double lo = kEdge;
  const double hi = 1.0 - kEdge;
  const double v = estimators::gm_variance_factor(alpha);
  const double guess = std::clamp(std::log1p(epsilon) / v, lo, hi);
  auto f = [&](double c) { return gm_right_condition(alpha, epsilon, c); };
  const double fg = f(guess);
  double c;
  if (fg == 0.0) {
    c = guess;
  } else if (fg < 0.0) {
    c = numerics::find_root(f, {guess, hi});
  } else {
    c = numerics::find_root(f, {lo, guess});
  }
  return make_spec(alpha, epsilon, Side::right, BoundEstimator::gm,
                   gm_right_exponent(alpha, epsilon, c), c);
}

double gm_left_domain_limit(double alpha) {
  check_alpha(alpha);
  return alpha < 1.0 ? std::numeric_limits<double>::infinity() : 1.0 / alpha;
}

double gm_left_condition(double alpha, double epsilon, double c,
                         std::optional<std::uint64_t> k0) {
  const double base = std::log1p(-epsilon) + left_log_normalizer(alpha, k0);
  if (alpha < 1.0) return base + digamma(1.0 + c) - alpha * digamma(1.0 + alpha * c);
  const double kap = stable::kappa(alpha);
  return base - 0.5 * kPi * kap * std::tan(0.5 * kPi * kap * c) +
         0.5 * kPi * alpha * std::tan(0.5 * kPi * alpha * c) - alpha * digamma(1.0 + alpha * c) +
         digamma(1.0 + c);
}

double gm_left_exponent(double alpha, double epsilon, double c,
                        std::optional<std::uint64_t> k0) {
  double log_bracket;
  if (alpha < 1.0) {
    log_bracket = lgamma1p(c) - lgamma1p(alpha * c);
  } else {
    const double kap = stable::kappa(alpha);
    log_bracket = log_cos(0.5 * kPi * kap * c) + log_sinc(0.5 * kPi * alpha * c) +
                  lgamma1p(-alpha * c) + lgamma1p(c);
  }
  return -c * std::log1p(-epsilon) - log_bracket - c * left_log_normalizer(alpha, k0);
}

TailBoundSpec gm_left_rate(double alpha, double epsilon, std::optional<std::uint64_t> k0) {
  check_alpha(alpha);
  check_epsilon(epsilon, Side::left);
  if (k0 && *k0 < 2) throw DomainError("gm_left_rate: k0 must be at least 2");
  auto f = [&](double c) { return gm_left_condition(alpha, epsilon, c, k0); };
  double lo, hi;
  if (alpha < 1.0) {
    lo = kEdge;
    hi = 1.0;
    while (f(hi) <= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > kLeftScanCap) {
        throw BracketError("gm_left_rate: no root below c = 1e300");
      }
    }
  } else {
    const double limit = 1.0 / alpha;
    lo = kEdge * limit;
    hi = limit * (1.0 - 1e-9);
  }
  const double c = numerics::find_root(f, {lo, hi});
  return make_spec(alpha, epsilon, Side::left, BoundEstimator::gm,
                   gm_left_exponent(alpha, epsilon, c, k0), c, k0);
}

SeriesValue hm_series(double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hm_series: requires 0 < alpha < 1");
  if (x == 0.0) return {1.0, 1.0, 1};
  // Extended precision absorbs the cancellation of the alternating case.
  LongSum s, ds;
  s.add(1.0L);
  const long double log_g = std::lgamma(1.0L + alpha);
  const long double log_x = std::log(std::fabs(static_cast<long double>(x)));
  const bool negative = x < 0.0;
  long double prev = 1.0L;
  for (int m = 1; m <= kSeriesCap; ++m) {
    const long double log_term =
        m * (log_g + log_x) - std::lgamma(1.0L + m * static_cast<long double>(alpha));
    long double term = std::exp(log_term);
    if (negative && (m % 2 == 1)) term = -term;
    s.add(term);
    ds.add(m * term / x);
    const long double mag = std::fabs(term);
    const long double scale = std::max({1.0L, std::fabs(s.value()), std::fabs(ds.value())});
    if (mag < prev && m * mag < 1e-15L * scale) {
      return {static_cast<double>(s.value()), static_cast<double>(ds.value()), m + 1};
    }
    prev = mag;
  }
  throw NumericError("hm_series: more than 500 terms needed at x = " + std::to_string(x));
}

double hm_condition(double alpha, double epsilon, Side side, double t) {
  if (side == Side::right) {
    const SeriesValue v = hm_series(alpha, -t);
    return -v.derivative / v.value + 1.0 / (1.0 + epsilon);
  }
  const SeriesValue v = hm_series(alpha, t);
  return -v.derivative / v.value + 1.0 / (1.0 - epsilon);
}

double hm_exponent(double alpha, double epsilon, Side side, double t) {
  if (side == Side::right) {
    const SeriesValue v = hm_series(alpha, -t);
    if (!(v.value > 0.0)) throw NumericError("hm_exponent: series lost positivity");
    return -std::log(v.value) - t / (1.0 + epsilon);
  }
  const SeriesValue v = hm_series(alpha, t);
  return -std::log(v.value) + t / (1.0 - epsilon);
}

TailBoundSpec hm_rate(double alpha, double epsilon, Side side) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hm_rate: requires 0 < alpha < 1");
  check_epsilon(epsilon, side);
  auto f = [&](double t) { return hm_condition(alpha, epsilon, side, t); };
  double lo = 0.0;
  double hi = 1.0;
  const bool right = side == Side::right;
  while (right ? f(hi) <= 0.0 : f(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kHmScanCap) throw BracketError("hm_rate: no root below t = 1e3");
  }
  const double t = numerics::find_root(f, {lo, hi});
  return make_spec(alpha, epsilon, side, BoundEstimator::hm, hm_exponent(alpha, epsilon, side, t),
                   t);
}

TailBoundSpec mle05_rate(double epsilon, Side side) {
  check_epsilon(epsilon, side);
  const double r = side == Side::right
                       ? std::log1p(epsilon) - 0.5 + 0.5 / ((1.0 + epsilon) * (1.0 + epsilon))
                       : std::log1p(-epsilon) - 0.5 + 0.5 / ((1.0 - epsilon) * (1.0 - epsilon));
  return make_spec(0.5, epsilon, side, BoundEstimator::mle05, r, 0.0);
}

TailBoundSpec tail_rate(BoundEstimator estimator, double alpha, double epsilon, Side side) {
  switch (estimator) {
    case BoundEstimator::gm:
      return side == Side::right ? gm_right_rate(alpha, epsilon) : gm_left_rate(alpha, epsilon);
    case BoundEstimator::hm: return hm_rate(alpha, epsilon, side);
    case BoundEstimator::mle05:
      if (alpha != 0.5) throw ConfigError("mle05 bounds require alpha = 0.5");
      return mle05_rate(epsilon, side);
  }
  throw ConfigError("unknown bound estimator");
}

ComplexityResult sample_complexity(double alpha, double epsilon, double delta,
                                   BoundEstimator estimator) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("sample_complexity: delta must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw DomainError("sample_complexity: epsilon must be positive");
  double g = tail_rate(estimator, alpha, epsilon, Side::right).G();
  if (epsilon < 1.0) g = std::max(g, tail_rate(estimator, alpha, epsilon, Side::left).G());
  ComplexityResult r;
  r.G = g;
  r.epsilon = epsilon;
  r.delta = delta;
  const double k = std::ceil(g * std::log(2.0 / delta) / (epsilon * epsilon));
  r.k = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(k));
  return r;
}

double symmetric_gm_reference_variance(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) throw DomainError("reference variance: alpha in [0, 2]");
  return (alpha * alpha + 2.0) * kPi * kPi / 12.0;
}

double near_one_approximation(double epsilon, double delta_offset) {
  const double l = std::log1p(epsilon);
  const double den = l - 2.0 * std::sqrt(delta_offset * l);
  if (!(den > 0.0)) throw DomainError("near_one_approximation: offset too large for epsilon");
  return epsilon * epsilon / den;
}

}  // namespace skewproj::bounds
