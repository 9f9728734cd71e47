#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "skewproj/error.hpp"
#include "skewproj/estimators.hpp"
#include "skewproj/random.hpp"
#include "skewproj/stable.hpp"

namespace est = skewproj::estimators;
using std::numbers::pi;

namespace {

double kappa_oracle(double alpha) { return alpha < 1.0 ? alpha : 2.0 - alpha; }

// Denominator of the geometric mean estimator, evaluated with plain powers.
double gm_denominator_oracle(double alpha, int k) {
  const double kap = kappa_oracle(alpha);
  const double bracket = 2.0 / pi * std::sin(pi * alpha / (2.0 * k)) * std::tgamma(1.0 - 1.0 / k) *
                         std::tgamma(alpha / k);
  return std::pow(std::cos(kap * pi / (2.0 * k)), k) / std::cos(kap * pi / 2.0) *
         std::pow(bracket, k);
}

// Variance factor of the power estimator from its gamma-function form.
double g_literal(double lambda, double alpha) {
  const double kap = kappa_oracle(alpha);
  const double num = std::cos(kap * lambda * pi) * 2.0 / pi * std::tgamma(1.0 - 2.0 * lambda) *
                     std::tgamma(2.0 * lambda * alpha) * std::sin(pi * lambda * alpha);
  const double den = std::cos(kap * lambda * pi / 2.0) * 2.0 / pi * std::tgamma(1.0 - lambda) *
                     std::tgamma(lambda * alpha) * std::sin(pi * lambda * alpha / 2.0);
  return (num / (den * den) - 1.0) / (lambda * lambda);
}

// Same quantity for alpha < 1 from the positive-support moment form.
double g_positive(double lambda, double alpha) {
  const double m = std::tgamma(1.0 - 2.0 * lambda) * std::pow(std::tgamma(1.0 - lambda * alpha), 2) /
                   (std::tgamma(1.0 - 2.0 * lambda * alpha) * std::pow(std::tgamma(1.0 - lambda), 2));
  return (m - 1.0) / (lambda * lambda);
}

double ternary_argmin(double (*g)(double, double), double alpha, double lo, double hi) {
  for (int i = 0; i < 300; ++i) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    if (g(a, alpha) < g(b, alpha)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> draw(double alpha, double beta, std::uint64_t seed, std::uint64_t trial, int k) {
  const skewproj::stable::StableSampler sampler({alpha, beta, 1.0});
  std::vector<double> x(k);
  for (int j = 0; j < k; ++j) {
    const auto in = skewproj::random::cms_input(seed, trial, j);
    x[j] = sampler(in.u, in.w);
  }
  return x;
}

struct Moments {
  double mean;
  double var;
  double se;
};

template <typename F>
Moments monte_carlo(int trials, F&& f) {
  double s = 0.0, s2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double v = f(t);
    s += v;
    s2 += v * v;
  }
  const double mean = s / trials;
  const double var = s2 / trials - mean * mean;
  return {mean, var, std::sqrt(var / trials)};
}

}  // namespace

TEST(Methods, NamesRoundTrip) {
  using skewproj::Method;
  for (Method m : {Method::gm, Method::gm_beta, Method::hm, Method::mle05, Method::op}) {
    EXPECT_EQ(skewproj::parse_method(skewproj::method_name(m)), m);
  }
  EXPECT_THROW(skewproj::parse_method("median"), skewproj::ConfigError);
}

TEST(Gm, MatchesDirectFormula) {
  const std::vector<double> x = {0.7, 2.5, 13.0, 0.04, 1.1};
  for (double alpha : {0.3, 0.5, 0.8, 1.2, 1.7}) {
    double num = 1.0;
    for (double v : x) num *= std::pow(std::fabs(v), alpha / 5.0);
    const double expected = num / gm_denominator_oracle(alpha, 5);
    EXPECT_NEAR(est::gm_estimate(x, alpha).estimate / expected, 1.0, 1e-12) << alpha;
  }
}

TEST(Gm, VarianceFactor) {
  EXPECT_NEAR(est::gm_variance_factor(0.5), pi * pi / 8.0, 1e-14);
  EXPECT_NEAR(est::gm_variance_factor(0.5), 1.2337, 1e-4);
  const auto r = est::gm_estimate(std::vector<double>{1.0, 2.0}, 0.5);
  EXPECT_EQ(r.variance_factor, est::gm_variance_factor(0.5));
}

TEST(Gm, Errors) {
  EXPECT_THROW(est::gm_estimate(std::vector<double>{1.0}, 0.5), skewproj::DomainError);
  EXPECT_THROW(est::gm_estimate(std::vector<double>{1.0, 2.0}, 1.0), skewproj::DomainError);
  const auto r = est::gm_estimate(std::vector<double>{1.0, 0.0, 2.0}, 0.5);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.estimate, 0.0);
}

TEST(Gm, BetaOneReducesToGm) {
  const std::vector<double> x = {0.7, -2.5, 13.0, 0.04, 1.1, 3.3};
  for (double alpha : {0.4, 0.9, 1.3, 1.9}) {
    EXPECT_NEAR(est::gm_estimate_beta(x, alpha, 1.0).estimate / est::gm_estimate(x, alpha).estimate,
                1.0, 1e-12);
  }
}

TEST(Gm, BetaVarianceDecreasesInBeta) {
  double prev = INFINITY;
  for (double beta : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double v = est::gm_beta_variance(0.5, beta, 50);
    EXPECT_LT(v, prev) << beta;
    prev = v;
  }
  EXPECT_GT(est::gm_beta_variance(0.5, 0.2, 50), est::gm_beta_variance(0.5, 0.6, 50));
  EXPECT_GT(est::gm_beta_variance(0.5, 0.6, 50), est::gm_beta_variance(0.5, 1.0, 50));
}

TEST(Gm, BetaVarianceApproachesAsymptote) {
  // k Var / F^2 tends to the asymptotic factor at beta = 1.
  EXPECT_NEAR(1e5 * est::gm_beta_variance(0.5, 1.0, 100000), est::gm_variance_factor(0.5), 1e-3);
}

TEST(Hm, KnownValues) {
  const std::vector<double> ones(7, 1.0);
  EXPECT_NEAR(est::hm_estimate(ones, 0.5, false).estimate, std::sqrt(2.0 / pi), 1e-14);
  EXPECT_NEAR(est::hm_variance_factor(0.5), pi / 2.0 - 1.0, 1e-14);
  const double v = est::hm_variance_factor(0.5);
  EXPECT_NEAR(est::hm_estimate(ones, 0.5, true).estimate, std::sqrt(2.0 / pi) * (1.0 - v / 7.0),
              1e-14);
}

TEST(Hm, Errors) {
  EXPECT_THROW(est::hm_estimate(std::vector<double>{1.0}, 1.5, true), skewproj::DomainError);
  EXPECT_THROW(est::hm_estimate(std::vector<double>{1.0, -1.0}, 0.5, true), skewproj::DomainError);
  EXPECT_THROW(est::hm_estimate(std::vector<double>{1.0, 0.0}, 0.5, true), skewproj::DomainError);
}

TEST(Mle05, KnownValues) {
  const std::vector<double> ones(4, 1.0);
  EXPECT_DOUBLE_EQ(est::mle05_estimate(ones, true).estimate, 0.8125);
  EXPECT_DOUBLE_EQ(est::mle05_estimate(ones, false).estimate, 1.0);
  EXPECT_EQ(est::mle05_estimate(ones, true).variance_factor, 0.5);
  EXPECT_THROW(est::mle05_estimate(std::vector<double>{1.0, 0.0}, true), skewproj::DomainError);
}

TEST(Estimators, ScaleEquivariance) {
  const std::vector<double> x = {0.7, 2.5, 13.0, 0.04, 1.1, 6.0};
  for (double s : {0.001, 0.5, 3.0, 1e4}) {
    std::vector<double> y;
    for (double v : x) y.push_back(s * v);
    for (double alpha : {0.3, 0.5, 0.8, 1.4}) {
      const double f = std::pow(s, alpha);
      EXPECT_NEAR(est::gm_estimate(y, alpha).estimate / (f * est::gm_estimate(x, alpha).estimate),
                  1.0, 1e-12);
      EXPECT_NEAR(est::gm_estimate_beta(y, alpha, 0.3).estimate /
                      (f * est::gm_estimate_beta(x, alpha, 0.3).estimate),
                  1.0, 1e-12);
      const auto p = est::solve_optimal_lambda(alpha);
      EXPECT_NEAR(est::op_estimate(y, alpha, p).estimate / (f * est::op_estimate(x, alpha, p).estimate),
                  1.0, 1e-12);
      if (alpha < 1.0) {
        EXPECT_NEAR(est::hm_estimate(y, alpha, true).estimate /
                        (f * est::hm_estimate(x, alpha, true).estimate),
                    1.0, 1e-12);
      }
    }
    EXPECT_NEAR(est::mle05_estimate(y, true).estimate /
                    (std::sqrt(s) * est::mle05_estimate(x, true).estimate),
                1.0, 1e-12);
  }
}

TEST(OptimalPower, HalfIsMinusTwo) {
  const auto p = est::solve_optimal_lambda(0.5);
  EXPECT_NEAR(p.lambda_star, -2.0, 1e-6);
  EXPECT_NEAR(p.g_min, 0.5, 1e-9);
  EXPECT_EQ(p.alpha, 0.5);
}

TEST(OptimalPower, VarianceFactorMatchesGammaForm) {
  for (double alpha : {0.3, 0.7, 1.3, 1.6}) {
    for (double lambda : {-0.37, -0.11, 0.07, 0.31}) {
      if (alpha > 1.0 && lambda <= -0.5 / alpha) continue;
      EXPECT_NEAR(est::power_variance_factor(lambda, alpha) / g_literal(lambda, alpha), 1.0, 1e-10)
          << alpha << " " << lambda;
    }
  }
  for (double alpha : {0.2, 0.45, 0.85}) {
    for (double lambda : {-7.3, -2.9, -0.6, 0.2, 0.45}) {
      EXPECT_NEAR(est::power_variance_factor(lambda, alpha) / g_positive(lambda, alpha), 1.0, 1e-10)
          << alpha << " " << lambda;
    }
  }
}

TEST(OptimalPower, ContinuousThroughZero) {
  for (double alpha : {0.4, 1.6}) {
    const double a = est::power_variance_factor(-2e-6, alpha);
    const double b = est::power_variance_factor(0.0, alpha);
    const double c = est::power_variance_factor(2e-6, alpha);
    EXPECT_NEAR(a, b, 1e-4);
    EXPECT_NEAR(b, c, 1e-4);
  }
  // At lambda -> 0 the power estimator becomes the geometric mean.
  EXPECT_NEAR(est::power_variance_factor(0.0, 0.6), est::gm_variance_factor(0.6), 1e-4);
}

TEST(OptimalPower, DerivativeMatchesFiniteDifference) {
  for (double alpha : {0.3, 0.7, 1.3, 1.7}) {
    for (double lambda : {-0.2, 0.1, 0.3}) {
      const double h = 1e-5;
      const double fd = (est::power_variance_factor(lambda + h, alpha) -
                         est::power_variance_factor(lambda - h, alpha)) /
                        (2.0 * h);
      EXPECT_NEAR(est::power_variance_factor_derivative(lambda, alpha), fd,
                  1e-6 * std::max(1.0, std::fabs(fd)));
    }
  }
}

TEST(OptimalPower, MatchesTernaryOracle) {
  for (double alpha : {0.2, 0.35, 0.7, 0.8}) {
    const double ref = ternary_argmin(g_positive, alpha, -40.0, 0.45);
    EXPECT_NEAR(est::solve_optimal_lambda(alpha).lambda_star, ref, 1e-5) << alpha;
  }
  for (double alpha : {1.2, 1.5, 1.8}) {
    const double ref = ternary_argmin(g_literal, alpha, -0.5 / alpha + 1e-6, -1e-3);
    const double ref2 = ternary_argmin(g_literal, alpha, 1e-3, 0.5 - 1e-6);
    const double best = g_literal(ref, alpha) < g_literal(ref2, alpha) ? ref : ref2;
    EXPECT_NEAR(est::solve_optimal_lambda(alpha).lambda_star, best, 1e-5) << alpha;
  }
}

TEST(OptimalPower, NegativeBelowOneAndDominates) {
  for (int i = 1; i <= 9; ++i) {
    const double alpha = 0.1 * i;
    const auto p = est::solve_optimal_lambda(alpha);
    EXPECT_LT(p.lambda_star, 0.0) << alpha;
    EXPECT_LE(p.g_min, est::gm_variance_factor(alpha) + 1e-12) << alpha;
    EXPECT_LE(p.g_min, est::hm_variance_factor(alpha) + 1e-12) << alpha;
  }
  for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
    const auto p = est::solve_optimal_lambda(alpha);
    EXPECT_GT(p.lambda_star, -0.5 / alpha);
    EXPECT_LT(p.lambda_star, 0.5);
    EXPECT_LE(p.g_min, est::gm_variance_factor(alpha) + 1e-12);
  }
}

TEST(OptimalPower, ConvexBelowOne) {
  for (double alpha : {0.2, 0.5, 0.8}) {
    const double h = 1e-2;
    for (double lambda = -10.0; lambda < 0.49 - h; lambda += 0.0371) {
      if (std::fabs(lambda) < 0.02) continue;
      const double d2 = (est::power_variance_factor(lambda + h, alpha) -
                         2.0 * est::power_variance_factor(lambda, alpha) +
                         est::power_variance_factor(lambda - h, alpha)) /
                        (h * h);
      EXPECT_GE(d2, -1e-8) << alpha << " " << lambda;
    }
  }
}

TEST(OptimalPower, AlphaTwoIsArithmeticMean) {
  const auto p = est::solve_optimal_lambda(2.0);
  const std::vector<double> x = {1.0, -2.0, 3.0};
  EXPECT_NEAR(est::op_estimate(x, 2.0, p).estimate, 14.0 / 6.0, 1e-14);
  EXPECT_THROW(est::solve_optimal_lambda(1.0), skewproj::DomainError);
}

TEST(OptimalPower, EqualsMleAtHalf) {
  const auto p = est::solve_optimal_lambda(0.5);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto x = draw(0.5, 1.0, 5, t, 20);
    EXPECT_NEAR(est::op_estimate(x, 0.5, p).estimate / est::mle05_estimate(x, true).estimate, 1.0,
                1e-9);
  }
}

TEST(OptimalPower, ErrorCases) {
  auto p = est::solve_optimal_lambda(0.7);
  EXPECT_THROW(est::op_estimate(std::vector<double>{1.0, 0.0}, 0.7, p), skewproj::DomainError);
  EXPECT_THROW(est::op_estimate(std::vector<double>{1.0}, 0.8, p), skewproj::ConfigError);
}

TEST(VarianceFactors, RatioToSymmetricReferenceVanishesNearOne) {
  for (double d : {1e-2, 1e-3, 1e-4}) {
    for (double alpha : {1.0 - d, 1.0 + d}) {
      const double kap = 2.0 - std::max(alpha, 2.0 - alpha);
      const double ratio = est::gm_variance_factor(alpha) / ((alpha * alpha + 2.0) * pi * pi / 12.0);
      EXPECT_NEAR(ratio, (alpha * alpha + 2.0 - 3.0 * kap * kap) / (alpha * alpha + 2.0), 1e-14);
      EXPECT_LT(ratio, 3.0 * d);
    }
  }
  EXPECT_LT(est::gm_variance_factor(0.999) / ((0.999 * 0.999 + 2.0) * pi * pi / 12.0), 0.01);
  EXPECT_LT(est::gm_variance_factor(1.001) / ((1.001 * 1.001 + 2.0) * pi * pi / 12.0), 0.01);
}

TEST(MonteCarlo, GmUnbiased) {
  const double alpha = 0.75;
  const int k = 10;
  const auto m = monte_carlo(100000, [&](int t) {
    return est::gm_estimate(draw(alpha, 1.0, 11, t, k), alpha).estimate;
  });
  EXPECT_NEAR(m.mean, 1.0, 3.0 * m.se);
}

TEST(MonteCarlo, GmBetaUnbiased) {
  const int k = 10;
  const auto m = monte_carlo(100000, [&](int t) {
    return est::gm_estimate_beta(draw(0.5, 0.5, 12, t, k), 0.5, 0.5).estimate;
  });
  EXPECT_NEAR(m.mean, 1.0, 3.0 * m.se);
}

TEST(MonteCarlo, OpVariance) {
  const double alpha = 0.75;
  const int k = 100;
  const auto p = est::solve_optimal_lambda(alpha);
  const auto m = monte_carlo(100000, [&](int t) {
    return est::op_estimate(draw(alpha, 1.0, 13, t, k), alpha, p).estimate;
  });
  EXPECT_NEAR(k * m.var / p.g_min, 1.0, 0.10);
}
