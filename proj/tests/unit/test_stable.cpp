#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "skewproj/error.hpp"
#include "skewproj/random.hpp"
#include "skewproj/stable.hpp"

using skewproj::StableParams;
namespace st = skewproj::stable;

namespace {

// E Z^lambda under the Levy density, by trapezoid quadrature in log z.
double levy_moment_quadrature(double lambda, double scale) {
  const double h = 1e-3;
  const int n = 120000;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double z = std::exp(-40.0 + i * h);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * std::pow(z, lambda) * st::levy_pdf(z, scale) * z;
  }
  // Remaining tail where the density is scale z^(-3/2) / sqrt(2 pi).
  const double tail = scale / std::sqrt(2.0 * M_PI) * std::exp(80.0 * (lambda - 0.5)) / (0.5 - lambda);
  return s * h + tail;
}

// E|X|^lambda for X ~ N(0, 2F).
double gaussian_abs_moment(double lambda, double F) {
  return std::pow(2.0, lambda) * std::pow(F, lambda / 2.0) * std::tgamma((lambda + 1.0) / 2.0) /
         std::sqrt(M_PI);
}

}  // namespace

TEST(Kappa, PiecewiseValues) {
  EXPECT_DOUBLE_EQ(st::kappa(0.5), 0.5);
  EXPECT_DOUBLE_EQ(st::kappa(1.5), 0.5);
  EXPECT_DOUBLE_EQ(st::kappa(2.0), 0.0);
  EXPECT_THROW(st::kappa(1.0), skewproj::DomainError);
}

TEST(Params, Validation) {
  EXPECT_THROW((StableParams{1.0, 1.0, 1.0}.validate()), skewproj::DomainError);
  EXPECT_THROW((StableParams{0.0, 1.0, 1.0}.validate()), skewproj::DomainError);
  EXPECT_THROW((StableParams{2.5, 1.0, 1.0}.validate()), skewproj::DomainError);
  EXPECT_THROW((StableParams{0.5, 1.5, 1.0}.validate()), skewproj::DomainError);
  EXPECT_THROW((StableParams{0.5, 1.0, 0.0}.validate()), skewproj::DomainError);
  EXPECT_NO_THROW((StableParams{2.0, 0.0, 3.0}.validate()));
}

TEST(Sample, HandEvaluatedPoints) {
  EXPECT_NEAR(st::sample({0.5, 1.0, 1.0}, 0.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(st::sample({0.5, 1.0, 1.0}, 0.0, 2.0), 0.5, 1e-15);
  EXPECT_THROW(st::sample({0.5, 1.0, 1.0}, 0.0, 0.0), skewproj::DomainError);
  EXPECT_THROW(st::sample({1.0, 1.0, 1.0}, 0.0, 1.0), skewproj::DomainError);
}

TEST(Sample, ScaleEntersAsPowerOneOverAlpha) {
  for (double a : {0.3, 0.8, 1.4, 1.9}) {
    const double z1 = st::sample({a, 1.0, 1.0}, 0.3, 0.7);
    const double z3 = st::sample({a, 1.0, 3.0}, 0.3, 0.7);
    EXPECT_NEAR(z3 / z1, std::pow(3.0, 1.0 / a), 1e-12);
  }
}

TEST(Sample, GaussianCase) {
  EXPECT_NEAR(st::sample({2.0, 0.0, 1.0}, 0.4, 1.3), 2.0 * std::sqrt(1.3) * std::sin(0.4), 1e-15);
  EXPECT_NEAR(st::sample({2.0, 1.0, 4.0}, -0.2, 0.5), 2.0 * 2.0 * std::sqrt(0.5) * std::sin(-0.2),
              1e-15);
}

TEST(Sample, SymmetricCaseIsOdd) {
  EXPECT_NEAR(st::sample({0.7, 0.0, 1.0}, 0.3, 1.1), -st::sample({0.7, 0.0, 1.0}, -0.3, 1.1),
              1e-14);
}

TEST(Sample, FullySkewedBelowOneIsNonNegative) {
  for (double a : {0.1, 0.5, 0.9, 0.99}) {
    const st::StableSampler s({a, 1.0, 1.0});
    for (int i = 0; i < 100000; ++i) {
      const auto in = skewproj::random::cms_input(5, i, 0);
      ASSERT_GE(s(in.u, in.w), 0.0);
    }
  }
}

TEST(Moments, ZeroOrderIsOne) {
  EXPECT_EQ(st::abs_moment({0.5, 1.0, 1.0}, 0.0), 1.0);
  EXPECT_EQ(st::abs_moment({1.5, 0.3, 2.0}, 0.0), 1.0);
}

TEST(Moments, LevyInverseMomentsAreDoubleFactorials) {
  EXPECT_NEAR(st::abs_moment({0.5, 1.0, 1.0}, -1.0), 1.0, 1e-13);
  EXPECT_NEAR(st::abs_moment({0.5, 1.0, 1.0}, -2.0), 3.0, 3e-13);
  EXPECT_NEAR(st::abs_moment({0.5, 1.0, 1.0}, -3.0), 15.0, 15e-13);
  EXPECT_NEAR(st::abs_moment({0.5, 1.0, 2.0}, -2.0), 3.0 / 16.0, 1e-13);
}

TEST(Moments, LevyFractionalMomentsMatchQuadrature) {
  for (double l : {-2.5, -1.3, -0.4, 0.2, 0.45}) {
    for (double F : {1.0, 2.5}) {
      const double quad = levy_moment_quadrature(l, F);
      EXPECT_NEAR(st::abs_moment({0.5, 1.0, F}, l) / quad, 1.0, 1e-8) << l << " " << F;
    }
  }
}

TEST(Moments, GaussianCaseMatchesNormalAbsoluteMoments) {
  for (double l : {-0.7, -0.2, 0.5, 1.0, 1.9}) {
    EXPECT_NEAR(st::abs_moment({2.0, 0.0, 1.5}, l) / gaussian_abs_moment(l, 1.5), 1.0, 1e-12);
  }
}

TEST(Moments, SkewedAndPositiveFormsAgree) {
  for (double a : {0.2, 0.5, 0.75, 0.95}) {
    for (double l = -0.99; l < a; l += 0.05) {
      const double e2 = std::exp(st::log_abs_moment_skewed(a, 1.7, l));
      const double e4 = std::exp(st::log_positive_moment(a, 1.7, l));
      const double e1 = std::exp(st::log_abs_moment_general({a, 1.0, 1.7}, l));
      ASSERT_NEAR(e2 / e4, 1.0, 1e-10) << a << " " << l;
      ASSERT_NEAR(e1 / e4, 1.0, 1e-10) << a << " " << l;
    }
  }
  for (double a : {1.2, 1.5, 1.8}) {
    for (double l = -0.95; l < a; l += 0.1) {
      const double e1 = std::exp(st::log_abs_moment_general({a, 1.0, 0.6}, l));
      const double e2 = std::exp(st::log_abs_moment_skewed(a, 0.6, l));
      ASSERT_NEAR(e1 / e2, 1.0, 1e-10) << a << " " << l;
    }
  }
}

TEST(Moments, ContinuousThroughIntegerOrders) {
  for (double m : {-1.0, -2.0}) {
    const double at = st::abs_moment({0.5, 1.0, 1.0}, m);
    EXPECT_NEAR(st::abs_moment({0.5, 1.0, 1.0}, m + 1e-9) / at, 1.0, 1e-7);
    EXPECT_NEAR(st::abs_moment({0.5, 1.0, 1.0}, m - 1e-9) / at, 1.0, 1e-7);
  }
}

TEST(Moments, DomainErrors) {
  EXPECT_THROW(st::abs_moment({0.5, 1.0, 1.0}, 0.5), skewproj::DomainError);
  EXPECT_THROW(st::abs_moment({1.5, 1.0, 1.0}, -1.0), skewproj::DomainError);
  EXPECT_THROW(st::abs_moment({0.5, 0.5, 1.0}, -1.5), skewproj::DomainError);
  EXPECT_NO_THROW(st::abs_moment({0.5, 1.0, 1.0}, -10.0));
}

TEST(LevyPdf, Values) {
  EXPECT_NEAR(st::levy_pdf(1.0, 1.0), std::exp(-0.5) / std::sqrt(2.0 * M_PI), 1e-15);
  EXPECT_LT(st::levy_pdf(1e-3, 1.0), 1e-200);
  EXPECT_THROW(st::levy_pdf(0.0, 1.0), skewproj::DomainError);
  EXPECT_NEAR(levy_moment_quadrature(0.0, 1.0), 1.0, 1e-9);
  EXPECT_NEAR(levy_moment_quadrature(0.0, 3.0), 1.0, 1e-9);
}

TEST(Sampler, MomentAgreementSmallScale) {
  constexpr int n = 200000;
  for (double a : {0.5, 1.5}) {
    const st::StableSampler s({a, 1.0, 1.0});
    const double l = 0.3 * a;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto in = skewproj::random::cms_input(17, i, 0);
      const double v = std::pow(std::fabs(s(in.u, in.w)), l);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(mean, st::abs_moment({a, 1.0, 1.0}, l), 4.0 * se) << a;
  }
}
