#include "skewproj/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "skewproj/error.hpp"

namespace skewproj::numerics {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kSqrt2Pi = 2.50662827463100050242;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_sum(double z) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  return a;
}

constexpr int kZetaMax = 40;

// zeta(k) for 2 <= k <= kZetaMax via a direct sum plus an Euler-Maclaurin tail.
std::array<double, kZetaMax + 1> make_zeta_table() {
  std::array<double, kZetaMax + 1> z{};
  constexpr int n_terms = 1000;
  for (int k = 2; k <= kZetaMax; ++k) {
    double s = 0.0;
    for (int n = n_terms - 1; n >= 1; --n) s += std::pow(n, -k);
    const double nn = n_terms;
    s += std::pow(nn, 1 - k) / (k - 1) + 0.5 * std::pow(nn, -k) +
         k * std::pow(nn, -k - 1) / 12.0 -
         k * (k + 1.0) * (k + 2.0) * std::pow(nn, -k - 3) / 720.0;
    z[k] = s;
  }
  return z;
}

const std::array<double, kZetaMax + 1>& zeta_table() {
  static const auto table = make_zeta_table();
  return table;
}

}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = x - 2.0 * std::floor(0.5 * x);  // [0, 2)
  if (r < 0.5) return std::sin(kPi * r);
  if (r < 1.5) return std::sin(kPi * (1.0 - r));
  return std::sin(kPi * (r - 2.0));
}

double cospi(double x) { return sinpi(x + 0.5); }

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) {
    throw DomainError("gamma: pole at " + std::to_string(x));
  }
  if (x < 0.5) return kPi / (sinpi(x) * gamma(1.0 - x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return kSqrt2Pi * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_abs_gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) {
    throw DomainError("log_abs_gamma: pole at " + std::to_string(x));
  }
  if (x < 0.5) {
    return std::log(kPi) - std::log(std::fabs(sinpi(x))) - log_abs_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double lgamma1p(double x) {
  if (!(x > -1.0)) throw DomainError("lgamma1p: requires x > -1");
  if (std::fabs(x) >= 0.2) return log_abs_gamma(1.0 + x);
  const auto& zeta = zeta_table();
  double sum = 0.0;
  double xp = -x;
  for (int k = 2; k <= kZetaMax; ++k) {
    xp *= -x;
    const double term = zeta[k] * xp / k;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return -kEulerGamma * x + sum;
}

double digamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) {
    throw DomainError("digamma: pole at " + std::to_string(x));
  }
  if (x < 0.0) return digamma(1.0 - x) - kPi * cospi(x) / sinpi(x);
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 / 12.0))))));
  return result + std::log(x) - 0.5 / x - series;
}

double log_sinc(double y) {
  const double ay = std::fabs(y);
  if (ay < 0.5) {
    const double y2 = y * y;
    double term = 1.0;
    double s = 0.0;
    for (int n = 1; n < 20; ++n) {
      term *= -y2 / ((2.0 * n) * (2.0 * n + 1.0));
      s += term;
      if (std::fabs(term) < 1e-18) break;
    }
    return std::log1p(s);
  }
  const double v = std::sin(ay) / ay;
  if (!(v > 0.0)) throw DomainError("log_sinc: sin(y)/y <= 0");
  return std::log(v);
}

double log_sinc_derivative(double y) {
  if (std::fabs(y) < 0.5) {
    // cot y - 1/y = -2 sum_n zeta(2n) y^(2n-1) / pi^(2n)
    const auto& zeta = zeta_table();
    const double r2 = (y / kPi) * (y / kPi);
    double p = y / (kPi * kPi);
    double s = 0.0;
    for (int n = 1; 2 * n <= kZetaMax; ++n) {
      const double term = zeta[2 * n] * p;
      s += term;
      if (std::fabs(term) <= 1e-18 * std::fabs(s)) break;
      p *= r2;
    }
    return -2.0 * s;
  }
  return std::cos(y) / std::sin(y) - 1.0 / y;
}

double log_cos(double z) {
  const double s = std::sin(0.5 * z);
  const double arg = -2.0 * s * s;
  if (!(arg > -1.0)) throw DomainError("log_cos: cos(z) <= 0");
  return std::log1p(arg);
}

double find_root(const std::function<double(double)>& f, RootBracket bracket) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = f(a);
  double fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw NumericError("find_root: non-finite value at bracket end");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("find_root: no sign change over [" + std::to_string(a) +
                       ", " + std::to_string(b) + "]");
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < bracket.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * bracket.tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if (!std::isfinite(fb)) throw NumericError("find_root: non-finite value");
  }
  throw NumericError("find_root: no convergence");
}

Minimum minimize_1d(const std::function<double(double)>& f, double lo, double hi,
                    double tol, int max_iter) {
  constexpr double golden = 0.3819660112501051;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (!(lo < hi)) throw DomainError("minimize_1d: requires lo < hi");
  double a = lo, b = hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x);
  if (!std::isfinite(fx)) throw NumericError("minimize_1d: non-finite value");
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = std::sqrt(eps) * std::fabs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) return {x, fx};
    bool golden_step = true;
    if (std::fabs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double etemp = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm > x) ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = (std::fabs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    if (!std::isfinite(fu)) throw NumericError("minimize_1d: non-finite value");
    if (fu <= fx) {
      if (u >= x) {
        a = x;
      } else {
        b = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  throw NumericError("minimize_1d: no convergence");
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace skewproj::numerics
