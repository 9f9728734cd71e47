#pragma once

#include <functional>

namespace skewproj::numerics {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;

// Gamma function. Throws DomainError at the poles 0, -1, -2, ...
double gamma(double x);

// log|Gamma(x)|, without overflow for large x.
double log_abs_gamma(double x);

// log Gamma(1 + x) for x > -1, accurate as x -> 0.
double lgamma1p(double x);

// Digamma function psi(x) = Gamma'(x) / Gamma(x).
double digamma(double x);

// sin(pi x), exact at integers and half-integers.
double sinpi(double x);
double cospi(double x);

// log(sin(y) / y) for |y| < pi, accurate as y -> 0.
double log_sinc(double y);

// d/dy log_sinc(y) = cot(y) - 1/y, accurate as y -> 0.
double log_sinc_derivative(double y);

// log(cos(z)) for |z| < pi/2, accurate as z -> 0.
double log_cos(double z);

struct RootBracket {
  double lo;
  double hi;
  double tol = 1e-12;
  int max_iter = 200;
};

// Brent's method. Requires a sign change over [lo, hi]; throws BracketError
// otherwise and NumericError on a non-finite evaluation or non-convergence.
double find_root(const std::function<double(double)>& f, RootBracket bracket);

struct Minimum {
  double argmin;
  double value;
};

// Brent's golden-section/parabolic minimizer on [lo, hi].
Minimum minimize_1d(const std::function<double(double)>& f, double lo, double hi,
                    double tol = 1e-10, int max_iter = 500);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace skewproj::numerics
