#include "skewproj/stable.hpp"

#include <cmath>
#include <string>

#include "skewproj/error.hpp"
#include "skewproj/numerics.hpp"

namespace skewproj {

using numerics::kPi;

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("stable: alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (alpha == 1.0) throw DomainError("stable: alpha = 1 is excluded");
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw DomainError("stable: beta must lie in [-1, 1], got " + std::to_string(beta));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("stable: scale must be positive and finite");
  }
}

namespace stable {
namespace {

void check_moment_order(const StableParams& p, double lambda, bool unbounded_below) {
  if (!(lambda < p.alpha)) {
    throw DomainError("abs_moment: requires lambda < alpha, got " + std::to_string(lambda));
  }
  if (!unbounded_below && !(lambda > -1.0)) {
    throw DomainError("abs_moment: requires lambda > -1 unless alpha < 1 and beta = 1");
  }
}

}  // namespace

double kappa(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    throw DomainError("kappa: alpha must lie in (0, 2] \\ {1}");
  }
  return alpha < 1.0 ? alpha : 2.0 - alpha;
}

StableSampler::StableSampler(const StableParams& params) : params_(params) {
  params_.validate();
  const double a = params_.alpha;
  sqrt_scale_ = std::sqrt(params_.scale);
  if (a == 2.0) return;
  double log_factor;
  if (params_.beta == 1.0) {
    const double k = kappa(a);
    theta0_ = a < 1.0 ? 0.5 * kPi : -0.5 * kPi * k / a;
    log_factor = -std::log(std::cos(0.5 * kPi * k)) / a;
  } else {
    const double bt = params_.beta * std::tan(0.5 * kPi * a);
    theta0_ = std::atan(bt) / a;
    log_factor = std::log1p(bt * bt) / (2.0 * a);
  }
  inv_alpha_ = 1.0 / a;
  tail_exponent_ = (1.0 - a) / a;
  log_prefactor_ = inv_alpha_ * std::log(params_.scale) + log_factor;
}

double StableSampler::operator()(double u, double w) const {
  if (!(w > 0.0)) throw DomainError("sample: w must be positive");
  const double a = params_.alpha;
  if (a == 2.0) return sqrt_scale_ * 2.0 * std::sqrt(w) * std::sin(u);
  const double s = std::sin(a * (u + theta0_));
  const double c = std::cos(u);
  const double tail = std::cos(u - a * (u + theta0_)) / w;
  const double log_mag =
      log_prefactor_ + tail_exponent_ * std::log(tail) - inv_alpha_ * std::log(c);
  return s * std::exp(log_mag);
}

double sample(const StableParams& params, double u, double w) {
  return StableSampler(params)(u, w);
}

double log_abs_moment_general(const StableParams& p, double lambda) {
  p.validate();
  check_moment_order(p, lambda, false);
  if (lambda == 0.0) return 0.0;
  const double a = p.alpha;
  const double r = lambda / a;
  const double bt = p.beta * std::tan(0.5 * kPi * a);
  const double theta = a == 2.0 ? 0.0 : std::atan(bt);
  return r * std::log(p.scale) + numerics::log_cos(r * theta) +
         0.5 * r * std::log1p(bt * bt) + numerics::log_sinc(0.5 * kPi * lambda) +
         numerics::lgamma1p(lambda) + numerics::lgamma1p(-r);
}

double log_abs_moment_skewed(double alpha, double scale, double lambda) {
  StableParams p{alpha, 1.0, scale};
  p.validate();
  check_moment_order(p, lambda, false);
  if (lambda == 0.0) return 0.0;
  const double k = kappa(alpha);
  const double r = lambda / alpha;
  return r * std::log(scale) + numerics::log_cos(0.5 * kPi * k * r) -
         r * numerics::log_cos(0.5 * kPi * k) + numerics::log_sinc(0.5 * kPi * lambda) +
         numerics::lgamma1p(lambda) + numerics::lgamma1p(-r);
}

double log_positive_moment(double alpha, double scale, double lambda) {
  StableParams p{alpha, 1.0, scale};
  p.validate();
  if (!(alpha < 1.0)) throw DomainError("positive moment: requires alpha < 1");
  check_moment_order(p, lambda, true);
  if (lambda == 0.0) return 0.0;
  const double r = lambda / alpha;
  return r * std::log(scale) + numerics::lgamma1p(-r) - numerics::lgamma1p(-lambda) -
         r * std::log(std::cos(0.5 * kPi * alpha));
}

double log_abs_moment(const StableParams& params, double lambda) {
  params.validate();
  if (params.beta == 1.0) {
    if (params.alpha < 1.0) return log_positive_moment(params.alpha, params.scale, lambda);
    return log_abs_moment_skewed(params.alpha, params.scale, lambda);
  }
  return log_abs_moment_general(params, lambda);
}

double abs_moment(const StableParams& params, double lambda) {
  if (lambda == 0.0) {
    params.validate();
    return 1.0;
  }
  return std::exp(log_abs_moment(params, lambda));
}

double levy_pdf(double z, double scale) {
  if (!(z > 0.0)) throw DomainError("levy_pdf: requires z > 0");
  if (!(scale > 0.0)) throw DomainError("levy_pdf: requires scale > 0");
  return scale / std::sqrt(2.0 * kPi) * std::exp(-scale * scale / (2.0 * z)) /
         (z * std::sqrt(z));
}

}  // namespace stable
}  // namespace skewproj
