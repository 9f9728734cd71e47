#pragma once

namespace skewproj {

// Parameters of the stable law S(alpha, beta, scale) with characteristic
// function exp(-scale |t|^alpha (1 - i beta sgn(t) tan(pi alpha / 2))).
struct StableParams {
  double alpha = 0.5;
  double beta = 1.0;
  double scale = 1.0;

  // Throws DomainError unless 0 < alpha <= 2, alpha != 1, |beta| <= 1, scale > 0.
  void validate() const;
};

namespace stable {

// alpha for alpha < 1, 2 - alpha for alpha > 1; kappa(2) == 0.
double kappa(double alpha);

// Precomputed Chambers-Mallows-Stuck transform for fixed parameters.
class StableSampler {
 public:
  explicit StableSampler(const StableParams& params);
  double operator()(double u, double w) const;
  const StableParams& params() const { return params_; }

 private:
  StableParams params_;
  double theta0_ = 0.0;
  double log_prefactor_ = 0.0;
  double inv_alpha_ = 0.0;
  double tail_exponent_ = 0.0;
  double sqrt_scale_ = 1.0;
};

// Chambers-Mallows-Stuck transform of u in (-pi/2, pi/2) and w > 0.
// With u uniform and w unit exponential the result is S(alpha, beta, scale).
double sample(const StableParams& params, double u, double w);

// E|Z|^lambda for Z ~ S(alpha, beta, scale). For alpha < 1 and beta = 1 any
// lambda < alpha is allowed; otherwise -1 < lambda < alpha.
double abs_moment(const StableParams& params, double lambda);
double log_abs_moment(const StableParams& params, double lambda);

// The individual closed forms behind abs_moment, all in log space.
// General beta, -1 < lambda < alpha.
double log_abs_moment_general(const StableParams& params, double lambda);
// beta = 1 simplification of the general form, -1 < lambda < alpha.
double log_abs_moment_skewed(double alpha, double scale, double lambda);
// alpha < 1, beta = 1 (positive support), any lambda < alpha.
double log_positive_moment(double alpha, double scale, double lambda);

// Density of S(0.5, 1, scale), the Levy law.
double levy_pdf(double z, double scale);

}  // namespace stable
}  // namespace skewproj
