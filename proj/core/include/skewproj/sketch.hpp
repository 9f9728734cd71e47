#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "skewproj/estimators.hpp"
#include "skewproj/stable.hpp"

namespace skewproj {

// One Turnstile tuple: add `increment` to coordinate `index` (>= 1).
struct StreamUpdate {
  std::uint64_t index = 1;
  double increment = 0.0;
};

// Projection entry r_ij ~ S(alpha, 1, 1), regenerated from (seed, index, j).
double entry(std::uint64_t seed, std::uint64_t index, std::uint32_t j, double alpha);

enum class Summation { plain, compensated };

class SkewedSketch {
 public:
  SkewedSketch(double alpha, std::uint32_t k, std::uint64_t seed,
               Summation summation = Summation::compensated);

  void update(const StreamUpdate& u);
  void update(std::uint64_t index, double increment) { update({index, increment}); }

  // Adds other's accumulators into this sketch. Throws IncompatibleError when
  // (alpha, k, seed) differ.
  void merge(const SkewedSketch& other);
  bool compatible(const SkewedSketch& other) const;

  double alpha() const { return alpha_; }
  std::uint32_t k() const { return static_cast<std::uint32_t>(acc_.size()); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t update_count() const { return update_count_; }
  Summation summation() const { return summation_; }

  // Current x_j values.
  std::vector<double> accumulators() const;

  void write(std::ostream& out) const;
  static SkewedSketch read(std::istream& in);
  std::string to_bytes() const;
  static SkewedSketch from_bytes(const std::string& bytes);

  // Replaces the state; used by deserialization.
  void restore(std::span<const double> accumulators, std::uint64_t update_count);

 private:
  double alpha_;
  std::uint64_t seed_;
  Summation summation_;
  stable::StableSampler sampler_;
  std::vector<double> acc_;
  std::vector<double> comp_;
  std::uint64_t update_count_ = 0;
};

SkewedSketch merge(const SkewedSketch& a, const SkewedSketch& b);

struct EstimateOptions {
  double beta = 1.0;       // gm-beta only
  bool corrected = true;   // hm and mle05
};

// Estimates F_(alpha) from the sketch. Requires A_t[i] >= 0 at evaluation time
// for alpha < 1. An all-zero sketch yields 0 flagged as degenerate.
EstimateReport estimate(const SkewedSketch& sketch, Method method,
                        const EstimateOptions& options = {});

}  // namespace skewproj
