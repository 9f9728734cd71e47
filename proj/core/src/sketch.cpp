#include "skewproj/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "skewproj/error.hpp"
#include "skewproj/random.hpp"

namespace skewproj {
namespace {

constexpr char kMagic[4] = {'S', 'K', 'S', 'M'};
constexpr std::uint16_t kFormatVersion = 1;

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>(value >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) {
    throw InputError("sketch file truncated");
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(buf[i]) << (8 * i);
  return value;
}

StableParams entry_params(double alpha) { return {alpha, 1.0, 1.0}; }

}  // namespace

double entry(std::uint64_t seed, std::uint64_t index, std::uint32_t j, double alpha) {
  const random::CmsInput in = random::cms_input(seed, index, j);
  return stable::sample(entry_params(alpha), in.u, in.w);
}

SkewedSketch::SkewedSketch(double alpha, std::uint32_t k, std::uint64_t seed,
                           Summation summation)
    : alpha_(alpha), seed_(seed), summation_(summation), sampler_(entry_params(alpha)) {
  if (k < 2) throw DomainError("sketch: k must be at least 2");
  acc_.assign(k, 0.0);
  if (summation_ == Summation::compensated) comp_.assign(k, 0.0);
}

void SkewedSketch::update(const StreamUpdate& u) {
  if (u.index == 0) throw InputError("sketch: stream indices start at 1");
  if (!std::isfinite(u.increment)) throw InputError("sketch: non-finite increment");
  ++update_count_;
  if (u.increment == 0.0) return;
  const std::uint32_t k = this->k();
  for (std::uint32_t j = 0; j < k; ++j) {
    const random::CmsInput in = random::cms_input(seed_, u.index, j + 1);
    const double delta = u.increment * sampler_(in.u, in.w);
    if (summation_ == Summation::plain) {
      acc_[j] += delta;
    } else {
      const double t = acc_[j] + delta;
      if (std::fabs(acc_[j]) >= std::fabs(delta)) {
        comp_[j] += (acc_[j] - t) + delta;
      } else {
        comp_[j] += (delta - t) + acc_[j];
      }
      acc_[j] = t;
    }
  }
}

bool SkewedSketch::compatible(const SkewedSketch& other) const {
  return alpha_ == other.alpha_ && k() == other.k() && seed_ == other.seed_;
}

void SkewedSketch::merge(const SkewedSketch& other) {
  if (!compatible(other)) {
    throw IncompatibleError("sketch merge: (alpha, k, seed) differ");
  }
  const std::vector<double> theirs = other.accumulators();
  for (std::size_t j = 0; j < acc_.size(); ++j) {
    if (summation_ == Summation::plain) {
      acc_[j] += theirs[j];
    } else {
      const double t = acc_[j] + theirs[j];
      if (std::fabs(acc_[j]) >= std::fabs(theirs[j])) {
        comp_[j] += (acc_[j] - t) + theirs[j];
      } else {
        comp_[j] += (theirs[j] - t) + acc_[j];
      }
      acc_[j] = t;
    }
  }
  update_count_ += other.update_count_;
}

std::vector<double> SkewedSketch::accumulators() const {
  std::vector<double> out(acc_);
  if (summation_ == Summation::compensated) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += comp_[j];
  }
  return out;
}

void SkewedSketch::restore(std::span<const double> accumulators, std::uint64_t update_count) {
  if (accumulators.size() != acc_.size()) throw InputError("sketch: accumulator count mismatch");
  std::copy(accumulators.begin(), accumulators.end(), acc_.begin());
  if (summation_ == Summation::compensated) std::fill(comp_.begin(), comp_.end(), 0.0);
  update_count_ = update_count;
}

void SkewedSketch::write(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  put_le<std::uint16_t>(out, kFormatVersion);
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(alpha_));
  put_le<std::uint32_t>(out, k());
  put_le<std::uint64_t>(out, seed_);
  put_le<std::uint64_t>(out, update_count_);
  for (double x : accumulators()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(x));
  if (!out) throw InputError("sketch: write failed");
}

SkewedSketch SkewedSketch::read(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof(magic));
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0) {
    throw InputError("sketch file: bad magic");
  }
  const auto version = get_le<std::uint16_t>(in);
  if (version != kFormatVersion) {
    throw InputError("sketch file: unsupported version " + std::to_string(version));
  }
  const double alpha = std::bit_cast<double>(get_le<std::uint64_t>(in));
  const auto k = get_le<std::uint32_t>(in);
  const auto seed = get_le<std::uint64_t>(in);
  const auto count = get_le<std::uint64_t>(in);
  SkewedSketch s(alpha, k, seed);
  std::vector<double> acc(k);
  for (auto& x : acc) x = std::bit_cast<double>(get_le<std::uint64_t>(in));
  s.restore(acc, count);
  return s;
}

std::string SkewedSketch::to_bytes() const {
  std::ostringstream out(std::ios::binary);
  write(out);
  return out.str();
}

SkewedSketch SkewedSketch::from_bytes(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return read(in);
}

SkewedSketch merge(const SkewedSketch& a, const SkewedSketch& b) {
  SkewedSketch out = a;
  out.merge(b);
  return out;
}

EstimateReport estimate(const SkewedSketch& sketch, Method method,
                        const EstimateOptions& options) {
  const double alpha = sketch.alpha();
  if (method == Method::hm && !(alpha < 1.0)) {
    throw ConfigError("estimate: hm requires alpha < 1");
  }
  if (method == Method::mle05 && alpha != 0.5) {
    throw ConfigError("estimate: mle05 requires alpha = 0.5");
  }
  const std::vector<double> x = sketch.accumulators();
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
    EstimateReport r;
    r.method = method;
    r.k = x.size();
    r.alpha = alpha;
    r.degenerate = true;
    switch (method) {
      case Method::gm: r.variance_factor = estimators::gm_variance_factor(alpha); break;
      case Method::gm_beta:
        r.variance_factor = x.size() > 2 ? static_cast<double>(x.size()) *
                                               estimators::gm_beta_variance(alpha, options.beta, x.size())
                                         : 0.0;
        break;
      case Method::hm: r.variance_factor = estimators::hm_variance_factor(alpha); break;
      case Method::mle05: r.variance_factor = 0.5; break;
      case Method::op: r.variance_factor = estimators::solve_optimal_lambda(alpha).g_min; break;
    }
    return r;
  }
  switch (method) {
    case Method::gm: return estimators::gm_estimate(x, alpha);
    case Method::gm_beta: return estimators::gm_estimate_beta(x, alpha, options.beta);
    case Method::hm: return estimators::hm_estimate(x, alpha, options.corrected);
    case Method::mle05: return estimators::mle05_estimate(x, options.corrected);
    case Method::op: return estimators::op_estimate(x, alpha, estimators::solve_optimal_lambda(alpha));
  }
  throw ConfigError("estimate: unknown method");
}

}  // namespace skewproj
