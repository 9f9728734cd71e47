#pragma once

#include <array>
#include <cstdint>

namespace skewproj::random {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32-10 block function.
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Maps 64 random bits to a uniform on the open interval (0, 1).
inline double open_uniform(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

struct UniformPair {
  double first;
  double second;
};

// Two independent open uniforms from the block at counter (a, b) under key seed.
UniformPair uniform_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// One stable-sampler input pair: u in (-pi/2, pi/2), w ~ Exp(1).
struct CmsInput {
  double u;
  double w;
};
CmsInput cms_input(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace skewproj::random
