#include "skewproj/random.hpp"

#include <cmath>

#include "skewproj/numerics.hpp"

namespace skewproj::random {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

UniformPair uniform_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const PhiloxCounter ctr = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                             static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  const PhiloxKey key = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const PhiloxCounter r = philox4x32(ctr, key);
  const std::uint64_t x = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
  const std::uint64_t y = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
  return {open_uniform(x), open_uniform(y)};
}

CmsInput cms_input(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const UniformPair p = uniform_pair(seed, a, b);
  return {numerics::kPi * (p.first - 0.5), -std::log(p.second)};
}

}  // namespace skewproj::random
