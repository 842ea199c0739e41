#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace stablespec {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stateless 64-bit mixer; used to derive child stream ids from parent ids.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
  splitmix64(s);
  return splitmix64(s);
}

/// xoshiro256++ engine. Satisfies UniformRandomBitGenerator, but the
/// samplers in this library only use next() and the explicit uniform
/// helpers below, so outputs do not depend on the standard library's
/// implementation-defined distributions.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return next(); }

  constexpr std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  constexpr double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

/// Identifies one reproducible random sequence. Child streams are derived
/// by hashing (stream_id, child index), so replicate r of an experiment
/// always sees the same numbers regardless of scheduling order.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  constexpr RngStream child(std::uint64_t index) const {
    return RngStream{master_seed, mix64(stream_id, index)};
  }

  constexpr Xoshiro256pp engine() const {
    return Xoshiro256pp(mix64(master_seed, stream_id ^ 0xA0761D6478BD642FULL));
  }

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;
};

}  // namespace stablespec
