#pragma once

// xoshiro256** seeded through splitmix64.
//
//   splitmix64:  z = (x += 0x9e3779b97f4a7c15)
//                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//                z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//                return z ^ (z >> 31)
//
//   xoshiro256**: result = rotl(s1 * 5, 7) * 9
//                 t = s1 << 17
//                 s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3
//                 s2 ^= t;  s3 = rotl(s3, 45)
//
// Bounded integers use Lemire's multiply-and-reject, doubles take the top
// 53 bits. Both are fixed so sequences match across platforms.

#include <array>
#include <bit>
#include <cstdint>

namespace hornopt {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

/// Seed for stream `index` derived from `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t s = master ^ (index * 0xd1b54a32d192ed03ULL);
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t out = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17U;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return out;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64U);
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11U) * 0x1.0p-53; }

  std::uint64_t seed() const noexcept { return seed_; }

  bool operator==(const Rng&) const = default;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace hornopt
