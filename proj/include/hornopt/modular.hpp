#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "hornopt/error.hpp"

namespace hornopt {

using BigInt = boost::multiprecision::cpp_int;
using Residue = std::uint64_t;

/// Arithmetic in Z/pZ for a prime p < 2^63.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus) : p_(modulus) {
    if (modulus < 2 || modulus >= (std::uint64_t{1} << 63)) {
      throw InvalidArgument("modulus must lie in [2, 2^63)");
    }
  }

  std::uint64_t modulus() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }

  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p_);
  }

  Residue pow(Residue base, std::uint64_t e) const noexcept {
    Residue acc = 1 % p_;
    base %= p_;
    while (e != 0) {
      if (e & 1U) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return acc;
  }

  Residue reduce(const BigInt& v) const {
    BigInt r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Residue>(r);
  }

 private:
  std::uint64_t p_;
};

/// 2^31 - 1, the default modulus of the semantic-preservation checks.
inline constexpr std::uint64_t kMersenne31 = 2147483647ULL;

}  // namespace hornopt
