#ifndef SATQUAD_NUMERIC_HPP
#define SATQUAD_NUMERIC_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "satquad/error.hpp"

namespace satquad {

using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > std::numeric_limits<u128>::max() / a) {
    throw Error(Errc::kOverflow, "128-bit product overflow");
  }
  return a * b;
}

inline u128 checked_add(u128 a, u128 b) {
  if (b > std::numeric_limits<u128>::max() - a) {
    throw Error(Errc::kOverflow, "128-bit sum overflow");
  }
  return a + b;
}

inline u128 checked_pow(u128 base, unsigned exp) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

struct PrimePower {
  std::uint64_t p;
  unsigned h;
};

/// Decomposes q = p^h; nullopt when q is not a prime power.
constexpr std::optional<PrimePower> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned h = 0;
  while (q % p == 0) {
    q /= p;
    ++h;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, h};
}

constexpr bool is_prime_power(std::uint64_t q) { return prime_power(q).has_value(); }

/// Smallest prime power >= n.
constexpr std::uint64_t next_prime_power(std::uint64_t n) {
  if (n < 2) n = 2;
  while (!is_prime_power(n)) ++n;
  return n;
}

}  // namespace satquad

#endif  // SATQUAD_NUMERIC_HPP
