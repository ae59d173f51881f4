#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "chromalg/core/error.hpp"

namespace chromalg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Representative of a mod n in [0, n).
inline Integer mod_floor(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

struct ExtGcd {
  Integer g, s, t;  // s*a + t*b = g, g >= 0
};

inline ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = r1; r1 = r2;
    Integer s2 = s0 - q * s1;
    s0 = s1; s1 = s2;
    Integer t2 = t0 - q * t1;
    t0 = t1; t1 = t2;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  return {r0, s0, t0};
}

inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& n) {
  auto e = ext_gcd(mod_floor(a, n), n);
  if (e.g != 1) return std::nullopt;
  return mod_floor(e.s, n);
}

inline Integer ipow(Integer base, std::uint64_t e) {
  Integer r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline std::uint64_t upow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

inline std::string to_decimal(const Integer& a) { return a.str(); }

inline Integer parse_integer(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) raise(ErrorCode::InvalidInput, "ring_core", "empty integer literal");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9')
      raise(ErrorCode::InvalidInput, "ring_core", "malformed integer literal '" + std::string(s) + "'");
  Integer v(std::string(s.substr(i)));
  return s[0] == '-' ? Integer(-v) : v;
}

inline bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int q : small) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::mt19937_64 gen(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 32, gen);
}

// Floor of the k-th root.
inline Integer iroot(const Integer& n, unsigned k) {
  if (n < 2 || k == 1) return n;
  Integer lo = 1, hi = Integer(1) << (msb(n) / k + 1);
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (ipow(mid, k) <= n) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

struct PrimePower {
  Integer p;
  unsigned k;
};

inline std::optional<PrimePower> as_prime_power(const Integer& n) {
  if (n < 2) return std::nullopt;
  unsigned bits = msb(n) + 1;
  for (unsigned k = bits; k >= 2; --k) {
    Integer r = iroot(n, k);
    if (r >= 2 && ipow(r, k) == n && is_probable_prime(r)) return PrimePower{r, k};
  }
  if (is_probable_prime(n)) return PrimePower{n, 1};
  return std::nullopt;
}

inline unsigned bit_length(const Integer& n) { return n == 0 ? 0u : unsigned(msb(abs(n))) + 1; }

// p-adic valuation of a nonzero integer.
inline unsigned valuation(Integer a, const Integer& p) {
  unsigned v = 0;
  a = abs(a);
  while (a != 0 && a % p == 0) { a /= p; ++v; }
  return v;
}

}  // namespace chromalg
