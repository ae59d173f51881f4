#pragma once

#include <concepts>
#include <optional>
#include <string>

#include "chromalg/core/error.hpp"
#include "chromalg/core/integer.hpp"

namespace chromalg {

// A ring context: a value type plus the operations on it. Contexts are small,
// copyable and immutable.
template <class R>
concept CommutativeRing = requires(const R& r, const typename R::value_type& a,
                                   const typename R::value_type& b, const Integer& n) {
  typename R::value_type;
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.add(a, b) } -> std::convertible_to<typename R::value_type>;
  { r.sub(a, b) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, b) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, b) } -> std::convertible_to<bool>;
  { r.from_integer(n) } -> std::convertible_to<typename R::value_type>;
  { r.same_ring(r) } -> std::convertible_to<bool>;
};

// Contexts that can test units and produce inverses.
template <class R>
concept RingWithUnits = CommutativeRing<R> && requires(const R& r, const typename R::value_type& a) {
  { r.inverse(a) } -> std::convertible_to<std::optional<typename R::value_type>>;
};

template <CommutativeRing R>
typename R::value_type ring_pow(const R& r, typename R::value_type base, std::uint64_t e) {
  auto acc = r.one();
  while (e) {
    if (e & 1) acc = r.mul(acc, base);
    e >>= 1;
    if (e) base = r.mul(base, base);
  }
  return acc;
}

class IntegerRing {
 public:
  using value_type = Integer;
  Integer zero() const { return 0; }
  Integer one() const { return 1; }
  Integer add(const Integer& a, const Integer& b) const { return a + b; }
  Integer sub(const Integer& a, const Integer& b) const { return a - b; }
  Integer mul(const Integer& a, const Integer& b) const { return a * b; }
  Integer neg(const Integer& a) const { return -a; }
  bool is_zero(const Integer& a) const { return a == 0; }
  bool equal(const Integer& a, const Integer& b) const { return a == b; }
  Integer from_integer(const Integer& n) const { return n; }
  bool same_ring(const IntegerRing&) const { return true; }
  std::optional<Integer> inverse(const Integer& a) const {
    if (a == 1 || a == -1) return a;
    return std::nullopt;
  }
  std::string to_string(const Integer& a) const { return to_decimal(a); }
  Integer parse(std::string_view s) const { return parse_integer(s); }
  std::string describe() const { return "Z"; }
  // Exact division; nullopt when b does not divide a.
  std::optional<Integer> divide(const Integer& a, const Integer& b) const {
    if (b == 0) return a == 0 ? std::optional<Integer>(0) : std::nullopt;
    if (a % b != 0) return std::nullopt;
    return a / b;
  }
  bool is_unit(const Integer& a) const { return a == 1 || a == -1; }
  bool is_nonzero_divisor(const Integer& a) const { return a != 0; }
  Integer exact_div(const Integer& a, const Integer& d) const {
    if (d == 0) raise(ErrorCode::ZeroDivisorDivisor, "ring_core", "division by zero");
    if (a % d != 0) raise(ErrorCode::NotDivisible, "ring_core", to_decimal(a) + " is not divisible by " + to_decimal(d));
    return a / d;
  }
};

// Z/N with representatives in [0, N).
class ModularRing {
 public:
  using value_type = Integer;

  explicit ModularRing(Integer modulus) : n_(std::move(modulus)) {
    if (n_ < 2) raise(ErrorCode::InvalidInput, "ring_core", "modulus must be at least 2");
  }

  const Integer& modulus() const { return n_; }
  Integer zero() const { return 0; }
  Integer one() const { return 1; }
  Integer add(const Integer& a, const Integer& b) const {
    Integer s = a + b;
    if (s >= n_) s -= n_;
    return s;
  }
  Integer sub(const Integer& a, const Integer& b) const {
    Integer s = a - b;
    if (s < 0) s += n_;
    return s;
  }
  Integer mul(const Integer& a, const Integer& b) const { return (a * b) % n_; }
  Integer neg(const Integer& a) const { return a == 0 ? Integer(0) : Integer(n_ - a); }
  bool is_zero(const Integer& a) const { return a == 0; }
  bool equal(const Integer& a, const Integer& b) const { return a == b; }
  Integer from_integer(const Integer& v) const { return mod_floor(v, n_); }
  bool same_ring(const ModularRing& o) const { return n_ == o.n_; }
  std::optional<Integer> inverse(const Integer& a) const { return mod_inverse(a, n_); }
  bool is_unit(const Integer& a) const { return gcd(a, n_) == 1; }
  // In a finite ring the nonzero divisors are the units.
  bool is_nonzero_divisor(const Integer& a) const { return is_unit(a); }
  Integer exact_div(const Integer& a, const Integer& d) const {
    auto inv = inverse(d);
    if (!inv) raise(ErrorCode::ZeroDivisorDivisor, "ring_core", to_decimal(d) + " is a zero divisor mod " + to_decimal(n_));
    return mul(a, *inv);
  }
  std::string to_string(const Integer& a) const { return to_decimal(a); }
  Integer parse(std::string_view s) const { return from_integer(parse_integer(s)); }
  std::string describe() const { return "Z/" + to_decimal(n_); }

  // Prime-power decomposition N = p^K, if it exists.
  std::optional<PrimePower> prime_power() const { return as_prime_power(n_); }

 private:
  Integer n_;
};

class RationalField {
 public:
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational neg(const Rational& a) const { return -a; }
  bool is_zero(const Rational& a) const { return a == 0; }
  bool equal(const Rational& a, const Rational& b) const { return a == b; }
  Rational from_integer(const Integer& n) const { return Rational(n); }
  bool same_ring(const RationalField&) const { return true; }
  std::optional<Rational> inverse(const Rational& a) const {
    if (a == 0) return std::nullopt;
    return Rational(1) / a;
  }
  std::string to_string(const Rational& a) const {
    return denominator(a) == 1 ? to_decimal(numerator(a))
                               : to_decimal(numerator(a)) + "/" + to_decimal(denominator(a));
  }
  Rational parse(std::string_view s) const {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) raise(ErrorCode::InvalidInput, "series", "zero denominator");
    return Rational(parse_integer(s.substr(0, slash)), den);
  }
  std::string describe() const { return "Q"; }
};

}  // namespace chromalg
