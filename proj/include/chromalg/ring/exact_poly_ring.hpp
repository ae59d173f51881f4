#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/integer.hpp"
#include "chromalg/linalg/howell.hpp"
#include "chromalg/ring/finite_algebra.hpp"
#include "chromalg/ring/tower.hpp"

namespace chromalg {

class PolyElement;

// Z[x1..xm]/(g_1(x1), .., g_m(xm)) with monic g_k, in normal form over the
// monomial basis. Units, zero divisors and exact quotients come from the
// multiplication matrix, solved over Q.
class ExactPolyRing {
 public:
  using value_type = PolyElement;

  ExactPolyRing() = default;
  ExactPolyRing(std::vector<std::string> vars, std::vector<std::vector<Integer>> relations)
      : t_(std::make_shared<MonicTower>(build_tower(0, std::move(vars), std::move(relations)))) {}

  std::size_t rank() const { return t_->rank(); }
  const std::vector<std::string>& vars() const { return t_->vars; }
  const std::vector<std::vector<Integer>>& relations() const { return t_->relations; }
  const std::vector<Exponent>& basis() const { return t_->basis; }
  std::string label(std::size_t i) const { return t_->label(i); }
  const MonicTower& tower() const { return *t_; }

  bool same_ring(const ExactPolyRing& o) const {
    return t_ == o.t_ || (t_->vars == o.t_->vars && t_->relations == o.t_->relations);
  }

  PolyElement element(Vec coords) const;
  PolyElement zero() const;
  PolyElement one() const;
  PolyElement from_integer(const Integer& n) const;
  PolyElement basis_element(std::size_t i) const;
  PolyElement generator(std::size_t k) const;

  PolyElement add(const PolyElement& a, const PolyElement& b) const;
  PolyElement sub(const PolyElement& a, const PolyElement& b) const;
  PolyElement mul(const PolyElement& a, const PolyElement& b) const;
  PolyElement neg(const PolyElement& a) const;
  PolyElement scale(const PolyElement& a, const Integer& c) const;
  PolyElement pow(const PolyElement& a, std::uint64_t e) const;
  bool is_zero(const PolyElement& a) const;
  bool equal(const PolyElement& a, const PolyElement& b) const;

  // Over Z the ring is torsion free of rank r, so a nilpotent element has e^r = 0.
  std::uint64_t nilpotency_bound() const { return rank(); }
  bool is_nilpotent(const PolyElement& e) const;
  std::optional<std::uint64_t> nilpotency_index(const PolyElement& e) const;

  // Rows e*b_i over the basis.
  std::vector<Vec> multiplication_rows(const PolyElement& e) const;
  std::optional<PolyElement> inverse(const PolyElement& e) const;
  bool is_unit(const PolyElement& e) const;
  // Torsion free: a zero divisor is exactly a singular multiplication matrix.
  bool is_nonzero_divisor(const PolyElement& e) const;
  PolyElement exact_div(const PolyElement& a, const PolyElement& d) const;

  // The same presentation over Z/n, and the image of an element there.
  FiniteAlgebra reduced_mod(const Integer& n) const {
    return FiniteAlgebra::from_presentation(n, t_->vars, t_->relations);
  }
  RingElement reduce(const PolyElement& e, const FiniteAlgebra& target) const;

  std::string to_string(const PolyElement& e) const;
  std::string describe() const;

 private:
  void check(const PolyElement& a) const;
  std::shared_ptr<const MonicTower> t_;
};

class PolyElement {
 public:
  PolyElement() = default;
  PolyElement(ExactPolyRing parent, Vec coords) : parent_(std::move(parent)), coords_(std::move(coords)) {}
  const ExactPolyRing& parent() const { return parent_; }
  const Vec& coords() const { return coords_; }
  bool is_zero() const { return detail::all_zero(coords_); }

  friend PolyElement operator+(const PolyElement& a, const PolyElement& b) { return a.parent_.add(a, b); }
  friend PolyElement operator-(const PolyElement& a, const PolyElement& b) { return a.parent_.sub(a, b); }
  friend PolyElement operator*(const PolyElement& a, const PolyElement& b) { return a.parent_.mul(a, b); }
  friend PolyElement operator-(const PolyElement& a) { return a.parent_.neg(a); }
  friend bool operator==(const PolyElement& a, const PolyElement& b) { return a.parent_.equal(a, b); }
  std::string to_string() const { return parent_.to_string(*this); }

 private:
  ExactPolyRing parent_;
  Vec coords_;
};

inline void ExactPolyRing::check(const PolyElement& a) const {
  if (!same_ring(a.parent())) raise(ErrorCode::RingMismatch, "ring_core", "element belongs to a different ring");
}
inline PolyElement ExactPolyRing::element(Vec coords) const {
  if (coords.size() != rank()) raise(ErrorCode::InvalidInput, "ring_core", "coordinate vector has wrong length");
  return PolyElement(*this, std::move(coords));
}
inline PolyElement ExactPolyRing::zero() const { return PolyElement(*this, Vec(rank(), 0)); }
inline PolyElement ExactPolyRing::one() const { return from_integer(1); }
inline PolyElement ExactPolyRing::from_integer(const Integer& n) const {
  Vec v(rank(), 0);
  v[0] = n;
  return PolyElement(*this, std::move(v));
}
inline PolyElement ExactPolyRing::basis_element(std::size_t i) const {
  Vec v(rank(), 0);
  v.at(i) = 1;
  return PolyElement(*this, std::move(v));
}
inline PolyElement ExactPolyRing::generator(std::size_t k) const {
  Exponent e(vars().size(), 0);
  e.at(k) = 1;
  auto it = t_->index.find(e);
  if (it != t_->index.end()) return basis_element(it->second);
  return from_integer(-t_->relations.at(k)[0]);
}
inline PolyElement ExactPolyRing::add(const PolyElement& a, const PolyElement& b) const {
  check(a), check(b);
  Vec v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = a.coords()[i] + b.coords()[i];
  return PolyElement(*this, std::move(v));
}
inline PolyElement ExactPolyRing::sub(const PolyElement& a, const PolyElement& b) const {
  check(a), check(b);
  Vec v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = a.coords()[i] - b.coords()[i];
  return PolyElement(*this, std::move(v));
}
inline PolyElement ExactPolyRing::mul(const PolyElement& a, const PolyElement& b) const {
  check(a), check(b);
  return PolyElement(*this, table_multiply(t_->table, rank(), a.coords(), b.coords(), 0));
}
inline PolyElement ExactPolyRing::neg(const PolyElement& a) const {
  check(a);
  Vec v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = -a.coords()[i];
  return PolyElement(*this, std::move(v));
}
inline PolyElement ExactPolyRing::scale(const PolyElement& a, const Integer& c) const {
  check(a);
  Vec v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = a.coords()[i] * c;
  return PolyElement(*this, std::move(v));
}
inline PolyElement ExactPolyRing::pow(const PolyElement& a, std::uint64_t e) const {
  PolyElement acc = one(), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}
inline bool ExactPolyRing::is_zero(const PolyElement& a) const {
  check(a);
  return a.is_zero();
}
inline bool ExactPolyRing::equal(const PolyElement& a, const PolyElement& b) const {
  check(a), check(b);
  return a.coords() == b.coords();
}
inline bool ExactPolyRing::is_nilpotent(const PolyElement& e) const { return pow(e, nilpotency_bound()).is_zero(); }
inline std::optional<std::uint64_t> ExactPolyRing::nilpotency_index(const PolyElement& e) const {
  if (!is_nilpotent(e)) return std::nullopt;
  PolyElement acc = one();
  for (std::uint64_t k = 0;; ++k) {
    if (acc.is_zero()) return k;
    acc = mul(acc, e);
  }
}
namespace detail {

// Unique x with sum_i x_i rows[i] = target over Q; nullopt when the rows are
// dependent. `singular` reports that case.
inline std::optional<std::vector<Rational>> solve_rational(const std::vector<Vec>& rows, const Vec& target,
                                                          bool* singular = nullptr) {
  const std::size_t n = rows.size();
  // equation k: sum_i x_i rows[i][k] = target[k]
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) a[k][i] = Rational(rows[i][k]);
    a[k][n] = Rational(target[k]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) {
      if (singular) *singular = true;
      return std::nullopt;
    }
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  if (singular) *singular = false;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

inline std::optional<Vec> integral(const std::vector<Rational>& x) {
  Vec out;
  for (const auto& q : x) {
    if (denominator(q) != 1) return std::nullopt;
    out.push_back(numerator(q));
  }
  return out;
}

}  // namespace detail

inline std::vector<Vec> ExactPolyRing::multiplication_rows(const PolyElement& e) const {
  check(e);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < rank(); ++i) rows.push_back(mul(e, basis_element(i)).coords());
  return rows;
}
inline std::optional<PolyElement> ExactPolyRing::inverse(const PolyElement& e) const {
  auto x = detail::solve_rational(multiplication_rows(e), one().coords());
  if (!x) return std::nullopt;
  auto v = detail::integral(*x);
  if (!v) return std::nullopt;
  return element(std::move(*v));
}
inline bool ExactPolyRing::is_unit(const PolyElement& e) const { return inverse(e).has_value(); }
inline bool ExactPolyRing::is_nonzero_divisor(const PolyElement& e) const {
  bool singular = false;
  detail::solve_rational(multiplication_rows(e), zero().coords(), &singular);
  return !singular;
}
inline PolyElement ExactPolyRing::exact_div(const PolyElement& a, const PolyElement& d) const {
  check(a);
  bool singular = false;
  auto x = detail::solve_rational(multiplication_rows(d), a.coords(), &singular);
  if (singular) raise(ErrorCode::ZeroDivisorDivisor, "ring_core", "divisor " + to_string(d) + " is a zero divisor");
  auto v = detail::integral(*x);
  if (!v) raise(ErrorCode::NotDivisible, "ring_core", to_string(a) + " is not divisible by " + to_string(d));
  return element(std::move(*v));
}
inline RingElement ExactPolyRing::reduce(const PolyElement& e, const FiniteAlgebra& target) const {
  check(e);
  if (target.rank() != rank() || target.relations().size() != relations().size())
    raise(ErrorCode::RingMismatch, "ring_core", "target is not a reduction of this presentation");
  return target.element(e.coords());
}
inline std::string ExactPolyRing::to_string(const PolyElement& e) const {
  std::string s;
  for (std::size_t i = 0; i < rank(); ++i) {
    const Integer& c = e.coords()[i];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) s += to_decimal(c);
    else if (c == 1) s += label(i);
    else s += to_decimal(c) + "*" + label(i);
  }
  return s.empty() ? "0" : s;
}
inline std::string ExactPolyRing::describe() const {
  std::string s = "Z[";
  for (std::size_t k = 0; k < vars().size(); ++k) s += (k ? "," : "") + vars()[k];
  return s + "] rank " + std::to_string(rank());
}

}  // namespace chromalg
