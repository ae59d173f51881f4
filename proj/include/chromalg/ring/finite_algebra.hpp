#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/integer.hpp"
#include "chromalg/linalg/howell.hpp"
#include "chromalg/ring/tower.hpp"

namespace chromalg {

class RingElement;

// A commutative ring that is a free Z/N-module of finite rank with a
// structure-constant table, optionally taken modulo an ideal submodule.
// Cheap to copy: the data is shared and immutable.
class FiniteAlgebra {
 public:
  using value_type = RingElement;

  struct Data {
    Integer modulus;
    std::size_t rank = 0;
    std::vector<std::string> labels;
    std::vector<std::string> vars;
    std::vector<Exponent> basis;                  // empty when built from a raw table
    std::vector<std::vector<Integer>> relations;  // monic tower relations, if any
    std::vector<SparseVec> table;
    std::vector<std::size_t> generators;  // basis indices of distinguished generators
    HowellForm ideal{2, 0};
  };

  FiniteAlgebra() = default;

  static FiniteAlgebra from_presentation(Integer modulus, std::vector<std::string> vars,
                                         std::vector<std::vector<Integer>> relations) {
    if (modulus < 2) raise(ErrorCode::InvalidInput, "ring_core", "base modulus must be at least 2");
    MonicTower t = build_tower(modulus, std::move(vars), std::move(relations));
    auto d = std::make_shared<Data>();
    d->modulus = t.modulus;
    d->rank = t.rank();
    for (std::size_t i = 0; i < t.rank(); ++i) d->labels.push_back(t.label(i));
    d->vars = t.vars;
    d->basis = t.basis;
    d->relations = t.relations;
    d->table = std::move(t.table);
    for (std::size_t k = 0; k < d->vars.size(); ++k) {
      Exponent e(d->vars.size(), 0);
      e[k] = 1;
      auto it = t.index.find(e);
      // a degree-1 relation makes x_k a scalar; the generator is then not a basis element
      d->generators.push_back(it == t.index.end() ? std::size_t(-1) : it->second);
    }
    d->ideal = HowellForm(d->modulus, d->rank);
    return FiniteAlgebra(std::move(d));
  }

  // table[i][j] = coordinates of b_i * b_j. Basis element 0 must be the identity.
  static FiniteAlgebra from_table(Integer modulus, std::vector<std::string> labels,
                                  const std::vector<std::vector<Vec>>& table,
                                  std::vector<std::size_t> generators = {}) {
    if (modulus < 2) raise(ErrorCode::InvalidInput, "ring_core", "base modulus must be at least 2");
    auto d = std::make_shared<Data>();
    d->modulus = modulus;
    d->rank = table.size();
    if (d->rank == 0) raise(ErrorCode::InvalidInput, "ring_core", "rank must be positive");
    if (labels.size() != d->rank) raise(ErrorCode::InvalidInput, "ring_core", "one label per basis element");
    d->labels = std::move(labels);
    d->generators = std::move(generators);
    d->table.resize(d->rank * d->rank);
    for (std::size_t i = 0; i < d->rank; ++i) {
      if (table[i].size() != d->rank) raise(ErrorCode::InvalidInput, "ring_core", "table must be square");
      for (std::size_t j = 0; j < d->rank; ++j) {
        const Vec& v = table[i][j];
        if (v.size() != d->rank) raise(ErrorCode::InvalidInput, "ring_core", "table entry has wrong length");
        SparseVec sv;
        for (std::size_t k = 0; k < d->rank; ++k) {
          Integer c = mod_floor(v[k], modulus);
          if (c != 0) sv.emplace_back(std::uint32_t(k), c);
        }
        d->table[i * d->rank + j] = std::move(sv);
      }
    }
    d->ideal = HowellForm(d->modulus, d->rank);
    FiniteAlgebra a(std::move(d));
    if (!a.verify_axioms(1000))
      raise(ErrorCode::InvalidInput, "ring_core", "table is not a commutative associative unital ring");
    return a;
  }

  bool valid() const { return d_ != nullptr; }
  const Data& data() const { return *d_; }
  const Integer& modulus() const { return d_->modulus; }
  std::size_t rank() const { return d_->rank; }
  const std::vector<std::string>& labels() const { return d_->labels; }
  const std::vector<std::string>& vars() const { return d_->vars; }
  const std::vector<std::vector<Integer>>& relations() const { return d_->relations; }
  const std::vector<Exponent>& basis() const { return d_->basis; }
  const HowellForm& ideal() const { return d_->ideal; }
  bool is_quotient() const { return !d_->ideal.is_zero_span(); }
  std::size_t generator_count() const { return d_->generators.size(); }

  bool same_ring(const FiniteAlgebra& o) const {
    if (d_ == o.d_) return true;
    return d_->modulus == o.d_->modulus && d_->rank == o.d_->rank && d_->table == o.d_->table &&
           d_->ideal == o.d_->ideal;
  }

  // Reduce raw coordinates mod N and mod the ideal.
  Vec normalize(Vec v) const {
    if (v.size() != d_->rank) raise(ErrorCode::InvalidInput, "ring_core", "coordinate vector has wrong length");
    return d_->ideal.reduce(std::move(v));
  }

  RingElement element(Vec coords) const;
  RingElement zero() const;
  RingElement one() const;
  RingElement from_integer(const Integer& n) const;
  RingElement basis_element(std::size_t i) const;
  RingElement generator(std::size_t k) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement scale(const RingElement& a, const Integer& c) const;
  RingElement pow(const RingElement& a, std::uint64_t e) const;
  bool is_zero(const RingElement& a) const;
  bool equal(const RingElement& a, const RingElement& b) const;

  // Rows e*b_i, i = 0..rank-1, before reduction by the ideal.
  std::vector<Vec> multiplication_rows(const RingElement& e) const;

  // Generators (nonzero, reduced) of { r : e*r = 0 }.
  std::vector<RingElement> annihilator(const RingElement& e) const;
  bool is_nonzero_divisor(const RingElement& e) const;
  std::optional<RingElement> inverse(const RingElement& e) const;
  bool is_unit(const RingElement& e) const;
  RingElement exact_div(const RingElement& a, const RingElement& d) const;
  bool ideal_contains_one(const std::vector<RingElement>& gens) const;
  // Multipliers r_i with sum gens_i * r_i = target, if target lies in the ideal.
  std::optional<std::vector<RingElement>> ideal_membership(const std::vector<RingElement>& gens,
                                                           const RingElement& target) const;

  // Any nilpotent element satisfies e^bound = 0.
  std::uint64_t nilpotency_bound() const { return std::uint64_t(d_->rank) * bit_length(d_->modulus) + 1; }
  // Least k with e^k = 0, if e is nilpotent.
  std::optional<std::uint64_t> nilpotency_index(const RingElement& e) const;
  bool is_nilpotent(const RingElement& e) const;

  // The quotient by the ideal generated by `gens`, or nullopt when it is the zero ring.
  std::optional<FiniteAlgebra> quotient(const std::vector<RingElement>& gens) const;
  // The quotient by an ideal given as a Howell form over this ring's coordinates.
  std::optional<FiniteAlgebra> quotient_by(const HowellForm& ideal) const {
    if (ideal.is_everything()) return std::nullopt;
    auto d = std::make_shared<Data>(*d_);
    d->ideal = ideal;
    return FiniteAlgebra(std::move(d));
  }

  // Rows spanning the ideal generated by `gens`, together with the current ideal.
  std::vector<Vec> ideal_rows(const std::vector<RingElement>& gens) const;

  std::string to_string(const RingElement& e) const;
  std::string describe() const;

  bool verify_axioms(std::size_t samples) const;

 private:
  explicit FiniteAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  void check(const RingElement& a) const;
  Vec raw_mul(const Vec& a, const Vec& b) const {
    return table_multiply(d_->table, d_->rank, a, b, d_->modulus);
  }

  std::shared_ptr<const Data> d_;
};

class RingElement {
 public:
  RingElement() = default;
  RingElement(FiniteAlgebra parent, Vec coords) : parent_(std::move(parent)), coords_(std::move(coords)) {}

  const FiniteAlgebra& parent() const { return parent_; }
  const Vec& coords() const { return coords_; }
  bool is_zero() const { return detail::all_zero(coords_); }

  friend RingElement operator+(const RingElement& a, const RingElement& b) { return a.parent_.add(a, b); }
  friend RingElement operator-(const RingElement& a, const RingElement& b) { return a.parent_.sub(a, b); }
  friend RingElement operator*(const RingElement& a, const RingElement& b) { return a.parent_.mul(a, b); }
  friend RingElement operator-(const RingElement& a) { return a.parent_.neg(a); }
  friend bool operator==(const RingElement& a, const RingElement& b) { return a.parent_.equal(a, b); }

  std::string to_string() const { return parent_.to_string(*this); }

 private:
  FiniteAlgebra parent_;
  Vec coords_;
};

inline void FiniteAlgebra::check(const RingElement& a) const {
  if (!same_ring(a.parent()))
    raise(ErrorCode::RingMismatch, "ring_core", "element belongs to a different ring");
}

inline RingElement FiniteAlgebra::element(Vec coords) const { return RingElement(*this, normalize(std::move(coords))); }
inline RingElement FiniteAlgebra::zero() const { return RingElement(*this, Vec(d_->rank, 0)); }
inline RingElement FiniteAlgebra::one() const { return from_integer(1); }
inline RingElement FiniteAlgebra::from_integer(const Integer& n) const {
  Vec v(d_->rank, 0);
  v[0] = n;
  return element(std::move(v));
}
inline RingElement FiniteAlgebra::basis_element(std::size_t i) const {
  Vec v(d_->rank, 0);
  v.at(i) = 1;
  return element(std::move(v));
}
inline RingElement FiniteAlgebra::generator(std::size_t k) const {
  std::size_t idx = d_->generators.at(k);
  if (idx != std::size_t(-1)) return basis_element(idx);
  // x_k = -c_0 when its relation is x_k + c_0
  return from_integer(-d_->relations.at(k)[0]);
}

inline RingElement FiniteAlgebra::add(const RingElement& a, const RingElement& b) const {
  check(a), check(b);
  Vec v(d_->rank);
  for (std::size_t i = 0; i < d_->rank; ++i) v[i] = a.coords()[i] + b.coords()[i];
  return element(std::move(v));
}
inline RingElement FiniteAlgebra::sub(const RingElement& a, const RingElement& b) const {
  check(a), check(b);
  Vec v(d_->rank);
  for (std::size_t i = 0; i < d_->rank; ++i) v[i] = a.coords()[i] - b.coords()[i];
  return element(std::move(v));
}
inline RingElement FiniteAlgebra::mul(const RingElement& a, const RingElement& b) const {
  check(a), check(b);
  return element(raw_mul(a.coords(), b.coords()));
}
inline RingElement FiniteAlgebra::neg(const RingElement& a) const {
  check(a);
  Vec v(d_->rank);
  for (std::size_t i = 0; i < d_->rank; ++i) v[i] = -a.coords()[i];
  return element(std::move(v));
}
inline RingElement FiniteAlgebra::scale(const RingElement& a, const Integer& c) const {
  check(a);
  Vec v(d_->rank);
  for (std::size_t i = 0; i < d_->rank; ++i) v[i] = a.coords()[i] * c;
  return element(std::move(v));
}
inline RingElement FiniteAlgebra::pow(const RingElement& a, std::uint64_t e) const {
  RingElement acc = one(), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}
inline bool FiniteAlgebra::is_zero(const RingElement& a) const {
  check(a);
  return a.is_zero();
}
inline bool FiniteAlgebra::equal(const RingElement& a, const RingElement& b) const {
  check(a), check(b);
  return a.coords() == b.coords();
}

inline std::vector<Vec> FiniteAlgebra::multiplication_rows(const RingElement& e) const {
  check(e);
  std::vector<Vec> rows;
  rows.reserve(d_->rank);
  Vec unit(d_->rank, 0);
  for (std::size_t i = 0; i < d_->rank; ++i) {
    unit[i] = 1;
    rows.push_back(raw_mul(e.coords(), unit));
    unit[i] = 0;
  }
  return rows;
}

inline std::vector<RingElement> FiniteAlgebra::annihilator(const RingElement& e) const {
  CombinationSolver solver(d_->modulus, d_->rank, multiplication_rows(e), d_->ideal.rows());
  std::vector<RingElement> out;
  for (auto& c : solver.relations()) {
    RingElement r = element(std::move(c));
    if (!r.is_zero()) out.push_back(std::move(r));
  }
  return out;
}

inline std::optional<RingElement> FiniteAlgebra::inverse(const RingElement& e) const {
  CombinationSolver solver(d_->modulus, d_->rank, multiplication_rows(e), d_->ideal.rows());
  auto c = solver.express(one().coords());
  if (!c) return std::nullopt;
  return element(std::move(*c));
}

inline bool FiniteAlgebra::is_nonzero_divisor(const RingElement& e) const { return annihilator(e).empty(); }
inline bool FiniteAlgebra::is_unit(const RingElement& e) const { return inverse(e).has_value(); }

inline RingElement FiniteAlgebra::exact_div(const RingElement& a, const RingElement& d) const {
  check(a);
  CombinationSolver solver(d_->modulus, d_->rank, multiplication_rows(d), d_->ideal.rows());
  for (const auto& c : solver.relations())
    if (!detail::all_zero(normalize(c)))
      raise(ErrorCode::ZeroDivisorDivisor, "ring_core", "divisor " + to_string(d) + " is a zero divisor");
  auto c = solver.express(a.coords());
  if (!c) raise(ErrorCode::NotDivisible, "ring_core", to_string(a) + " is not divisible by " + to_string(d));
  return element(std::move(*c));
}

inline std::vector<Vec> FiniteAlgebra::ideal_rows(const std::vector<RingElement>& gens) const {
  std::vector<Vec> rows = d_->ideal.rows();
  for (const auto& g : gens) {
    auto r = multiplication_rows(g);
    rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  return rows;
}

inline bool FiniteAlgebra::ideal_contains_one(const std::vector<RingElement>& gens) const {
  HowellForm h(d_->modulus, d_->rank, ideal_rows(gens));
  return h.contains(one().coords());
}

inline std::optional<std::vector<RingElement>> FiniteAlgebra::ideal_membership(
    const std::vector<RingElement>& gens, const RingElement& target) const {
  check(target);
  std::vector<Vec> rows;
  for (const auto& g : gens) {
    auto r = multiplication_rows(g);
    rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  CombinationSolver solver(d_->modulus, d_->rank, rows, d_->ideal.rows());
  auto c = solver.express(target.coords());
  if (!c) return std::nullopt;
  std::vector<RingElement> out;
  for (std::size_t g = 0; g < gens.size(); ++g)
    out.push_back(element(Vec(c->begin() + g * d_->rank, c->begin() + (g + 1) * d_->rank)));
  return out;
}

inline std::optional<std::uint64_t> FiniteAlgebra::nilpotency_index(const RingElement& e) const {
  check(e);
  if (!is_nilpotent(e)) return std::nullopt;
  RingElement acc = one();
  for (std::uint64_t k = 0;; ++k) {
    if (acc.is_zero()) return k;
    acc = mul(acc, e);
  }
}

inline bool FiniteAlgebra::is_nilpotent(const RingElement& e) const {
  check(e);
  RingElement s = e;
  for (std::uint64_t k = 1; k < nilpotency_bound(); k *= 2) {
    if (s.is_zero()) return true;
    s = mul(s, s);
  }
  return s.is_zero();
}

inline std::optional<FiniteAlgebra> FiniteAlgebra::quotient(const std::vector<RingElement>& gens) const {
  for (const auto& g : gens) check(g);
  return quotient_by(HowellForm(d_->modulus, d_->rank, ideal_rows(gens)));
}

inline std::string FiniteAlgebra::to_string(const RingElement& e) const {
  std::string s;
  for (std::size_t i = 0; i < d_->rank; ++i) {
    const Integer& c = e.coords()[i];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) s += to_decimal(c);
    else if (c == 1) s += d_->labels[i];
    else s += to_decimal(c) + "*" + d_->labels[i];
  }
  return s.empty() ? "0" : s;
}

inline std::string FiniteAlgebra::describe() const {
  std::string s = "Z/" + to_decimal(d_->modulus);
  if (!d_->vars.empty()) {
    s += "[";
    for (std::size_t k = 0; k < d_->vars.size(); ++k) s += (k ? "," : "") + d_->vars[k];
    s += "]";
  }
  s += " rank " + std::to_string(d_->rank);
  if (is_quotient()) s += " modulo an ideal of size " + to_decimal(d_->ideal.cardinality());
  return s;
}

inline bool FiniteAlgebra::verify_axioms(std::size_t samples) const {
  const std::size_t n = d_->rank;
  auto b = [&](std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (raw_mul(b(0), b(i)) != b(i)) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (raw_mul(b(i), b(j)) != raw_mul(b(j), b(i))) return false;
  }
  auto assoc = [&](std::size_t i, std::size_t j, std::size_t k) {
    return raw_mul(raw_mul(b(i), b(j)), b(k)) == raw_mul(b(i), raw_mul(b(j), b(k)));
  };
  if (n <= 16) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!assoc(i, j, k)) return false;
    return true;
  }
  std::mt19937_64 gen(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s)
    if (!assoc(pick(gen), pick(gen), pick(gen))) return false;
  return true;
}

}  // namespace chromalg
