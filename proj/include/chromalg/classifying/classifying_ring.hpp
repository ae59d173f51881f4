#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/rings.hpp"
#include "chromalg/fgl/formal_group_law.hpp"
#include "chromalg/fgl/weierstrass.hpp"
#include "chromalg/ring/exact_poly_ring.hpp"
#include "chromalg/ring/finite_algebra.hpp"
#include "chromalg/series/eval.hpp"

namespace chromalg {

using GroupElement = std::vector<long>;

// Z/p^{i_1} + ... + Z/p^{i_m}.
class AbelianPGroup {
 public:
  AbelianPGroup() = default;
  AbelianPGroup(long p, std::vector<int> exponents) : p_(p), exps_(std::move(exponents)) {
    if (p < 2 || !is_probable_prime(Integer(p))) raise(ErrorCode::InvalidInput, "classifying", "p must be prime");
    if (exps_.empty()) raise(ErrorCode::InvalidInput, "classifying", "group needs at least one summand");
    for (int i : exps_)
      if (i < 1) raise(ErrorCode::InvalidInput, "classifying", "exponents must be at least 1");
    for (int i : exps_) order_ *= ipow(Integer(p), unsigned(i));
  }

  long p() const { return p_; }
  const std::vector<int>& exponents() const { return exps_; }
  std::size_t rank() const { return exps_.size(); }
  const Integer& order() const { return order_; }
  int log_order() const {
    int s = 0;
    for (int i : exps_) s += i;
    return s;
  }
  long modulus(std::size_t k) const { return pow_long(p_, exps_.at(k)); }

  // bits needed to count p^j-torsion elements (rough guard)
  double V_log(int j) const {
    double s = 0;
    for (int i : exps_) s += std::min(j, i) * std::log2(double(p_));
    return s;
  }

  GroupElement normalize(GroupElement w) const {
    check_length(w);
    for (std::size_t k = 0; k < w.size(); ++k) {
      long n = modulus(k);
      w[k] = ((w[k] % n) + n) % n;
    }
    return w;
  }
  GroupElement zero() const { return GroupElement(rank(), 0); }
  GroupElement unit_vector(std::size_t k) const {
    GroupElement w = zero();
    w.at(k) = 1;
    return w;
  }
  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    check_length(a), check_length(b);
    GroupElement w(rank());
    for (std::size_t k = 0; k < rank(); ++k) w[k] = a[k] + b[k];
    return normalize(std::move(w));
  }
  GroupElement sub(const GroupElement& a, const GroupElement& b) const {
    check_length(a), check_length(b);
    GroupElement w(rank());
    for (std::size_t k = 0; k < rank(); ++k) w[k] = a[k] - b[k];
    return normalize(std::move(w));
  }
  GroupElement scale(const GroupElement& a, long m) const {
    check_length(a);
    GroupElement w(rank());
    for (std::size_t k = 0; k < rank(); ++k) w[k] = (a[k] % modulus(k)) * (m % modulus(k));
    return normalize(std::move(w));
  }
  bool is_zero(const GroupElement& w) const { return normalize(w) == zero(); }

  // Lexicographic, last coordinate fastest.
  std::vector<GroupElement> elements() const { return killed_by(log_order()); }

  // { w : p^j w = 0 }, i.e. w_k a multiple of p^{i_k - min(j, i_k)}.
  std::vector<GroupElement> killed_by(int j) const {
    if (j < 0) raise(ErrorCode::InvalidInput, "classifying", "j must be nonnegative");
    if (V_log(j) > 24) raise(ErrorCode::InvalidInput, "classifying", "too many elements to enumerate");
    std::vector<long> step(rank()), count(rank());
    for (std::size_t k = 0; k < rank(); ++k) {
      int t = std::min(j, exps_[k]);
      step[k] = pow_long(p_, exps_[k] - t);
      count[k] = pow_long(p_, t);
    }
    std::vector<GroupElement> out;
    GroupElement idx(rank(), 0);
    for (;;) {
      GroupElement w(rank());
      for (std::size_t k = 0; k < rank(); ++k) w[k] = idx[k] * step[k];
      out.push_back(std::move(w));
      std::size_t k = rank();
      while (k > 0) {
        --k;
        if (++idx[k] < count[k]) break;
        idx[k] = 0;
        if (k == 0) return out;
      }
    }
  }

  std::string describe() const {
    std::string s;
    for (std::size_t k = 0; k < rank(); ++k)
      s += (k ? " + " : "") + std::string("Z/") + std::to_string(modulus(k));
    return s;
  }

  static long pow_long(long p, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i)
      if (__builtin_mul_overflow(r, p, &r)) raise(ErrorCode::InvalidInput, "classifying", "p^i does not fit in 64 bits");
    return r;
  }

 private:
  void check_length(const GroupElement& w) const {
    if (w.size() != rank())
      raise(ErrorCode::InvalidInput, "classifying",
            "group element has " + std::to_string(w.size()) + " coordinates, expected " + std::to_string(rank()));
  }

  long p_ = 2;
  std::vector<int> exps_;
  Integer order_ = 1;
};

// C = Z/p^{j_1} + ... inside A via w -> (p^{i_k - j_k} w_k).
struct SubgroupSpec {
  std::vector<int> exponents;

  void validate(const AbelianPGroup& A) const {
    if (exponents.size() != A.rank())
      raise(ErrorCode::InvalidSubgroup, "classifying", "subgroup needs one exponent per summand");
    for (std::size_t k = 0; k < A.rank(); ++k)
      if (exponents[k] < 0 || exponents[k] > A.exponents()[k])
        raise(ErrorCode::InvalidSubgroup, "classifying",
              "exponent j_" + std::to_string(k + 1) + " = " + std::to_string(exponents[k]) + " outside [0, " +
                  std::to_string(A.exponents()[k]) + "]");
  }
  GroupElement embed(const AbelianPGroup& A, const GroupElement& w) const {
    validate(A);
    GroupElement out(A.rank());
    for (std::size_t k = 0; k < A.rank(); ++k)
      out[k] = w.at(k) * AbelianPGroup::pow_long(A.p(), A.exponents()[k] - exponents[k]);
    return A.normalize(std::move(out));
  }
  std::size_t p_rank() const {
    std::size_t r = 0;
    for (int j : exponents) r += j >= 1;
    return r;
  }
};

// Image of A/C under the map whose characters are trivial on C:
// { w : p^{j_k} divides w_k }.
inline bool in_quotient_image(const AbelianPGroup& A, const SubgroupSpec& C, const GroupElement& w) {
  C.validate(A);
  auto v = A.normalize(w);
  for (std::size_t k = 0; k < A.rank(); ++k)
    if (v[k] % AbelianPGroup::pow_long(A.p(), C.exponents[k]) != 0) return false;
  return true;
}

// |V(p^j | A)| = prod p^{min(j, i_k)}.
inline Integer V_count(const AbelianPGroup& A, int j) {
  if (j < 0) raise(ErrorCode::InvalidInput, "classifying", "j must be nonnegative");
  Integer r = 1;
  for (int i : A.exponents()) r *= ipow(Integer(A.p()), unsigned(std::min(j, i)));
  return r;
}

inline Integer V_count_image(const AbelianPGroup& A, const SubgroupSpec& C, int j) {
  if (j < 0) raise(ErrorCode::InvalidInput, "classifying", "j must be nonnegative");
  C.validate(A);
  Integer r = 1;
  for (std::size_t k = 0; k < A.rank(); ++k)
    r *= ipow(Integer(A.p()), unsigned(std::min(j, A.exponents()[k] - C.exponents[k])));
  return r;
}

template <class Coeff>
struct ClassifyingModel;
template <>
struct ClassifyingModel<ModularRing> {
  using Algebra = FiniteAlgebra;
  static Algebra make(const ModularRing& r, std::vector<std::string> vars, std::vector<std::vector<Integer>> rels) {
    return FiniteAlgebra::from_presentation(r.modulus(), std::move(vars), std::move(rels));
  }
};
template <>
struct ClassifyingModel<IntegerRing> {
  using Algebra = ExactPolyRing;
  static Algebra make(const IntegerRing&, std::vector<std::string> vars, std::vector<std::vector<Integer>> rels) {
    return ExactPolyRing(std::move(vars), std::move(rels));
  }
};

template <class Elem>
struct EulerClass {
  GroupElement w;
  Elem value;
};

template <class Coeff>
class ClassifyingRing {
 public:
  using Algebra = typename ClassifyingModel<Coeff>::Algebra;
  using Elem = typename Algebra::value_type;
  using Fgl = FormalGroupLaw<Coeff>;
  using Series = TruncatedSeries<Coeff>;

  ClassifyingRing(Fgl F, AbelianPGroup A) {
    if (Integer(A.p()) != F.p())
      raise(ErrorCode::InvalidInput, "classifying", "group prime differs from the FGL prime");
    auto s = std::make_shared<State>(std::move(F), std::move(A));
    s->polynomial_model = !is_local(s->F.ring());
    std::vector<std::string> vars;
    for (std::size_t k = 0; k < s->A.rank(); ++k) {
      vars.push_back("x" + std::to_string(k + 1));
      s->relations.push_back(relation(*s, s->A.exponents()[k]));
    }
    s->ring = ClassifyingModel<Coeff>::make(s->F.ring(), vars, s->relations);
    s->truncation_safe = generators_vanish_above_cap(*s);
    s_ = std::move(s);
  }

  const Algebra& ring() const { return s_->ring; }
  const Fgl& fgl() const { return s_->F; }
  const AbelianPGroup& group() const { return s_->A; }
  const std::vector<std::vector<Integer>>& relations() const { return s_->relations; }
  bool polynomial_model() const { return s_->polynomial_model; }
  // Every monomial of degree cap+1 in the generators is zero.
  bool truncation_safe() const { return s_->truncation_safe; }
  std::size_t rank() const { return s_->ring.rank(); }
  Elem generator(std::size_t k) const { return s_->ring.generator(k); }

  // Monic polynomial (low to high) cutting out the p^j-torsion: Weierstrass
  // polynomial of [p^j](x), or [p^j](x) itself in the polynomial model.
  std::vector<Integer> torsion_polynomial(int j) const {
    if (j == 0) return {Integer(0), Integer(1)};
    std::lock_guard lock(s_->mutex);
    auto it = s_->torsion.find(j);
    if (it != s_->torsion.end()) return it->second;
    return s_->torsion.emplace(j, relation(*s_, j)).first->second;
  }

  // g(a) by Horner.
  Elem eval_polynomial(const std::vector<Integer>& g, const Elem& a) const {
    const auto& R = s_->ring;
    Elem acc = R.zero();
    for (auto it = g.rbegin(); it != g.rend(); ++it) acc = R.add(R.mul(acc, a), R.from_integer(*it));
    return acc;
  }

  Elem eval(const Series& f, const std::vector<Elem>& args) const {
    return eval_at(f, args, s_->ring, s_->truncation_safe ? Vanishing::KnownZeroAboveCap : Vanishing::Check);
  }

  Elem formal_sum(const Elem& a, const Elem& b) const { return eval(s_->F.law(), {a, b}); }
  Elem formal_inverse(const Elem& a) const { return eval(s_->F.inverse_series(), {a}); }
  Elem formal_difference(const Elem& a, const Elem& b) const { return formal_sum(a, formal_inverse(b)); }

  // c with a - b = (a -_F b) c; c is the inverse of the difference unit.
  Elem difference_cofactor(const Elem& a, const Elem& b) const {
    const auto& R = s_->ring;
    // x + y + xy: a -_F b = (a - b) / (1 + b)
    if (s_->F.kind() == FglKind::Multiplicative) return R.add(R.one(), b);
    Elem eps = eval_at(s_->F.difference_unit(), {a, b}, R);
    auto inv = R.inverse(eps);
    if (!inv) raise(ErrorCode::NotDivisible, "classifying", "difference unit is not invertible");
    return *inv;
  }

  // [w_1](x_1) +_F ... +_F [w_m](x_m), folded from the left.
  Elem euler_class(const GroupElement& w0) const {
    GroupElement w = s_->A.normalize(w0);
    {
      std::lock_guard lock(s_->mutex);
      auto it = s_->euler.find(w);
      if (it != s_->euler.end()) return it->second;
    }
    std::optional<Elem> acc;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] == 0) continue;
      Elem term = eval(s_->F.m_series(w[k]), {generator(k)});
      acc = acc ? formal_sum(*acc, term) : term;
    }
    Elem out = acc ? *acc : s_->ring.zero();
    std::lock_guard lock(s_->mutex);
    return s_->euler.emplace(std::move(w), out).first->second;
  }

  std::string describe() const {
    std::string s = "E*(B(" + s_->A.describe() + ")) = " + s_->ring.describe();
    return s + (s_->polynomial_model ? " [polynomial model]" : " [Weierstrass model]");
  }

 private:
  struct State {
    State(Fgl f, AbelianPGroup a) : F(std::move(f)), A(std::move(a)) {}
    Fgl F;
    AbelianPGroup A;
    Algebra ring;
    std::vector<std::vector<Integer>> relations;
    bool polynomial_model = false;
    bool truncation_safe = false;
    std::mutex mutex;
    std::map<int, std::vector<Integer>> torsion;
    std::map<GroupElement, Elem> euler;
  };

  static bool is_local(const ModularRing& r) { return r.prime_power().has_value(); }
  static bool is_local(const IntegerRing&) { return false; }

  static std::vector<Integer> relation(const State& s, int i) {
    Series f = s.F.pj_series(i);
    if (!s.polynomial_model) {
      if constexpr (std::is_same_v<Coeff, ModularRing>) return weierstrass_prepare(f).g;
    }
    auto c = f.coefficients();
    int d = f.degree();
    if (!f.is_polynomial() || d < 1 || c[d] != 1)
      raise(ErrorCode::NotWeierstrassReady, "classifying",
            "base " + s.F.ring().describe() + " is not local and [p^" + std::to_string(i) +
                "](x) is not an exact monic polynomial");
    c.resize(d + 1);
    return c;
  }

  static bool generators_vanish_above_cap(const State& s) {
    const auto& R = s.ring;
    const std::size_t m = s.A.rank();
    const int top = s.F.cap() + 1;
    // cheap necessary condition first
    for (std::size_t k = 0; k < m; ++k)
      if (!R.is_zero(R.pow(R.generator(k), std::uint64_t(top)))) return false;
    std::vector<std::vector<Elem>> pw(m);
    for (std::size_t k = 0; k < m; ++k) {
      pw[k].push_back(R.one());
      for (int e = 1; e <= top; ++e) pw[k].push_back(R.mul(pw[k].back(), R.generator(k)));
    }
    return detail::monomials_vanish(R, pw, top);
  }

  std::shared_ptr<State> s_;
};

template <class Coeff>
ClassifyingRing<Coeff> build_classifying_ring(const FormalGroupLaw<Coeff>& F, const AbelianPGroup& A) {
  return ClassifyingRing<Coeff>(F, A);
}

// Euler classes of { w : p^j w = 0 }, each checked to be a root of the
// p^j torsion polynomial.
template <class Coeff>
auto pj_root_set(const ClassifyingRing<Coeff>& CR, int j) {
  using Elem = typename ClassifyingRing<Coeff>::Elem;
  auto g = CR.torsion_polynomial(j);
  std::vector<EulerClass<Elem>> out;
  for (auto& w : CR.group().killed_by(j)) {
    Elem e = CR.euler_class(w);
    if (!CR.ring().is_zero(CR.eval_polynomial(g, e)))
      raise(ErrorCode::RelationNotKilled, "classifying",
            "Euler class of a p^" + std::to_string(j) + "-torsion element is not a root");
    out.push_back({std::move(w), std::move(e)});
  }
  return out;
}

// Algebra map E*(BA) -> E*(BB) induced by a homomorphism B -> A, given on
// characters: column c of H (one entry per summand of B) is the element of
// B whose Euler class receives x_c.
template <class Coeff>
struct InducedMap {
  using Elem = typename ClassifyingRing<Coeff>::Elem;
  ClassifyingRing<Coeff> from, to;
  std::vector<std::vector<long>> H;
  std::vector<Elem> images;

  Elem apply(const Elem& a) const {
    const auto& R = to.ring();
    const auto& basis = from.ring().basis();
    const auto& coords = a.coords();
    std::vector<std::vector<Elem>> pw(images.size());
    Elem out = R.zero();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (coords[b] == 0) continue;
      Elem term = R.from_integer(coords[b]);
      for (std::size_t k = 0; k < images.size(); ++k) {
        int e = basis[b][k];
        while (int(pw[k].size()) <= e) pw[k].push_back(pw[k].empty() ? R.one() : R.mul(pw[k].back(), images[k]));
        if (e > 0) term = R.mul(term, pw[k][e]);
      }
      out = R.add(out, term);
    }
    return out;
  }
};

template <class Coeff>
InducedMap<Coeff> induced_map(const ClassifyingRing<Coeff>& from, const ClassifyingRing<Coeff>& to,
                              const std::vector<std::vector<long>>& H) {
  const auto& A = from.group();
  const auto& B = to.group();
  if (!from.fgl().ring().same_ring(to.fgl().ring()) || !from.fgl().law().agrees_up_to(
                                                           to.fgl().law(), std::min(from.fgl().cap(), to.fgl().cap())))
    raise(ErrorCode::RingMismatch, "classifying", "classifying rings come from different formal group laws");
  if (A.p() != B.p()) raise(ErrorCode::RingMismatch, "classifying", "groups for different primes");
  if (H.size() != B.rank())
    raise(ErrorCode::InvalidInput, "classifying", "H needs one row per summand of the target group");
  for (const auto& row : H)
    if (row.size() != A.rank())
      raise(ErrorCode::InvalidInput, "classifying", "H needs one column per generator of the source ring");
  InducedMap<Coeff> out{from, to, H, {}};
  for (std::size_t c = 0; c < A.rank(); ++c) {
    GroupElement col(B.rank());
    for (std::size_t l = 0; l < B.rank(); ++l) {
      col[l] = H[l][c];
      // p^{i_c} * H[l][c] must vanish in Z/p^{s_l}
      Integer v = ipow(Integer(A.p()), unsigned(A.exponents()[c])) * H[l][c];
      if (mod_floor(v, Integer(B.modulus(l))) != 0)
        raise(ErrorCode::NotAHomomorphism, "classifying",
              "entry (" + std::to_string(l + 1) + "," + std::to_string(c + 1) + ") = " + std::to_string(H[l][c]) +
                  " violates p^" + std::to_string(A.exponents()[c]) + " * h = 0 mod " + std::to_string(B.modulus(l)));
    }
    out.images.push_back(to.euler_class(col));
  }
  for (std::size_t c = 0; c < A.rank(); ++c)
    if (!to.ring().is_zero(to.eval_polynomial(from.relations()[c], out.images[c])))
      raise(ErrorCode::RelationNotKilled, "classifying",
            "relation for x" + std::to_string(c + 1) + " does not map to zero");
  return out;
}

}  // namespace chromalg
