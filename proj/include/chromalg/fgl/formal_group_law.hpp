#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/integer.hpp"
#include "chromalg/core/rings.hpp"
#include "chromalg/series/truncated_series.hpp"

namespace chromalg {

enum class FglKind { Additive, Multiplicative, Honda, Custom };

constexpr std::string_view kind_name(FglKind k) {
  switch (k) {
    case FglKind::Additive: return "additive";
    case FglKind::Multiplicative: return "multiplicative";
    case FglKind::Honda: return "honda";
    case FglKind::Custom: return "custom";
  }
  return "custom";
}

inline FglKind parse_kind(std::string_view s) {
  if (s == "additive") return FglKind::Additive;
  if (s == "multiplicative") return FglKind::Multiplicative;
  if (s == "honda") return FglKind::Honda;
  if (s == "custom") return FglKind::Custom;
  raise(ErrorCode::InvalidInput, "fgl", "unknown FGL kind '" + std::string(s) + "'");
}

inline const std::vector<std::string>& fgl_vars() {
  static const std::vector<std::string> v{"x1", "x2"};
  return v;
}
inline const std::vector<std::string>& series_var() {
  static const std::vector<std::string> v{"x"};
  return v;
}

template <RingWithUnits R>
struct FormalDifference {
  TruncatedSeries<R> diff;
  TruncatedSeries<R> unit;
};

// Which axiom failed, if any; coefficients are compared exactly up to the cap.
struct AxiomReport {
  bool left_unit = true;
  bool right_unit = true;
  bool commutative = true;
  bool associative = true;
  bool ok() const { return left_unit && right_unit && commutative && associative; }
};

template <RingWithUnits R>
AxiomReport check_fgl_axioms(const TruncatedSeries<R>& F) {
  using S = TruncatedSeries<R>;
  const auto& ring = F.ring();
  const int cap = F.cap();
  AxiomReport rep;
  const auto& xv = series_var();
  S x = S::variable(ring, xv, 0, cap), z = S::zero(ring, xv, cap);
  rep.left_unit = substitute(F, {x, z}).agrees_up_to(x, cap);
  rep.right_unit = substitute(F, {z, x}).agrees_up_to(x, cap);

  S swapped(ring, F.vars(), cap);
  for (const auto& [e, c] : F.terms()) swapped.set(Exponent{e[1], e[0]}, c);
  rep.commutative = swapped.agrees_up_to(F, cap);

  const std::vector<std::string> v3{"x", "y", "z"};
  S a = S::variable(ring, v3, 0, cap), b = S::variable(ring, v3, 1, cap), c = S::variable(ring, v3, 2, cap);
  S lhs = substitute(F, {substitute(F, {a, b}), c});
  S rhs = substitute(F, {a, substitute(F, {b, c})});
  rep.associative = lhs.agrees_up_to(rhs, cap);
  return rep;
}

// A formal group law F(x1, x2) over a coefficient ring, truncated at its cap.
// Immutable; derived series are cached behind a mutex so concurrent readers
// see identical values.
template <RingWithUnits R>
class FormalGroupLaw {
 public:
  using Series = TruncatedSeries<R>;

  FormalGroupLaw(Series law, Integer p, int height, FglKind kind) {
    if (law.vars() != fgl_vars()) law = law.with_vars(fgl_vars());
    if (!law.ring().is_zero(law.constant_term()))
      raise(ErrorCode::NonzeroConstantTerm, "fgl", "F(0,0) must be 0");
    if (p < 2 || !is_probable_prime(p)) raise(ErrorCode::InvalidInput, "fgl", "p must be prime");
    if (height < 0) raise(ErrorCode::InvalidInput, "fgl", "height must be nonnegative");
    auto rep = check_fgl_axioms(law);
    if (!rep.ok()) {
      std::string which = !rep.left_unit    ? "F(x,0) = x"
                          : !rep.right_unit ? "F(0,y) = y"
                          : !rep.commutative ? "commutativity"
                                             : "associativity";
      raise(ErrorCode::InvalidInput, "fgl", "series is not a formal group law: " + which + " fails");
    }
    s_ = std::make_shared<State>(std::move(law), std::move(p), height, kind);
  }

  const Series& law() const { return s_->law; }
  const R& ring() const { return s_->law.ring(); }
  const Integer& p() const { return s_->p; }
  int height() const { return s_->height; }
  FglKind kind() const { return s_->kind; }
  int cap() const { return s_->law.cap(); }

  // F(a, b) for series a, b without constant term.
  Series formal_sum(const Series& a, const Series& b) const { return substitute(law(), {a, b}); }

  // The formal inverse i(x): F(x, i(x)) = 0.
  const Series& inverse_series() const {
    std::lock_guard lock(s_->mutex);
    if (!s_->inverse) s_->inverse = compute_inverse();
    return *s_->inverse;
  }

  // [m](x). Negative m goes through the formal inverse.
  Series m_series(const Integer& m) const {
    {
      std::lock_guard lock(s_->mutex);
      auto it = s_->cache.find(m);
      if (it != s_->cache.end()) return it->second;
    }
    Series out = m < 0 ? substitute(inverse_series(), {m_series(-m)}) : positive_multiple(m);
    std::lock_guard lock(s_->mutex);
    return s_->cache.emplace(m, std::move(out)).first->second;
  }
  Series m_series(long m) const { return m_series(Integer(m)); }

  const Series p_series() const { return m_series(s_->p); }

  // [p^j](x) as the j-fold composite of the p-series.
  Series pj_series(int j) const {
    if (j < 1) raise(ErrorCode::InvalidInput, "fgl", "j must be at least 1");
    Integer need = ipow(s_->p, unsigned(s_->height) * unsigned(j));
    if (Integer(cap()) < need)
      raise(ErrorCode::CapTooSmall, "fgl",
            "cap " + std::to_string(cap()) + " is below p^(n*j) = " + to_decimal(need));
    Series ps = p_series();
    Series g = ps;
    for (int i = 2; i <= j; ++i) g = substitute(ps, {g});
    return g;
  }

  // a -_F b together with the unit e(a, b) such that a -_F b = (a - b) e(a, b).
  FormalDifference<R> formal_difference_with_unit(const Series& a, const Series& b) const {
    Series diff = substitute(law(), {a, substitute(inverse_series(), {b})});
    Series unit = substitute(difference_unit(), {a, b});
    return {std::move(diff), std::move(unit)};
  }

  // e(x1, x2) with F(x1, i(x2)) = (x1 - x2) e(x1, x2); cap is one less than F's.
  const Series& difference_unit() const {
    const Series& inv = inverse_series();
    std::lock_guard lock(s_->mutex);
    if (s_->unit) return *s_->unit;
    const auto& ring = this->ring();
    const int c = cap();
    Series x1 = Series::variable(ring, fgl_vars(), 0, c), x2 = Series::variable(ring, fgl_vars(), 1, c);
    Series g = substitute(law(), {x1, substitute(inv, {x2})});
    // x1 = u + x2, with u stored in the x1 slot
    Series h = substitute(g, {x1 + x2, x2});
    Series quotient = h.divide_by_variable(0);
    s_->unit = substitute(quotient, {(x1 - x2).truncated(quotient.cap()), x2.truncated(quotient.cap())});
    return *s_->unit;
  }

  AxiomReport verify_axioms() const { return check_fgl_axioms(law()); }

  std::string describe() const {
    return std::string(kind_name(kind())) + " FGL over " + ring().describe() + " (p=" + to_decimal(p()) +
           ", height " + std::to_string(height()) + ", cap " + std::to_string(cap()) + ")";
  }

 private:
  struct State {
    State(Series l, Integer pp, int h, FglKind k) : law(std::move(l)), p(std::move(pp)), height(h), kind(k) {}
    Series law;
    Integer p;
    int height;
    FglKind kind;
    std::mutex mutex;
    std::optional<Series> inverse;
    std::optional<Series> unit;
    std::map<Integer, Series> cache;
  };

  Series variable() const { return Series::variable(ring(), series_var(), 0, cap()); }

  Series positive_multiple(const Integer& m) const {
    Series x = variable();
    if (m == 0) return Series::zero(ring(), series_var(), cap());
    // [2k] = F([k],[k]), [2k+1] = F([2k], x)
    Series acc = x;
    for (int bit = int(msb(m)) - 1; bit >= 0; --bit) {
      acc = formal_sum(acc, acc);
      if (bit_test(m, unsigned(bit))) acc = formal_sum(acc, x);
    }
    return acc;
  }

  Series compute_inverse() const {
    const auto& ring = this->ring();
    const int c = cap();
    Series x = variable();
    Series inv(ring, series_var(), c, false);
    if (c >= 1) inv.set(Exponent{1}, ring.neg(ring.one()));
    for (int k = 2; k <= c; ++k) {
      // F(x, y) = x + y + (higher), so the x^k coefficient of F(x, i) moves
      // one-for-one with i_k
      Series h = substitute(law().truncated(k), {x.truncated(k), inv.truncated(k)});
      auto coef = h.coefficient(k);
      if (!ring.is_zero(coef)) inv.set(Exponent{k}, ring.neg(coef));
    }
    if (law().is_polynomial()) {
      // exact when F is a polynomial and F(x, i) vanishes identically
      Series cand(ring, series_var(), c, true);
      for (const auto& [e, v] : inv.terms()) cand.set(e, v);
      if (cand.degree() < c && substitute(law(), {x, cand}).is_zero()) return cand;
    }
    return inv;
  }

  std::shared_ptr<State> s_;
};

inline TruncatedSeries<ModularRing> reduce_mod(const TruncatedSeries<IntegerRing>& f, const ModularRing& target) {
  TruncatedSeries<ModularRing> out(target, f.vars(), f.cap(), f.is_polynomial());
  for (const auto& [e, c] : f.terms()) out.set(e, target.from_integer(c));
  return out;
}

// x1 + x2 + x1 x2 over any ring.
template <RingWithUnits R>
FormalGroupLaw<R> build_multiplicative(R ring, const Integer& p, int cap) {
  if (Integer(cap) < p) raise(ErrorCode::InvalidInput, "fgl", "cap must be at least p");
  TruncatedSeries<R> F(ring, fgl_vars(), cap);
  F.set(Exponent{1, 0}, ring.one());
  F.set(Exponent{0, 1}, ring.one());
  F.set(Exponent{1, 1}, ring.one());
  return FormalGroupLaw<R>(std::move(F), p, 1, FglKind::Multiplicative);
}

// Multiplicative FGL over Z/p^K.
inline FormalGroupLaw<ModularRing> build_multiplicative(const Integer& p, unsigned K, int cap) {
  if (K < 1) raise(ErrorCode::InvalidInput, "fgl", "modulus power must be at least 1");
  return build_multiplicative(ModularRing(ipow(p, K)), p, cap);
}

template <RingWithUnits R>
FormalGroupLaw<R> build_additive(R ring, const Integer& p, int cap) {
  TruncatedSeries<R> F(ring, fgl_vars(), cap);
  F.set(Exponent{1, 0}, ring.one());
  F.set(Exponent{0, 1}, ring.one());
  return FormalGroupLaw<R>(std::move(F), p, 0, FglKind::Additive);
}

template <RingWithUnits R>
FormalGroupLaw<R> build_custom(TruncatedSeries<R> law, const Integer& p, int height) {
  return FormalGroupLaw<R>(std::move(law), p, height, FglKind::Custom);
}

// The Honda law over Q before reduction, with the logarithm used to build it.
struct HondaConstruction {
  RationalSeries logarithm;
  RationalSeries rational_law;
  FormalGroupLaw<ModularRing> fgl;
};

// log(x) = sum_i x^(p^(n i)) / p^i, F = exp(log x1 + log x2), reduced mod p.
inline HondaConstruction honda_construction(const Integer& p, int n, int cap) {
  if (p < 2 || !is_probable_prime(p)) raise(ErrorCode::InvalidInput, "fgl", "p must be prime");
  if (n < 1) raise(ErrorCode::InvalidInput, "fgl", "height must be at least 1");
  if (Integer(cap) < ipow(p, unsigned(n))) raise(ErrorCode::InvalidInput, "fgl", "cap must be at least p^n");
  RationalField Q;
  RationalSeries log(Q, series_var(), cap, false);
  Integer deg = 1, den = 1;
  while (deg <= cap) {
    log.set(Exponent{int(deg)}, Rational(1, den));
    deg *= ipow(p, unsigned(n));
    den *= p;
  }
  RationalSeries exp = reversion(log);
  RationalSeries x1 = RationalSeries::variable(Q, fgl_vars(), 0, cap);
  RationalSeries x2 = RationalSeries::variable(Q, fgl_vars(), 1, cap);
  RationalSeries sum = substitute(log, {x1}) + substitute(log, {x2});
  RationalSeries FQ = substitute(exp, {sum});

  ModularRing Fp(p);
  TruncatedSeries<ModularRing> F(Fp, fgl_vars(), cap, false);
  for (const auto& [e, c] : FQ.terms()) {
    const Integer& d = denominator(c);
    if (d % p == 0)
      raise(ErrorCode::IntegralityFailure, "fgl",
            "coefficient " + Q.to_string(c) + " of the Honda law is not p-integral");
    F.set(e, Fp.mul(Fp.from_integer(numerator(c)), *mod_inverse(d, p)));
  }
  FormalGroupLaw<ModularRing> fgl(std::move(F), p, n, FglKind::Honda);
  return {std::move(log), std::move(FQ), std::move(fgl)};
}

inline FormalGroupLaw<ModularRing> build_honda(const Integer& p, int n, int cap) {
  return honda_construction(p, n, cap).fgl;
}

}  // namespace chromalg
