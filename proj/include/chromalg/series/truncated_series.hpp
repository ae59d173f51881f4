#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/rings.hpp"
#include "chromalg/ring/tower.hpp"

namespace chromalg {

// Multivariate power series over a coefficient ring, truncated at total
// degree `cap`. Terms are kept sparse in graded-lex order; no zero
// coefficients and no term above the cap are stored.
//
// `is_polynomial()` records that the value is exact: nothing was ever dropped
// by truncation, so the series equals the polynomial formed by its terms.
template <CommutativeRing R>
class TruncatedSeries {
 public:
  using Coeff = typename R::value_type;
  using Terms = std::map<Exponent, Coeff, GradedLexLess>;

  TruncatedSeries(R ring, std::vector<std::string> vars, int cap, bool polynomial = true)
      : ring_(std::move(ring)), vars_(std::move(vars)), cap_(cap), polynomial_(polynomial) {
    if (cap_ < 0) raise(ErrorCode::InvalidInput, "series", "cap must be nonnegative");
  }

  static TruncatedSeries zero(R ring, std::vector<std::string> vars, int cap) {
    return TruncatedSeries(std::move(ring), std::move(vars), cap);
  }
  static TruncatedSeries constant(R ring, std::vector<std::string> vars, int cap, const Coeff& c) {
    TruncatedSeries s(std::move(ring), std::move(vars), cap);
    s.set(Exponent(s.nvars(), 0), c);
    return s;
  }
  static TruncatedSeries one(R ring, std::vector<std::string> vars, int cap) {
    auto c = ring.one();
    return constant(std::move(ring), std::move(vars), cap, c);
  }
  static TruncatedSeries variable(R ring, std::vector<std::string> vars, std::size_t k, int cap) {
    TruncatedSeries s(std::move(ring), std::move(vars), cap);
    Exponent e(s.nvars(), 0);
    e.at(k) = 1;
    s.set(e, s.ring_.one());
    return s;
  }
  // Univariate series from coefficients c_0, c_1, ...
  static TruncatedSeries from_coefficients(R ring, std::string var, int cap, const std::vector<Coeff>& coeffs,
                                           bool polynomial = true) {
    TruncatedSeries s(std::move(ring), {std::move(var)}, cap, polynomial);
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.set(Exponent{int(i)}, coeffs[i]);
    return s;
  }

  const R& ring() const { return ring_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  int cap() const { return cap_; }
  const Terms& terms() const { return terms_; }
  bool is_polynomial() const { return polynomial_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Store a coefficient; a term above the cap is dropped and the series is
  // then no longer an exact polynomial.
  void set(const Exponent& e, const Coeff& c) {
    if (e.size() != nvars()) raise(ErrorCode::InvalidInput, "series", "exponent length does not match variables");
    if (degree_of(e) > cap_) {
      if (!ring_.is_zero(c)) polynomial_ = false;
      return;
    }
    if (ring_.is_zero(c)) terms_.erase(e);
    else terms_[e] = c;
  }
  void add_to(const Exponent& e, const Coeff& c) {
    if (degree_of(e) > cap_) {
      if (!ring_.is_zero(c)) polynomial_ = false;
      return;
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!ring_.is_zero(c)) terms_.emplace(e, c);
      return;
    }
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) terms_.erase(it);
  }
  void mark_truncated() { polynomial_ = false; }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_.zero() : it->second;
  }
  Coeff coefficient(int k) const { return coefficient(Exponent{k}); }
  Coeff constant_term() const { return coefficient(Exponent(nvars(), 0)); }

  // Lowest and highest total degree among stored terms (-1 when zero).
  int order() const { return terms_.empty() ? -1 : degree_of(terms_.begin()->first); }
  int degree() const { return terms_.empty() ? -1 : degree_of(terms_.rbegin()->first); }

  // c_0..c_cap of a univariate series.
  std::vector<Coeff> coefficients() const {
    require_univariate();
    std::vector<Coeff> out(cap_ + 1, ring_.zero());
    for (const auto& [e, c] : terms_) out[e[0]] = c;
    return out;
  }

  TruncatedSeries truncated(int new_cap) const {
    TruncatedSeries s(ring_, vars_, std::min(new_cap, cap_), polynomial_);
    for (const auto& [e, c] : terms_) s.set(e, c);
    return s;
  }
  // Same terms viewed at a different cap; only valid for polynomials.
  TruncatedSeries recapped(int new_cap) const {
    if (new_cap <= cap_) return truncated(new_cap);
    if (!polynomial_) raise(ErrorCode::CapTooSmall, "series", "cannot raise the cap of a truncated series");
    TruncatedSeries s(ring_, vars_, new_cap, true);
    s.terms_ = terms_;
    return s;
  }
  TruncatedSeries with_vars(std::vector<std::string> vars) const {
    if (vars.size() != nvars()) raise(ErrorCode::InvalidInput, "series", "variable count mismatch");
    TruncatedSeries s = *this;
    s.vars_ = std::move(vars);
    return s;
  }

  TruncatedSeries add(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries s(ring_, vars_, std::min(cap_, o.cap_), polynomial_ && o.polynomial_);
    for (const auto& [e, c] : terms_) s.add_to(e, c);
    for (const auto& [e, c] : o.terms_) s.add_to(e, c);
    return s;
  }
  TruncatedSeries sub(const TruncatedSeries& o) const { return add(o.neg()); }
  TruncatedSeries neg() const {
    TruncatedSeries s(ring_, vars_, cap_, polynomial_);
    for (const auto& [e, c] : terms_) s.terms_.emplace(e, ring_.neg(c));
    return s;
  }
  TruncatedSeries scale(const Coeff& k) const {
    TruncatedSeries s(ring_, vars_, cap_, polynomial_);
    for (const auto& [e, c] : terms_) s.add_to(e, ring_.mul(k, c));
    return s;
  }
  TruncatedSeries mul(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries s(ring_, vars_, std::min(cap_, o.cap_), polynomial_ && o.polynomial_);
    const int cap = s.cap_;
    Exponent e(nvars());
    for (const auto& [ea, ca] : terms_) {
      int da = degree_of(ea);
      if (da > cap) {
        s.polynomial_ = false;
        continue;
      }
      for (const auto& [eb, cb] : o.terms_) {
        if (da + degree_of(eb) > cap) {
          s.polynomial_ = false;
          continue;
        }
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        s.add_to(e, ring_.mul(ca, cb));
      }
    }
    return s;
  }
  TruncatedSeries pow(std::uint64_t n) const {
    TruncatedSeries acc = one(ring_, vars_, cap_), base = *this;
    while (n) {
      if (n & 1) acc = acc.mul(base);
      n >>= 1;
      if (n) base = base.mul(base);
    }
    return acc;
  }

  // Divide every term by the k-th variable; each term must contain it.
  TruncatedSeries divide_by_variable(std::size_t k) const {
    TruncatedSeries s(ring_, vars_, std::max(cap_ - 1, 0), polynomial_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0)
        raise(ErrorCode::NotDivisible, "series", "term not divisible by " + vars_[k]);
      Exponent f = e;
      --f[k];
      s.set(f, c);
    }
    return s;
  }

  // Exact equality of variables, cap and terms.
  bool equals(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || cap_ != o.cap_ || terms_.size() != o.terms_.size()) return false;
    return agrees_up_to(o, cap_);
  }
  // Coefficients agree through total degree d.
  bool agrees_up_to(const TruncatedSeries& o, int d) const {
    if (vars_ != o.vars_) return false;
    auto restrict = [d](const Terms& t) {
      std::vector<std::pair<Exponent, Coeff>> v;
      for (const auto& [e, c] : t)
        if (degree_of(e) <= d) v.emplace_back(e, c);
      return v;
    };
    auto a = restrict(terms_), b = restrict(o.terms_);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].first != b[i].first || !ring_.equal(a[i].second, b[i].second)) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string mono;
      for (std::size_t k = 0; k < nvars(); ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[k];
        if (e[k] > 1) mono += "^" + std::to_string(e[k]);
      }
      std::string cs = ring_.to_string(c);
      if (mono.empty()) s += cs;
      else if (cs == "1") s += mono;
      else s += cs + "*" + mono;
    }
    return s;
  }

  static int degree_of(const Exponent& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return a.add(b); }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a.sub(b); }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return a.mul(b); }
  friend TruncatedSeries operator-(const TruncatedSeries& a) { return a.neg(); }

 private:
  void check(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || !ring_.same_ring(o.ring_))
      raise(ErrorCode::RingMismatch, "series", "series live over different variables or rings");
  }
  void require_univariate() const {
    if (nvars() != 1) raise(ErrorCode::InvalidInput, "series", "univariate series required");
  }

  R ring_;
  std::vector<std::string> vars_;
  int cap_;
  bool polynomial_;
  Terms terms_;
};

using RationalSeries = TruncatedSeries<RationalField>;

// f(g_1, .., g_k): the i-th variable of f is replaced by args[i]. All args
// share one variable list, which becomes the result's.
template <CommutativeRing R>
TruncatedSeries<R> substitute(const TruncatedSeries<R>& f, const std::vector<TruncatedSeries<R>>& args) {
  if (args.size() != f.nvars()) raise(ErrorCode::InvalidInput, "series", "one argument per variable required");
  if (args.empty()) return f;
  int cap = f.cap();
  bool poly = f.is_polynomial();
  for (const auto& a : args) {
    if (a.vars() != args[0].vars() || !a.ring().same_ring(f.ring()))
      raise(ErrorCode::RingMismatch, "series", "substituted series disagree on variables or ring");
    if (!a.ring().is_zero(a.constant_term()))
      raise(ErrorCode::NonzeroConstantTerm, "series", "substituted series has a nonzero constant term");
    cap = std::min(cap, a.cap());
    poly = poly && a.is_polynomial();
  }
  const auto& ring = f.ring();
  const auto& out_vars = args[0].vars();
  std::vector<int> max_exp(f.nvars(), 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t k = 0; k < e.size(); ++k) max_exp[k] = std::max(max_exp[k], e[k]);

  std::vector<std::vector<TruncatedSeries<R>>> powers(f.nvars());
  for (std::size_t k = 0; k < f.nvars(); ++k) {
    auto base = args[k].truncated(cap);
    powers[k].push_back(TruncatedSeries<R>::one(ring, out_vars, cap));
    for (int e = 1; e <= std::min(max_exp[k], cap); ++e) powers[k].push_back(powers[k].back().mul(base));
  }
  TruncatedSeries<R> out(ring, out_vars, cap, poly);
  for (const auto& [e, c] : f.terms()) {
    if (TruncatedSeries<R>::degree_of(e) > cap) {
      // contributes only above the cap (arguments have no constant term)
      out.mark_truncated();
      continue;
    }
    TruncatedSeries<R> term = TruncatedSeries<R>::constant(ring, out_vars, cap, c);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) term = term.mul(powers[k][e[k]]);
    out = out.add(term);
  }
  return out;
}

// Substitution by variable name. Variables of f without an assignment map to
// the variable of the same name in the target.
template <CommutativeRing R>
TruncatedSeries<R> substitute_named(const TruncatedSeries<R>& f,
                                    const std::map<std::string, TruncatedSeries<R>>& assignments) {
  if (assignments.empty()) return f;
  const auto& first = assignments.begin()->second;
  std::vector<TruncatedSeries<R>> args;
  for (std::size_t k = 0; k < f.nvars(); ++k) {
    auto it = assignments.find(f.vars()[k]);
    if (it != assignments.end()) {
      args.push_back(it->second);
      continue;
    }
    auto pos = std::find(first.vars().begin(), first.vars().end(), f.vars()[k]);
    if (pos == first.vars().end())
      raise(ErrorCode::InvalidInput, "series", "no assignment for variable " + f.vars()[k]);
    args.push_back(TruncatedSeries<R>::variable(f.ring(), first.vars(), std::size_t(pos - first.vars().begin()),
                                                first.cap()));
  }
  return substitute(f, args);
}

// Multiplicative inverse of a univariate series with unit constant term.
template <RingWithUnits R>
TruncatedSeries<R> unit_inverse(const TruncatedSeries<R>& u) {
  if (u.nvars() != 1) raise(ErrorCode::InvalidInput, "series", "unit_inverse needs a univariate series");
  const auto& ring = u.ring();
  auto inv0 = ring.inverse(u.constant_term());
  if (!inv0) raise(ErrorCode::NotDivisible, "series", "constant term is not a unit");
  const int cap = u.cap();
  auto c = u.coefficients();
  std::vector<typename R::value_type> out(cap + 1, ring.zero());
  out[0] = *inv0;
  for (int k = 1; k <= cap; ++k) {
    auto acc = ring.zero();
    for (int i = 1; i <= k; ++i)
      if (!ring.is_zero(c[i])) acc = ring.add(acc, ring.mul(c[i], out[k - i]));
    out[k] = ring.neg(ring.mul(*inv0, acc));
  }
  // the inverse of a non-constant polynomial is not a polynomial
  return TruncatedSeries<R>::from_coefficients(ring, u.vars()[0], cap, out, u.degree() <= 0);
}

// Compositional inverse g of a univariate f: f(g(x)) = g(f(x)) = x up to the cap.
template <RingWithUnits R>
TruncatedSeries<R> reversion(const TruncatedSeries<R>& f) {
  if (f.nvars() != 1) raise(ErrorCode::InvalidInput, "series", "reversion needs a univariate series");
  const auto& ring = f.ring();
  if (!ring.is_zero(f.constant_term()))
    raise(ErrorCode::NonzeroConstantTerm, "series", "reversion needs f(0) = 0");
  auto inv = ring.inverse(f.coefficient(1));
  if (!inv) raise(ErrorCode::NonUnitLinearTerm, "series", "linear coefficient is not a unit");
  const int cap = f.cap();
  TruncatedSeries<R> g(ring, f.vars(), cap, false);
  if (cap >= 1) g.set(Exponent{1}, *inv);
  for (int k = 2; k <= cap; ++k) {
    // only g_1..g_{k-1} affect the x^k coefficient of f(g) apart from a_1 g_k
    auto h = substitute(f.truncated(k), {g.truncated(k)});
    auto c = h.coefficient(k);
    if (!ring.is_zero(c)) g.set(Exponent{k}, ring.neg(ring.mul(c, *inv)));
  }
  if (f.is_polynomial() && f.degree() <= 1 && cap >= 1) {
    // a linear polynomial inverts to a linear polynomial
    TruncatedSeries<R> lin(ring, f.vars(), cap, true);
    lin.set(Exponent{1}, *inv);
    return lin;
  }
  return g;
}

}  // namespace chromalg
