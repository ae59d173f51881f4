#pragma once

#include <string>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/rings.hpp"
#include "chromalg/series/truncated_series.hpp"

namespace chromalg {

using ModSeries = TruncatedSeries<ModularRing>;

struct WeierstrassDivision {
  ModSeries remainder;  // polynomial of degree < d
  ModSeries quotient;   // zero above degree cap - d
};

struct WeierstrassFactorization {
  ModSeries unit;
  std::vector<Integer> g;  // g_0 .. g_d, g_d = 1
  int degree;

  ModSeries g_series(int cap) const {
    return ModSeries::from_coefficients(unit.ring(), unit.vars()[0], std::max(cap, degree), g, true);
  }
};

namespace detail {

// K with m^K = 0 for Z/p^K.
inline unsigned local_depth(const ModularRing& ring) {
  auto pp = ring.prime_power();
  if (!pp) raise(ErrorCode::NonLocalRing, "fgl", ring.describe() + " is not local");
  return pp->k;
}

inline std::vector<Integer> dense(const ModSeries& f, int cap) {
  std::vector<Integer> out(cap + 1, Integer(0));
  for (const auto& [e, c] : f.terms())
    if (e[0] <= cap) out[e[0]] = c;
  return out;
}

}  // namespace detail

// Index of the first unit coefficient.
inline int weierstrass_degree(const ModSeries& alpha) {
  if (alpha.nvars() != 1) raise(ErrorCode::InvalidInput, "fgl", "Weierstrass theory needs a univariate series");
  detail::local_depth(alpha.ring());
  const auto& ring = alpha.ring();
  for (const auto& [e, c] : alpha.terms())
    if (ring.inverse(c)) return e[0];
  raise(ErrorCode::NotWeierstrassReady, "fgl", "no unit coefficient up to degree " + std::to_string(alpha.cap()));
}

// f = r + alpha q with deg r < d. Exact modulo x^(cap+1), where q is taken to
// vanish above degree cap - d; the m-adic iteration stops after exactly K
// rounds.
inline WeierstrassDivision weierstrass_divide(const ModSeries& f, const ModSeries& alpha) {
  if (f.vars() != alpha.vars() || !f.ring().same_ring(alpha.ring()))
    raise(ErrorCode::RingMismatch, "fgl", "dividend and divisor disagree on ring or variable");
  const auto& ring = alpha.ring();
  const unsigned K = detail::local_depth(ring);
  const int d = weierstrass_degree(alpha);
  const int D = std::min(f.cap(), alpha.cap());
  if (D < d) raise(ErrorCode::NotWeierstrassReady, "fgl", "cap is below the Weierstrass degree");
  const int Dq = D - d;

  auto a = detail::dense(alpha, D), fv = detail::dense(f, D);
  std::vector<Integer> ucoef(a.begin() + d, a.end());
  auto uinv = unit_inverse(ModSeries::from_coefficients(ring, "x", Dq, ucoef)).coefficients();

  std::vector<Integer> q(Dq + 1, Integer(0));
  auto round = [&](const std::vector<Integer>& cur) {
    // t = hi(f) - hi(V q), V = a_0 + .. + a_{d-1} x^{d-1}
    std::vector<Integer> t(Dq + 1);
    for (int m = 0; m <= Dq; ++m) {
      Integer acc = fv[d + m];
      for (int i = 0; i < d; ++i) {
        int j = m + d - i;
        if (j <= Dq && a[i] != 0 && cur[j] != 0) acc = ring.sub(acc, ring.mul(a[i], cur[j]));
      }
      t[m] = acc;
    }
    std::vector<Integer> next(Dq + 1, Integer(0));
    for (int m = 0; m <= Dq; ++m) {
      Integer acc = 0;
      for (int i = 0; i <= m; ++i)
        if (uinv[i] != 0 && t[m - i] != 0) acc = ring.add(acc, ring.mul(uinv[i], t[m - i]));
      next[m] = acc;
    }
    return next;
  };
  for (unsigned k = 0; k < K; ++k) q = round(q);
  if (round(q) != q) raise(ErrorCode::NonLocalRing, "fgl", "iteration did not stabilize after K rounds");

  ModSeries qs(ring, f.vars(), D, false);
  for (int m = 0; m <= Dq; ++m) qs.set(Exponent{m}, q[m]);
  ModSeries r(ring, f.vars(), D, true);
  for (int k = 0; k < d; ++k) {
    Integer acc = fv[k];
    for (int i = 0; i <= k; ++i)
      if (a[i] != 0 && i <= D && k - i <= Dq) acc = ring.sub(acc, ring.mul(a[i], q[k - i]));
    r.set(Exponent{k}, acc);
  }
  return {std::move(r), std::move(qs)};
}

// alpha = unit * g with g monic of degree d. When alpha is an exact
// polynomial it is first raised to a cap at which g no longer depends on
// truncation; a truncated alpha must already carry that precision.
inline WeierstrassFactorization weierstrass_prepare(const ModSeries& alpha) {
  const auto& ring = alpha.ring();
  const unsigned K = detail::local_depth(ring);
  const int d = weierstrass_degree(alpha);
  bool low_zero = true;
  for (const auto& [e, c] : alpha.terms())
    if (e[0] < d) low_zero = false;
  int need = (low_zero || K == 1) ? d : int(K + 1) * d;
  ModSeries a = alpha;
  if (a.cap() < need) {
    if (!a.is_polynomial())
      raise(ErrorCode::CapTooSmall, "fgl",
            "Weierstrass polynomial of degree " + std::to_string(d) + " needs cap " + std::to_string(need));
    a = a.recapped(need);
  }
  ModSeries xd(ring, a.vars(), a.cap(), true);
  xd.set(Exponent{d}, ring.one());
  auto div = weierstrass_divide(xd, a);
  std::vector<Integer> g(d + 1, Integer(0));
  for (int k = 0; k < d; ++k) g[k] = ring.neg(div.remainder.coefficient(k));
  g[d] = 1;
  ModSeries unit = unit_inverse(div.quotient);
  if (alpha.is_polynomial()) {
    // alpha = g exactly when the quotient is 1
    bool trivial = div.quotient.size() == 1 && div.quotient.coefficient(0) == 1;
    if (trivial) unit = ModSeries::one(ring, a.vars(), a.cap());
  }
  return {std::move(unit), std::move(g), d};
}

}  // namespace chromalg
