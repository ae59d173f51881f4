#pragma once

#include <functional>
#include <map>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/series/truncated_series.hpp"

namespace chromalg {

// Evaluation targets: FiniteAlgebra and ExactPolyRing.
template <class A>
concept EvalTarget = requires(const A& ring, const typename A::value_type& a, const Integer& n) {
  { ring.from_integer(n) } -> std::convertible_to<typename A::value_type>;
  { ring.mul(a, a) } -> std::convertible_to<typename A::value_type>;
  { ring.add(a, a) } -> std::convertible_to<typename A::value_type>;
  { ring.scale(a, n) } -> std::convertible_to<typename A::value_type>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  { ring.is_nilpotent(a) } -> std::convertible_to<bool>;
};

namespace detail {

inline const Integer& as_integer(const Integer& c) { return c; }

// All monomials of total degree d in the arguments vanish; then so does
// every monomial of higher degree.
template <EvalTarget A>
bool monomials_vanish(const A& ring, const std::vector<std::vector<typename A::value_type>>& pw, int d) {
  const std::size_t m = pw.size();
  // enumerate compositions of d into m parts
  std::function<bool(std::size_t, int, typename A::value_type)> walk = [&](std::size_t k, int left,
                                                                             typename A::value_type acc) {
    if (ring.is_zero(acc)) return true;
    if (k + 1 == m) return ring.is_zero(ring.mul(acc, pw[k][left]));
    for (int t = 0; t <= left; ++t)
      if (!walk(k + 1, left - t, ring.mul(acc, pw[k][t]))) return false;
    return true;
  };
  return walk(0, d, ring.from_integer(1));
}

}  // namespace detail

enum class Vanishing { Check, KnownZeroAboveCap };

// f(args) in `ring`. Exact when f is a polynomial, or when every monomial of
// degree cap+1 in the arguments is zero (checked unless the caller already
// knows it).
template <EvalTarget A, CommutativeRing R>
typename A::value_type eval_at(const TruncatedSeries<R>& f, const std::vector<typename A::value_type>& args,
                               const A& ring, Vanishing mode = Vanishing::Check) {
  using E = typename A::value_type;
  if (args.size() != f.nvars()) raise(ErrorCode::InvalidInput, "series", "one argument per variable required");
  const int cap = f.cap();
  const std::size_t m = args.size();
  if (m == 0) return ring.from_integer(detail::as_integer(f.constant_term()));

  std::vector<int> max_exp(m, 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t k = 0; k < m; ++k) max_exp[k] = std::max(max_exp[k], e[k]);
  const bool check = !f.is_polynomial() && mode == Vanishing::Check;
  std::vector<std::vector<E>> pw(m);
  for (std::size_t k = 0; k < m; ++k) {
    int top = check ? std::max(max_exp[k], cap + 1) : max_exp[k];
    pw[k].push_back(ring.from_integer(1));
    for (int e = 1; e <= top; ++e) pw[k].push_back(ring.mul(pw[k].back(), args[k]));
  }
  if (check && !detail::monomials_vanish(ring, pw, cap + 1)) {
    for (const auto& a : args)
      if (!ring.is_nilpotent(a))
        raise(ErrorCode::NonNilpotentArgument, "series",
              "argument is not nilpotent and the series is truncated at degree " + std::to_string(cap));
    raise(ErrorCode::CapTooSmall, "series",
          "monomials of degree " + std::to_string(cap + 1) + " in the arguments do not vanish");
  }

  // Group by all exponents but the last; the last variable enters through
  // scalar combinations of its cached powers.
  std::map<Exponent, E> grouped;
  for (const auto& [e, c] : f.terms()) {
    Exponent prefix(e.begin(), e.end() - 1);
    E term = ring.scale(pw[m - 1][e[m - 1]], detail::as_integer(c));
    auto it = grouped.find(prefix);
    if (it == grouped.end()) grouped.emplace(std::move(prefix), std::move(term));
    else it->second = ring.add(it->second, term);
  }
  E out = ring.from_integer(0);
  for (auto& [prefix, inner] : grouped) {
    E acc = std::move(inner);
    for (std::size_t k = 0; k + 1 < m; ++k)
      if (prefix[k] > 0) acc = ring.mul(acc, pw[k][prefix[k]]);
    out = ring.add(out, acc);
  }
  return out;
}

}  // namespace chromalg
