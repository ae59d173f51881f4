#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/integer.hpp"

namespace chromalg {

using Exponent = std::vector<int>;

// Graded-lex order used everywhere: lower total degree first, ties broken by
// larger exponent of the earlier variable first (x1^2, x1*x2, x2^2).
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return b < a;
  }
};

using SparseVec = std::vector<std::pair<std::uint32_t, Integer>>;

// base[x1..xm]/(g_1(x1), .., g_m(xm)) with each g_k monic, over Z/N (N >= 2)
// or over Z (N = 0). The basis is the monomials with e_k < deg g_k.
struct MonicTower {
  Integer modulus;
  std::vector<std::string> vars;
  std::vector<std::vector<Integer>> relations;  // low-to-high, leading 1
  std::vector<Exponent> basis;
  std::map<Exponent, std::uint32_t> index;
  std::vector<SparseVec> table;  // rank*rank products of basis elements

  std::size_t rank() const { return basis.size(); }

  Integer normalize(const Integer& c) const { return modulus == 0 ? c : mod_floor(c, modulus); }

  std::string label(std::size_t i) const {
    std::string s;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      int e = basis[i][k];
      if (e == 0) continue;
      if (!s.empty()) s += "*";
      s += vars[k];
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }
};

inline MonicTower build_tower(Integer modulus, std::vector<std::string> vars,
                              std::vector<std::vector<Integer>> relations) {
  MonicTower t;
  t.modulus = std::move(modulus);
  t.vars = std::move(vars);
  if (t.vars.size() != relations.size())
    raise(ErrorCode::InvalidInput, "ring_core", "one relation per variable required");
  std::vector<int> deg;
  for (auto& g : relations) {
    for (auto& c : g) c = t.normalize(c);
    while (!g.empty() && g.back() == 0) g.pop_back();
    if (g.size() < 2 || g.back() != 1)
      raise(ErrorCode::InvalidInput, "ring_core", "relations must be monic of degree >= 1");
    deg.push_back(int(g.size()) - 1);
  }
  t.relations = std::move(relations);

  const std::size_t m = t.vars.size();
  std::size_t rank = 1;
  for (int d : deg) rank *= std::size_t(d);
  if (rank > 4096) raise(ErrorCode::InvalidInput, "ring_core", "presentation rank above 4096");

  Exponent e(m, 0);
  for (std::size_t n = 0; n < rank; ++n) {
    t.basis.push_back(e);
    for (std::size_t k = m; k-- > 0;) {
      if (++e[k] < deg[k]) break;
      e[k] = 0;
    }
  }
  std::sort(t.basis.begin(), t.basis.end(), GradedLexLess{});
  for (std::size_t i = 0; i < rank; ++i) t.index[t.basis[i]] = std::uint32_t(i);

  // red[k][s] = x_k^s reduced mod g_k, for s <= 2 deg - 2.
  std::vector<std::vector<std::vector<Integer>>> red(m);
  for (std::size_t k = 0; k < m; ++k) {
    int d = deg[k];
    auto& rk = red[k];
    for (int s = 0; s <= 2 * d - 2; ++s) {
      std::vector<Integer> v(d, 0);
      if (s < d) {
        v[s] = 1;
      } else {
        const auto& prev = rk[s - 1];
        Integer top = prev[d - 1];
        for (int i = d - 1; i > 0; --i) v[i] = prev[i - 1];
        v[0] = 0;
        for (int i = 0; i < d; ++i) v[i] = t.normalize(v[i] - top * t.relations[k][i]);
      }
      rk.push_back(std::move(v));
    }
  }

  t.table.assign(rank * rank, {});
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = i; j < rank; ++j) {
      std::map<Exponent, Integer> acc{{Exponent{}, Integer(1)}};
      for (std::size_t k = 0; k < m; ++k) {
        const auto& r = red[k][t.basis[i][k] + t.basis[j][k]];
        std::map<Exponent, Integer> next;
        for (const auto& [ex, c] : acc)
          for (int s = 0; s < deg[k]; ++s) {
            if (r[s] == 0) continue;
            Exponent ne = ex;
            ne.push_back(s);
            next[ne] = t.normalize(c * r[s]);
          }
        acc = std::move(next);
      }
      SparseVec out;
      for (const auto& [ex, c] : acc)
        if (c != 0) out.emplace_back(t.index.at(ex), c);
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      t.table[i * rank + j] = out;
      t.table[j * rank + i] = std::move(out);
    }
  }
  return t;
}

// Dense product of coordinate vectors through a structure-constant table.
inline std::vector<Integer> table_multiply(const std::vector<SparseVec>& table, std::size_t rank,
                                           const std::vector<Integer>& a, const std::vector<Integer>& b,
                                           const Integer& modulus) {
  std::vector<Integer> out(rank, 0);
  std::vector<std::size_t> nb;
  for (std::size_t j = 0; j < rank; ++j)
    if (b[j] != 0) nb.push_back(j);
  for (std::size_t i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j : nb) {
      Integer c = a[i] * b[j];
      for (const auto& [k, s] : table[i * rank + j]) out[k] += c * s;
    }
  }
  if (modulus != 0)
    for (auto& x : out) x = mod_floor(x, modulus);
  return out;
}

}  // namespace chromalg
