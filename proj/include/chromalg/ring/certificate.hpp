#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "chromalg/linalg/howell.hpp"

namespace chromalg {

// A multiset of generators whose product is zero.
template <class Elem>
struct ProductCertificate {
  std::vector<std::size_t> indices;  // nondecreasing positions into the generator list
  std::vector<Elem> factors;
  std::size_t length() const { return indices.size(); }
};

// Breadth-first search over products of the generators, deduplicated by
// normal form. Returns a shortest zero product of length <= max_len.
template <class Algebra, class Elem = typename Algebra::value_type>
std::optional<ProductCertificate<Elem>> zero_product_certificate(const Algebra& R, const std::vector<Elem>& gens,
                                                                 std::size_t max_len) {
  struct Node {
    Elem value;
    std::vector<std::size_t> seq;
  };
  auto done = [&](std::vector<std::size_t> seq) {
    std::sort(seq.begin(), seq.end());
    ProductCertificate<Elem> c;
    for (auto i : seq) c.factors.push_back(gens[i]);
    c.indices = std::move(seq);
    return c;
  };
  if (gens.empty() || max_len == 0) return std::nullopt;
  std::map<Vec, bool> seen;
  std::vector<Node> frontier;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (R.is_zero(gens[i])) return done({i});
    if (seen.emplace(gens[i].coords(), true).second) frontier.push_back({gens[i], {i}});
  }
  for (std::size_t len = 2; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        Elem v = R.mul(node.value, gens[j]);
        auto seq = node.seq;
        seq.push_back(j);
        if (R.is_zero(v)) return done(std::move(seq));
        if (seen.emplace(v.coords(), true).second) next.push_back({std::move(v), std::move(seq)});
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// Recompute the product of a certificate from scratch.
template <class Algebra, class Elem = typename Algebra::value_type>
Elem replay_certificate(const Algebra& R, const std::vector<Elem>& factors) {
  Elem acc = R.one();
  for (const auto& f : factors) acc = R.mul(acc, R.element(f.coords()));
  return acc;
}

}  // namespace chromalg
