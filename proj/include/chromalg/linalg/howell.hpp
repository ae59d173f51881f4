#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "chromalg/core/integer.hpp"

namespace chromalg {

using Vec = std::vector<Integer>;

namespace detail {

inline bool all_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// A unit w of Z/N with w*a = gcd(a, N) mod N.
inline Integer normalizing_unit(const Integer& a, const Integer& n) {
  Integer d = gcd(a, n);
  Integer np = n / d;
  if (np == 1) return 1;
  Integer w0 = *mod_inverse(a / d, np);
  for (Integer w = w0;; w += np)
    if (gcd(w, n) == 1) return w;
}

}  // namespace detail

// Row span of a matrix over Z/N kept in Howell form: echelon rows, pivots
// dividing N, entries above a pivot reduced below it, and the Howell property
// (any span vector vanishing in the first c columns is a combination of rows
// with pivot column >= c). The reduced form of a vector is then canonical.
class HowellForm {
 public:
  HowellForm(Integer modulus, std::size_t ncols) : n_(std::move(modulus)), ncols_(ncols) {}

  HowellForm(Integer modulus, std::size_t ncols, std::vector<Vec> generators)
      : n_(std::move(modulus)), ncols_(ncols) {
    rows_ = std::move(generators);
    for (auto& r : rows_)
      for (auto& x : r) x = mod_floor(x, n_);
    transform();
  }

  const Integer& modulus() const { return n_; }
  std::size_t ncols() const { return ncols_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vec reduce(Vec v) const {
    for (auto& x : v) x = mod_floor(x, n_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::size_t c = pivots_[r];
      if (v[c] == 0) continue;
      Integer q = v[c] / rows_[r][c];
      if (q == 0) continue;
      for (std::size_t k = c; k < ncols_; ++k)
        if (rows_[r][k] != 0) v[k] = mod_floor(v[k] - q * rows_[r][k], n_);
    }
    return v;
  }

  bool contains(const Vec& v) const { return detail::all_zero(reduce(v)); }

  // True when the span is all of (Z/N)^ncols.
  bool is_everything() const {
    if (rows_.size() != ncols_) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (pivots_[r] != r || rows_[r][r] != 1) return false;
    return true;
  }

  bool is_zero_span() const { return rows_.empty(); }

  // Number of vectors in the span.
  Integer cardinality() const {
    Integer c = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) c *= n_ / rows_[r][pivots_[r]];
    return c;
  }

  HowellForm extended(const std::vector<Vec>& more) const {
    std::vector<Vec> all = rows_;
    all.insert(all.end(), more.begin(), more.end());
    return HowellForm(n_, ncols_, std::move(all));
  }

  bool operator==(const HowellForm& o) const { return n_ == o.n_ && ncols_ == o.ncols_ && rows_ == o.rows_; }

 private:
  void transform() {
    auto& A = rows_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols_ && r < A.size(); ++c) {
      for (std::size_t i = r + 1; i < A.size(); ++i) {
        if (A[i][c] == 0) continue;
        if (A[r][c] == 0) {
          std::swap(A[r], A[i]);
          continue;
        }
        auto e = ext_gcd(A[r][c], A[i][c]);
        Integer u = -(A[i][c] / e.g), v = A[r][c] / e.g;
        for (std::size_t k = c; k < ncols_; ++k) {
          Integer a = A[r][k], b = A[i][k];
          A[r][k] = mod_floor(e.s * a + e.t * b, n_);
          A[i][k] = mod_floor(u * a + v * b, n_);
        }
      }
      if (A[r][c] == 0) continue;
      Integer w = detail::normalizing_unit(A[r][c], n_);
      if (w != 1)
        for (std::size_t k = c; k < ncols_; ++k) A[r][k] = (A[r][k] * w) % n_;
      Integer d = A[r][c];
      for (std::size_t k = 0; k < r; ++k) {
        Integer q = A[k][c] / d;
        if (q == 0) continue;
        for (std::size_t l = c; l < ncols_; ++l) A[k][l] = mod_floor(A[k][l] - q * A[r][l], n_);
      }
      if (d != 1) {
        Integer ann = n_ / d;
        Vec extra(ncols_);
        for (std::size_t k = c; k < ncols_; ++k) extra[k] = (A[r][k] * ann) % n_;
        if (!detail::all_zero(extra)) A.push_back(std::move(extra));
      }
      pivots_.push_back(c);
      ++r;
    }
    A.resize(r);
  }

  Integer n_;
  std::size_t ncols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Linear combinations of a fixed list of vectors g_1..g_r in (Z/N)^a, taken
// modulo a submodule K. Built once from the Howell form of [g | I ; K | 0].
class CombinationSolver {
 public:
  CombinationSolver(const Integer& modulus, std::size_t width, const std::vector<Vec>& gens,
                    const std::vector<Vec>& ideal_rows = {})
      : width_(width), count_(gens.size()), form_(modulus, 0) {
    std::vector<Vec> aug;
    aug.reserve(gens.size() + ideal_rows.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Vec row(width + count_);
      for (std::size_t k = 0; k < width; ++k) row[k] = gens[i][k];
      row[width + i] = 1;
      aug.push_back(std::move(row));
    }
    for (const auto& k : ideal_rows) {
      Vec row(width + count_);
      for (std::size_t j = 0; j < width; ++j) row[j] = k[j];
      aug.push_back(std::move(row));
    }
    form_ = HowellForm(modulus, width + count_, std::move(aug));
  }

  // Coefficients c with sum c_i g_i = target modulo K, or nullopt.
  std::optional<Vec> express(const Vec& target) const {
    Vec v(width_ + count_);
    for (std::size_t k = 0; k < width_; ++k) v[k] = target[k];
    v = form_.reduce(std::move(v));
    for (std::size_t k = 0; k < width_; ++k)
      if (v[k] != 0) return std::nullopt;
    Vec c(count_);
    for (std::size_t i = 0; i < count_; ++i) c[i] = mod_floor(-v[width_ + i], form_.modulus());
    return c;
  }

  // Generators of { c : sum c_i g_i in K }.
  std::vector<Vec> relations() const {
    std::vector<Vec> out;
    for (std::size_t r = 0; r < form_.rows().size(); ++r) {
      if (form_.pivots()[r] < width_) continue;
      out.emplace_back(form_.rows()[r].begin() + width_, form_.rows()[r].end());
    }
    return out;
  }

 private:
  std::size_t width_, count_;
  HowellForm form_;
};

}  // namespace chromalg
