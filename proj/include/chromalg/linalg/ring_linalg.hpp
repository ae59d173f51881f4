#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/rings.hpp"
#include "chromalg/ring/finite_algebra.hpp"
#include "chromalg/ring/localization.hpp"

namespace chromalg {

// Rings where nonzero-divisors can be recognized and cancelled.
template <class R>
concept NzdRing = RingWithUnits<R> && requires(const R& r, const typename R::value_type& a) {
  { r.is_nonzero_divisor(a) } -> std::convertible_to<bool>;
  { r.is_unit(a) } -> std::convertible_to<bool>;
  { r.exact_div(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.to_string(a) } -> std::convertible_to<std::string>;
};

template <class E>
using Matrix = std::vector<std::vector<E>>;

// ---- polynomials as coefficient lists a_0 .. a_m ---------------------------

template <CommutativeRing R>
typename R::value_type poly_eval(const R& ring, const std::vector<typename R::value_type>& f,
                                 const typename R::value_type& x) {
  auto acc = ring.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = ring.add(ring.mul(acc, x), *it);
  return acc;
}

// Index of the last nonzero coefficient, -1 for the zero polynomial.
template <CommutativeRing R>
int poly_degree(const R& ring, const std::vector<typename R::value_type>& f) {
  for (int k = int(f.size()) - 1; k >= 0; --k)
    if (!ring.is_zero(f[k])) return k;
  return -1;
}

template <CommutativeRing R>
std::vector<typename R::value_type> poly_mul(const R& ring, const std::vector<typename R::value_type>& a,
                                             const std::vector<typename R::value_type>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<typename R::value_type> out(a.size() + b.size() - 1, ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
  return out;
}

// ---- determinants ---------------------------------------------------------

template <CommutativeRing R>
typename R::value_type det_cofactor(const R& ring, const Matrix<typename R::value_type>& M) {
  using E = typename R::value_type;
  const std::size_t n = M.size();
  if (n == 0) return ring.one();
  if (n == 1) return M[0][0];
  E acc = ring.zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (ring.is_zero(M[0][c])) continue;
    Matrix<E> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<E> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(M[r][k]);
      minor.push_back(std::move(row));
    }
    E term = ring.mul(M[0][c], det_cofactor(ring, minor));
    acc = c % 2 ? ring.sub(acc, term) : ring.add(acc, term);
  }
  return acc;
}

// Berkowitz: characteristic polynomial by Toeplitz products, no division.
template <CommutativeRing R>
typename R::value_type det_berkowitz(const R& ring, const Matrix<typename R::value_type>& M) {
  using E = typename R::value_type;
  const std::size_t n = M.size();
  if (n == 0) return ring.one();
  // coefficient vector of char poly of the leading k x k block, highest first
  std::vector<E> poly{ring.one(), ring.neg(M[0][0])};
  for (std::size_t k = 1; k < n; ++k) {
    // A = leading k x k block, R_row = M[k][0..k), C = M[0..k)[k], a = M[k][k]
    std::vector<E> col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = M[i][k];
    // toeplitz column entries: 1, -a, -R C, -R A C, ..., -R A^{k-1} C
    std::vector<E> t{ring.one(), ring.neg(M[k][k])};
    std::vector<E> v = col;
    for (std::size_t j = 0; j < k; ++j) {
      E dot = ring.zero();
      for (std::size_t i = 0; i < k; ++i) dot = ring.add(dot, ring.mul(M[k][i], v[i]));
      t.push_back(ring.neg(dot));
      if (j + 1 < k) {
        std::vector<E> nv(k, ring.zero());
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t i = 0; i < k; ++i) nv[r] = ring.add(nv[r], ring.mul(M[r][i], v[i]));
        v = std::move(nv);
      }
    }
    // new poly = T * poly, T lower-triangular Toeplitz of size (k+2) x (k+1)
    std::vector<E> next(k + 2, ring.zero());
    for (std::size_t r = 0; r < k + 2; ++r)
      for (std::size_t c = 0; c <= r && c < k + 1; ++c)
        next[r] = ring.add(next[r], ring.mul(t[r - c], poly[c]));
    poly = std::move(next);
  }
  // det = (-1)^n * constant term of det(xI - M)
  return n % 2 ? ring.neg(poly[n]) : poly[n];
}

template <CommutativeRing R>
typename R::value_type det_division_free(const R& ring, const Matrix<typename R::value_type>& M) {
  for (const auto& row : M)
    if (row.size() != M.size()) raise(ErrorCode::InvalidInput, "ring_linalg", "matrix is not square");
  return M.size() <= 5 ? det_cofactor(ring, M) : det_berkowitz(ring, M);
}

template <CommutativeRing R>
Matrix<typename R::value_type> vandermonde_matrix(const R& ring, const std::vector<typename R::value_type>& t) {
  Matrix<typename R::value_type> V;
  for (const auto& x : t) {
    std::vector<typename R::value_type> row{ring.one()};
    for (std::size_t j = 1; j < t.size(); ++j) row.push_back(ring.mul(row.back(), x));
    V.push_back(std::move(row));
  }
  return V;
}

// prod_{j<i} (t_i - t_j)
template <CommutativeRing R>
typename R::value_type vandermonde_det(const R& ring, const std::vector<typename R::value_type>& t) {
  auto acc = ring.one();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) acc = ring.mul(acc, ring.sub(t[i], t[j]));
  return acc;
}

// ---- tuples ---------------------------------------------------------------

struct TupleCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;  // difference is zero or a zero divisor
  std::optional<std::size_t> non_root;                           // f(r) != 0
  std::string reason;
};

// r_i - r_j = unit * product of multiplicative-set generators.
template <class E>
struct DifferenceWitness {
  std::size_t i, j;
  E unit;
  std::vector<std::size_t> factors;
};

// Elements t_1..t_n whose pairwise differences are nonzero-divisors. A tuple
// may instead be verified for a localization S^{-1}R: every difference is a
// unit times a product of elements of S, so it becomes a unit there (unless
// S^{-1}R = 0).
template <NzdRing R>
struct NTuple {
  using E = typename R::value_type;
  R ring;
  std::vector<E> elements;
  bool verified = false;
  std::vector<E> localized_at;  // empty: verified in R itself
  std::vector<DifferenceWitness<E>> witnesses;
  // Localized tuples only: f(r_j) times these generators of S is 0 in R, so
  // r_j is a root in S^{-1}R. Missing entries mean f(r_j) = 0 already.
  std::vector<std::vector<std::size_t>> root_factors;

  std::size_t size() const { return elements.size(); }
  bool is_localized() const { return !localized_at.empty(); }
};

template <NzdRing R>
TupleCheck is_ntuple(const R& ring, const std::vector<typename R::value_type>& t,
                     const std::vector<typename R::value_type>* f = nullptr) {
  TupleCheck out;
  for (std::size_t i = 0; i < t.size() && out.ok; ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      auto d = ring.sub(t[j], t[i]);
      if (ring.is_zero(d) || !ring.is_nonzero_divisor(d)) {
        out.ok = false;
        out.bad_pair = {i, j};
        out.reason = "difference " + ring.to_string(d) + " of elements " + std::to_string(i) + " and " +
                     std::to_string(j) + (ring.is_zero(d) ? " is zero" : " is a zero divisor");
        break;
      }
    }
  if (out.ok && f)
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!ring.is_zero(poly_eval(ring, *f, t[i]))) {
        out.ok = false;
        out.non_root = i;
        out.reason = "element " + std::to_string(i) + " is not a root";
        break;
      }
  return out;
}

// Tuple of R; `verified` reflects the pairwise check.
template <NzdRing R>
NTuple<R> make_ntuple(const R& ring, std::vector<typename R::value_type> t) {
  NTuple<R> out{ring, std::move(t), false, {}, {}, {}};
  out.verified = is_ntuple(ring, out.elements).ok;
  return out;
}

// Tuple of S^{-1}R checked through difference witnesses; raises TupleNotVerified.
template <NzdRing R>
NTuple<R> make_localized_tuple(const R& ring, std::vector<typename R::value_type> t,
                               std::vector<typename R::value_type> S,
                               std::vector<DifferenceWitness<typename R::value_type>> witnesses,
                               std::vector<std::vector<std::size_t>> root_factors = {}) {
  const std::size_t n = t.size();
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (const auto& w : witnesses) {
    if (w.i >= n || w.j >= n || w.i == w.j) raise(ErrorCode::TupleNotVerified, "ring_linalg", "witness index out of range");
    if (!ring.is_unit(w.unit)) raise(ErrorCode::TupleNotVerified, "ring_linalg", "witness factor is not a unit");
    auto prod = w.unit;
    for (auto k : w.factors) {
      if (k >= S.size()) raise(ErrorCode::TupleNotVerified, "ring_linalg", "witness refers to a missing generator");
      prod = ring.mul(prod, S[k]);
    }
    if (!ring.equal(ring.sub(t[w.i], t[w.j]), prod))
      raise(ErrorCode::TupleNotVerified, "ring_linalg",
            "difference of elements " + std::to_string(w.i) + " and " + std::to_string(w.j) +
                " does not match its witness");
    seen[w.i][w.j] = seen[w.j][w.i] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!seen[i][j])
        raise(ErrorCode::TupleNotVerified, "ring_linalg",
              "no witness for the pair " + std::to_string(i) + ", " + std::to_string(j));
  for (const auto& fs : root_factors)
    for (auto k : fs)
      if (k >= S.size()) raise(ErrorCode::TupleNotVerified, "ring_linalg", "root witness refers to a missing generator");
  NTuple<R> out{ring, std::move(t), true, std::move(S), std::move(witnesses), std::move(root_factors)};
  return out;
}

namespace detail {

template <NzdRing R>
void require_tuple_of(const NTuple<R>& tuple, const std::vector<typename R::value_type>& f) {
  if (!tuple.verified) raise(ErrorCode::TupleNotVerified, "ring_linalg", "tuple has not been verified");
  const auto& ring = tuple.ring;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    auto v = poly_eval(ring, f, tuple.elements[i]);
    if (tuple.is_localized() && i < tuple.root_factors.size())
      for (auto k : tuple.root_factors[i]) v = ring.mul(v, tuple.localized_at[k]);
    if (!ring.is_zero(v))
      raise(ErrorCode::TupleNotVerified, "ring_linalg", "element " + std::to_string(i) + " is not a root of f");
  }
}

}  // namespace detail

// ---- elimination ----------------------------------------------------------

template <class E>
struct EliminationTrace {
  std::vector<Matrix<E>> stages;  // after each column is cleared and its pivot cancelled
  Matrix<E> triangular;
  bool unique_zero = false;
};

// Row-reduce the Vandermonde matrix of the tuple: subtract the pivot row,
// then cancel the nonzero-divisor t_i - t_c from the whole row. Ends upper
// triangular with 1 on the diagonal, so the homogeneous system has only 0.
template <NzdRing R>
EliminationTrace<typename R::value_type> gaussian_nzd_solve(const NTuple<R>& tuple) {
  using E = typename R::value_type;
  const auto& ring = tuple.ring;
  const std::size_t n = tuple.size();
  Matrix<E> M = vandermonde_matrix(ring, tuple.elements);
  EliminationTrace<E> trace;
  trace.stages.push_back(M);
  for (std::size_t c = 0; c + 1 < n; ++c) {
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) M[i][k] = ring.sub(M[i][k], M[c][k]);
      const E d = M[i][c + 1];
      if (!ring.is_nonzero_divisor(d))
        raise(ErrorCode::PivotNotCancellable, "ring_linalg",
              "pivot " + ring.to_string(d) + " in row " + std::to_string(i) + " is a zero divisor");
      try {
        for (std::size_t k = 0; k < n; ++k) M[i][k] = ring.exact_div(M[i][k], d);
      } catch (const Error& e) {
        raise(ErrorCode::PivotNotCancellable, "ring_linalg", e.detail());
      }
    }
    trace.stages.push_back(M);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k)
      if (!ring.is_zero(M[i][k])) raise(ErrorCode::PivotNotCancellable, "ring_linalg", "elimination left a subdiagonal entry");
    if (!ring.equal(M[i][i], ring.one())) raise(ErrorCode::PivotNotCancellable, "ring_linalg", "diagonal entry is not 1");
  }
  trace.triangular = std::move(M);
  trace.unique_zero = true;
  return trace;
}

// ---- roots and coefficients -----------------------------------------------

enum class RootCoeffCase { AllZero, Vieta, Cramer };

constexpr std::string_view case_name(RootCoeffCase c) {
  switch (c) {
    case RootCoeffCase::AllZero: return "AllZero";
    case RootCoeffCase::Vieta: return "Vieta";
    case RootCoeffCase::Cramer: return "Cramer";
  }
  return "AllZero";
}

template <class E>
struct RootCoeffResult {
  RootCoeffCase which;
  std::size_t n = 0;
  int m = -1;
  std::vector<E> recovered;                         // a_0 .. a_{n-1} (or a_0 .. a_m when all vanish)
  std::vector<std::pair<std::string, E>> witnesses;  // determinants and symmetric functions used
  std::vector<E> factorization;                      // a_n prod (x - r_i), Vieta case
};

namespace detail {

// det(alpha_0, .., beta at column i, .., alpha_{n-1}) for each i, with
// beta_j = -sum_{k >= n} a_k r_j^k, and det V.
template <NzdRing R>
std::pair<std::vector<typename R::value_type>, typename R::value_type> cramer_numerators(
    const R& ring, const std::vector<typename R::value_type>& f, const std::vector<typename R::value_type>& r) {
  using E = typename R::value_type;
  const std::size_t n = r.size();
  Matrix<E> V = vandermonde_matrix(ring, r);
  std::vector<E> beta;
  for (const auto& x : r) {
    E acc = ring.zero();
    E pw = ring_pow(ring, x, n);
    for (std::size_t k = n; k < f.size(); ++k) {
      acc = ring.add(acc, ring.mul(f[k], pw));
      pw = ring.mul(pw, x);
    }
    beta.push_back(ring.neg(acc));
  }
  std::vector<E> nums;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<E> Mi = V;
    for (std::size_t j = 0; j < n; ++j) Mi[j][i] = beta[j];
    nums.push_back(det_division_free(ring, Mi));
  }
  return {std::move(nums), det_division_free(ring, V)};
}

}  // namespace detail

template <NzdRing R>
RootCoeffResult<typename R::value_type> roots_to_coeffs(const std::vector<typename R::value_type>& f,
                                                        const NTuple<R>& tuple) {
  using E = typename R::value_type;
  if (tuple.is_localized())
    raise(ErrorCode::TupleNotVerified, "ring_linalg", "root-coefficient relations need a tuple verified in the ring");
  detail::require_tuple_of(tuple, f);
  const auto& ring = tuple.ring;
  const std::size_t n = tuple.size();
  const int m = poly_degree(ring, f);
  RootCoeffResult<E> out;
  out.n = n;
  out.m = m;
  auto mismatch = [&](std::size_t i) {
    raise(ErrorCode::TupleNotVerified, "ring_linalg",
          "recovered coefficient a_" + std::to_string(i) + " disagrees with f; the tuple premise fails");
  };

  if (int(n) > m) {
    out.which = RootCoeffCase::AllZero;
    for (int i = 0; i <= m; ++i) {
      if (!ring.is_zero(f[i])) mismatch(i);
      out.recovered.push_back(ring.zero());
    }
    return out;
  }

  auto [nums, detV] = detail::cramer_numerators(ring, f, tuple.elements);
  if (!ring.equal(detV, vandermonde_det(ring, tuple.elements)))
    raise(ErrorCode::DivisibilityFailure, "ring_linalg", "Vandermonde determinant disagrees with its product formula");
  out.witnesses.emplace_back("det V", detV);
  for (std::size_t i = 0; i < n; ++i) out.witnesses.emplace_back("det_" + std::to_string(i), nums[i]);

  std::vector<E> cramer;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      cramer.push_back(ring.exact_div(nums[i], detV));
    } catch (const Error& e) {
      raise(ErrorCode::DivisibilityFailure, "ring_linalg",
            "det_" + std::to_string(i) + " is not divisible by det V: " + e.detail());
    }
  }

  if (int(n) == m) {
    out.which = RootCoeffCase::Vieta;
    // prod (x - r_i): coefficient of x^i is (-1)^{n-i} e_{n-i}
    std::vector<E> prod{ring.one()};
    for (const auto& r : tuple.elements) prod = poly_mul(ring, prod, std::vector<E>{ring.neg(r), ring.one()});
    for (std::size_t k = 1; k <= n; ++k) {
      E e = (k % 2) ? ring.neg(prod[n - k]) : prod[n - k];
      out.witnesses.emplace_back("e_" + std::to_string(k), e);
    }
    for (std::size_t i = 0; i <= n; ++i) out.factorization.push_back(ring.mul(f[n], prod[i]));
    for (std::size_t i = 0; i < n; ++i) {
      out.recovered.push_back(out.factorization[i]);
      if (!ring.equal(out.factorization[i], f[i]) || !ring.equal(cramer[i], f[i])) mismatch(i);
    }
    return out;
  }

  out.which = RootCoeffCase::Cramer;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ring.equal(cramer[i], f[i])) mismatch(i);
    out.recovered.push_back(cramer[i]);
  }
  return out;
}

// ---- interpolation --------------------------------------------------------

template <class E>
struct InterpolationReport {
  std::vector<E> rhs;        // sum_j L_j(x) (f(r_j) + beta_j), L_j the Lagrange basis
  std::vector<E> low_part;   // a_0 .. a_{n-1}
  bool identity_holds;       // rhs == low part of f
  bool reproduces_f;         // rhs == f, which needs deg f < n
};

// Lagrange form over an invertible tuple. At roots f(r_j) = 0 and the value
// f(r_j) + beta_j reduces to the correction term beta_j = -sum_{k>=n} a_k r_j^k.
template <NzdRing R>
InterpolationReport<typename R::value_type> interpolate(const std::vector<typename R::value_type>& f,
                                                        const NTuple<R>& tuple) {
  using E = typename R::value_type;
  const auto& ring = tuple.ring;
  const auto& r = tuple.elements;
  const std::size_t n = r.size();
  std::vector<std::vector<E>> inv(n, std::vector<E>(n, ring.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto d = ring.inverse(ring.sub(r[j], r[i]));
      if (!d)
        raise(ErrorCode::NotInvertibleTuple, "ring_linalg",
              "difference of elements " + std::to_string(j) + " and " + std::to_string(i) + " is not a unit");
      inv[j][i] = *d;
    }
  std::vector<E> rhs(n, ring.zero());
  for (std::size_t j = 0; j < n; ++j) {
    E value = ring.zero();
    E pw = ring.one();
    for (std::size_t k = 0; k < f.size() && k < n; ++k) {
      value = ring.add(value, ring.mul(f[k], pw));
      pw = ring.mul(pw, r[j]);
    }
    std::vector<E> L{value};
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) L = poly_mul(ring, L, std::vector<E>{ring.mul(ring.neg(r[i]), inv[j][i]), inv[j][i]});
    for (std::size_t k = 0; k < L.size(); ++k) rhs[k] = ring.add(rhs[k], L[k]);
  }
  InterpolationReport<E> out;
  out.rhs = rhs;
  for (std::size_t k = 0; k < n; ++k) out.low_part.push_back(k < f.size() ? f[k] : ring.zero());
  out.identity_holds = true;
  for (std::size_t k = 0; k < n; ++k)
    if (!ring.equal(rhs[k], out.low_part[k])) out.identity_holds = false;
  out.reproduces_f = out.identity_holds;
  for (std::size_t k = n; k < f.size(); ++k)
    if (!ring.is_zero(f[k])) out.reproduces_f = false;
  return out;
}

// ---- vanishing ------------------------------------------------------------

enum class Verdict { MustBeZero, Inconclusive };

struct VanishingReport {
  Verdict verdict = Verdict::Inconclusive;
  RootCoeffCase which = RootCoeffCase::AllZero;
  std::vector<RingElement> generators;  // the ideal that must contain 1
  bool unit_generator = false;          // some generator is already a unit
  std::optional<LocalizationResult> saturation;
  std::string note;
};

// If R (or S^{-1}R for a localized tuple) is nonzero, the tuple forces the
// generators below to vanish; 1 in their ideal leaves R = 0 as the only option.
//  n > m: generators a_0 .. a_m.
//  n <= m: a_i det V - det_i for i = 0 .. n-1 (det V is invertible in the
//  localization, so this is the ideal of a_i - det_i / det V).
inline VanishingReport vanishing_condition(const std::vector<RingElement>& f, const NTuple<FiniteAlgebra>& tuple) {
  const auto& ring = tuple.ring;
  detail::require_tuple_of(tuple, f);
  const std::size_t n = tuple.size();
  const int m = poly_degree(ring, f);
  VanishingReport out;
  if (int(n) > m) {
    out.which = RootCoeffCase::AllZero;
    for (int i = 0; i <= m; ++i) out.generators.push_back(f[i]);
  } else {
    out.which = n == std::size_t(m) ? RootCoeffCase::Vieta : RootCoeffCase::Cramer;
    auto [nums, detV] = detail::cramer_numerators(ring, f, tuple.elements);
    for (std::size_t i = 0; i < n; ++i) out.generators.push_back(ring.sub(ring.mul(f[i], detV), nums[i]));
    out.note = "generators use indices 0..n-1";
  }
  for (const auto& g : out.generators)
    if (ring.is_unit(g)) out.unit_generator = true;
  if (out.unit_generator || ring.ideal_contains_one(out.generators)) {
    out.verdict = Verdict::MustBeZero;
    return out;
  }
  if (tuple.is_localized()) {
    // 1 lies in the ideal of S^{-1}R iff R/(gens) dies after inverting S
    auto q = ring.quotient(out.generators);
    if (!q) {
      out.verdict = Verdict::MustBeZero;
      return out;
    }
    std::vector<RingElement> images;
    for (const auto& s : tuple.localized_at) images.push_back(q->element(s.coords()));
    out.saturation = localize_by_saturation(*q, images);
    if (out.saturation->zero) out.verdict = Verdict::MustBeZero;
  }
  return out;
}

}  // namespace chromalg
