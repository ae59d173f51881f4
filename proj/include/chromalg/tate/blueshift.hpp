#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chromalg/core/error.hpp"
#include "chromalg/core/integer.hpp"

namespace chromalg {

struct BlueShiftTerm {
  int j;
  int log_v;        // log_p |V(p^j | A)|
  int log_v_image;  // log_p |V(p^j | im phi(A/C))|
  int value;        // ceil((log_v - log_v_image) / j)
};

struct BlueShiftReport {
  long p = 2;
  std::vector<int> A, C;
  int lower_t = 0;
  int upper_rank = 0;
  std::optional<int> exact;
  std::string exact_reason;  // direct-summand, cyclic or bounds-coincide
  int argmax_j = 1;
  std::vector<BlueShiftTerm> terms;
};

namespace detail {

inline void check_prime(long p) {
  if (p < 2 || !is_probable_prime(Integer(p))) raise(ErrorCode::InvalidInput, "tate_blueshift", "p must be prime");
}

inline void check_pair(const std::vector<int>& A, const std::vector<int>& C) {
  if (A.empty()) raise(ErrorCode::InvalidInput, "tate_blueshift", "A needs at least one summand");
  for (int i : A)
    if (i < 1) raise(ErrorCode::InvalidInput, "tate_blueshift", "exponents of A must be at least 1");
  if (C.size() != A.size())
    raise(ErrorCode::InvalidSubgroup, "tate_blueshift", "C needs one exponent per summand of A");
  for (std::size_t k = 0; k < A.size(); ++k)
    if (C[k] < 0 || C[k] > A[k])
      raise(ErrorCode::InvalidSubgroup, "tate_blueshift",
            "j_" + std::to_string(k + 1) + " = " + std::to_string(C[k]) + " outside [0, " + std::to_string(A[k]) +
                "]");
}

// max over j = 1 .. sum i_k of ceil((sum min(j,i_k) - sum min(j,i_k-j_k)) / j)
inline void scan_t(const std::vector<int>& A, const std::vector<int>& C, BlueShiftReport& r) {
  int top = 0;
  for (int i : A) top += i;
  r.lower_t = -1;
  for (int j = 1; j <= top; ++j) {
    int lv = 0, li = 0;
    for (std::size_t k = 0; k < A.size(); ++k) {
      lv += std::min(j, A[k]);
      li += std::min(j, A[k] - C[k]);
    }
    int num = lv - li;
    int v = (num + j - 1) / j;
    r.terms.push_back({j, lv, li, v});
    if (v > r.lower_t) r.lower_t = v, r.argmax_j = j;
  }
}

}  // namespace detail

inline BlueShiftReport blueshift_bounds(long p, const std::vector<int>& A, const std::vector<int>& C) {
  detail::check_prime(p);
  detail::check_pair(A, C);
  BlueShiftReport r;
  r.p = p, r.A = A, r.C = C;
  detail::scan_t(A, C, r);
  bool summand = true, nontrivial = false;
  for (std::size_t k = 0; k < A.size(); ++k) {
    summand = summand && (C[k] == 0 || C[k] == A[k]);
    if (C[k] >= 1) ++r.upper_rank, nontrivial = true;
  }
  if (summand) {
    r.exact = r.upper_rank;
    r.exact_reason = "direct-summand";
  } else if (A.size() == 1 && nontrivial) {
    r.exact = 1;
    r.exact_reason = "cyclic";
  } else if (r.lower_t == r.upper_rank) {
    r.exact = r.lower_t;
    r.exact_reason = "bounds-coincide";
  }
  return r;
}

struct NonabelianBound {
  int t = 0;
  int argmax_j = 1;
  bool conditional = true;
  std::string note;
};

// The same formula on (G/G', image of N in G/G'). Only a lower bound if the
// conjectured nonabelian reduction holds.
inline NonabelianBound nonabelian_lower_bound(long p, const std::vector<int>& abelianization,
                                              const std::vector<int>& image) {
  detail::check_prime(p);
  detail::check_pair(abelianization, image);
  BlueShiftReport r;
  detail::scan_t(abelianization, image, r);
  return {r.lower_t, r.argmax_j, true,
          "conditional on the conjectured lower bound for nonabelian groups; not a theorem"};
}

}  // namespace chromalg
