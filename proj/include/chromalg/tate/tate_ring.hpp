#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromalg/classifying/classifying_ring.hpp"
#include "chromalg/linalg/ring_linalg.hpp"
#include "chromalg/ring/certificate.hpp"
#include "chromalg/ring/localization.hpp"
#include "chromalg/tate/blueshift.hpp"

namespace chromalg {

enum class TateStatus { Zero, Nonzero, Inconclusive };

constexpr std::string_view status_name(TateStatus s) {
  switch (s) {
    case TateStatus::Zero: return "ZERO";
    case TateStatus::Nonzero: return "NONZERO";
    case TateStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

template <class Coeff>
struct TateRingResult {
  using Elem = typename ClassifyingRing<Coeff>::Elem;

  explicit TateRingResult(ClassifyingRing<Coeff> cr) : classifying(std::move(cr)) {}

  ClassifyingRing<Coeff> classifying;
  SubgroupSpec C;
  TateStatus status = TateStatus::Inconclusive;
  std::string level;                   // base ring of the finite model
  std::vector<GroupElement> inverted;  // one group element per distinct Euler class
  std::vector<Elem> generators;
  std::optional<ProductCertificate<Elem>> certificate;
  std::vector<GroupElement> certificate_elements;
  std::optional<LocalizationResult> saturation;  // finite bases only
  std::string note;
};

namespace detail {

inline double multiset_count(std::size_t g, std::size_t len) {
  double c = 1;
  for (std::size_t i = 1; i <= len; ++i) c = c * double(g + i - 1) / double(i);
  return c;
}

// A power of one nilpotent generator, or a shorter mixed product found by a
// breadth-first search kept to a bounded number of products.
template <class Algebra, class Elem = typename Algebra::value_type>
std::optional<ProductCertificate<Elem>> find_zero_product(const Algebra& R, const std::vector<Elem>& gens,
                                                          std::size_t max_len) {
  std::optional<ProductCertificate<Elem>> best;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto k = R.nilpotency_index(gens[i]);
    if (!k || *k > max_len || (best && *k >= best->length())) continue;
    ProductCertificate<Elem> c;
    c.indices.assign(*k, i);
    c.factors.assign(*k, gens[i]);
    best = std::move(c);
  }
  std::size_t len = best ? best->length() - 1 : max_len;
  while (len > 0 && multiset_count(gens.size(), len) > 2e5) --len;
  if (len > 0)
    if (auto c = zero_product_certificate(R, gens, len)) return c;
  return best;
}

}  // namespace detail

// Invert the Euler classes of A - im phi(A/C) in E*(BA).
template <class Coeff>
TateRingResult<Coeff> tate_ring(const FormalGroupLaw<Coeff>& F, const AbelianPGroup& A, const SubgroupSpec& C,
                                std::size_t max_cert_len = 16) {
  C.validate(A);
  TateRingResult<Coeff> out(build_classifying_ring(F, A));
  out.C = C;
  const auto& CR = out.classifying;
  const auto& R = CR.ring();
  out.level = F.ring().describe();
  for (const auto& w : A.elements()) {
    if (in_quotient_image(A, C, w)) continue;
    auto e = CR.euler_class(w);
    bool dup = false;
    for (const auto& g : out.generators) dup = dup || R.equal(g, e);
    if (dup) continue;
    out.inverted.push_back(w);
    out.generators.push_back(std::move(e));
  }
  auto attach = [&](auto cert) {
    for (auto i : cert.indices) out.certificate_elements.push_back(out.inverted[i]);
    out.certificate = std::move(cert);
  };

  if constexpr (std::is_same_v<typename ClassifyingRing<Coeff>::Algebra, FiniteAlgebra>) {
    out.saturation = localize_by_saturation(R, out.generators);
    out.status = out.saturation->zero ? TateStatus::Zero : TateStatus::Nonzero;
    if (out.status == TateStatus::Zero && max_cert_len > 0)
      if (auto c = detail::find_zero_product(R, out.generators, max_cert_len)) attach(std::move(*c));
    if (out.generators.empty()) out.note = "nothing inverted: the classifying ring itself";
    else if (out.status == TateStatus::Nonzero)
      out.note = "nonzero for the finite model over " + out.level + " only";
  } else {
    if (out.generators.empty()) {
      out.status = TateStatus::Nonzero;
      out.note = "nothing inverted: the classifying ring itself";
    } else if (auto c = detail::find_zero_product(R, out.generators, max_cert_len)) {
      attach(std::move(*c));
      out.status = TateStatus::Zero;
    } else {
      out.note = "exact base: no zero product of length <= " + std::to_string(max_cert_len);
    }
  }
  return out;
}

// Vanishing via a tuple of torsion roots: coset representatives of
// V(p^j | im phi) in V(p^j | A) give Euler classes whose differences are
// units times inverted classes. Over Z the check runs in the reduction mod ell.
template <class Coeff>
VanishingReport torsion_root_vanishing(const ClassifyingRing<Coeff>& CR, const SubgroupSpec& C, int j,
                                       const Integer& ell = 101) {
  const auto& A = CR.group();
  C.validate(A);
  std::vector<GroupElement> reps;
  for (const auto& u : A.killed_by(j)) {
    bool fresh = true;
    for (const auto& r : reps) fresh = fresh && !in_quotient_image(A, C, A.sub(u, r));
    if (fresh) reps.push_back(u);
  }

  using Elem = typename ClassifyingRing<Coeff>::Elem;
  std::vector<Elem> roots, S;
  std::map<GroupElement, std::size_t> s_index;
  std::vector<DifferenceWitness<Elem>> wit;
  for (const auto& r : reps) roots.push_back(CR.euler_class(r));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      auto d = A.sub(reps[a], reps[b]);
      auto [it, fresh] = s_index.emplace(d, S.size());
      if (fresh) S.push_back(CR.euler_class(d));
      wit.push_back({a, b, CR.difference_cofactor(roots[a], roots[b]), {it->second}});
    }
  auto g = CR.torsion_polynomial(j);

  if constexpr (std::is_same_v<Elem, RingElement>) {
    const auto& R = CR.ring();
    std::vector<RingElement> f;
    for (const auto& c : g) f.push_back(R.from_integer(c));
    auto tuple = make_localized_tuple(R, roots, S, wit);
    return vanishing_condition(f, tuple);
  } else {
    const auto& X = CR.ring();
    FiniteAlgebra R = X.reduced_mod(ell);
    auto red = [&](const PolyElement& e) { return X.reduce(e, R); };
    std::vector<RingElement> f, rr, ss;
    for (const auto& c : g) f.push_back(R.from_integer(c));
    for (const auto& e : roots) rr.push_back(red(e));
    for (const auto& e : S) ss.push_back(red(e));
    std::vector<DifferenceWitness<RingElement>> w2;
    for (const auto& w : wit) w2.push_back({w.i, w.j, red(w.unit), w.factors});
    auto tuple = make_localized_tuple(R, rr, ss, w2);
    auto rep = vanishing_condition(f, tuple);
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("checked mod ") + to_decimal(ell);
    return rep;
  }
}

struct PeriodicityReport {
  TateStatus status = TateStatus::Inconclusive;      // the finite model
  TateStatus completed = TateStatus::Inconclusive;   // the completed ring
  std::string level;
  int height = 0;
  BlueShiftReport bounds;
  std::vector<int> forced_zero_levels;  // q with pi_*/I_{n+1-q} = 0 forced by the lower bound
  bool consistent = true;
  std::vector<std::string> notes;
};

// The finite model over a local base sees the quotient by the maximal
// ideal, i.e. level q = 1 of the quotient chain.
inline PeriodicityReport periodicity_from(const TateRingResult<ModularRing>& t) {
  PeriodicityReport r;
  const auto& A = t.classifying.group();
  r.status = t.status;
  r.level = t.level;
  r.height = t.classifying.fgl().height();
  r.bounds = blueshift_bounds(A.p(), A.exponents(), t.C.exponents);
  for (int q = 1; q <= std::min(r.bounds.lower_t, r.height + 1); ++q) r.forced_zero_levels.push_back(q);
  const bool forced = r.bounds.lower_t >= 1;
  r.consistent = (t.status == TateStatus::Zero) == forced;
  if (t.status == TateStatus::Zero) {
    r.notes.push_back("finite model vanishes; consistent with the lower bound t = " +
                      std::to_string(r.bounds.lower_t) + " forcing the quotient at level q = 1 to vanish");
    r.notes.push_back("levels q >= 2 are not modeled: classes surviving below height " + std::to_string(r.height) +
                      " (down to height 0) are invisible at finite level");
  } else {
    r.notes.push_back("NONZERO holds for the finite model over " + r.level +
                      " only; the completed ring is reported INCONCLUSIVE");
  }
  if (!r.consistent) r.notes.push_back("finite model disagrees with the lower bound");
  return r;
}

inline PeriodicityReport periodicity_report(const FormalGroupLaw<ModularRing>& F, const AbelianPGroup& A,
                                            const SubgroupSpec& C, std::size_t max_cert_len = 16) {
  return periodicity_from(tate_ring(F, A, C, max_cert_len));
}

}  // namespace chromalg
