#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chromalg/linalg/howell.hpp"
#include "chromalg/ring/finite_algebra.hpp"

namespace chromalg {

// One stage I_t of the colon-ideal chain 0 = I_0 ⊆ (I_0 : s) ⊆ ...
struct SaturationStep {
  std::vector<RingElement> generators;  // Howell rows of I_t, as ring elements
  Integer size;                         // |I_t| relative to the starting ideal
  bool contains_one = false;
};

struct LocalizationResult {
  bool zero = false;
  std::optional<FiniteAlgebra> ring;  // R/I when nonzero
  std::vector<SaturationStep> chain;
  RingElement multiplier;  // s = product of the inverted generators
  // Image of a ring element in the localization.
  RingElement image(const RingElement& r) const { return ring->element(r.coords()); }
};

// I : s = { r : s r ∈ I } for an ideal I given by its Howell form.
inline HowellForm colon_ideal(const FiniteAlgebra& R, const HowellForm& I, const RingElement& s) {
  CombinationSolver solver(R.modulus(), R.rank(), R.multiplication_rows(s), I.rows());
  return HowellForm(R.modulus(), R.rank(), solver.relations());
}

// Invert S_gens by quotienting out everything they eventually kill.
inline LocalizationResult localize_by_saturation(const FiniteAlgebra& R, const std::vector<RingElement>& S_gens) {
  LocalizationResult out;
  RingElement s = R.one();
  for (const auto& g : S_gens) s = R.mul(s, g);
  out.multiplier = s;

  const Integer base_size = R.ideal().cardinality();
  auto record = [&](const HowellForm& I) {
    SaturationStep step;
    for (const auto& row : I.rows()) {
      RingElement e = R.element(row);
      if (!e.is_zero()) step.generators.push_back(std::move(e));
    }
    step.size = I.cardinality() / base_size;
    step.contains_one = I.contains(R.one().coords());
    out.chain.push_back(std::move(step));
  };

  HowellForm I = R.ideal();
  record(I);
  for (;;) {
    HowellForm next = colon_ideal(R, I, s);
    if (next == I) break;
    I = std::move(next);
    record(I);
    if (out.chain.back().contains_one) break;
  }
  out.zero = out.chain.back().contains_one;
  if (!out.zero) out.ring = R.quotient_by(I);
  return out;
}

}  // namespace chromalg
