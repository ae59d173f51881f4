#pragma once

#include <string>
#include <vector>

#include "chromalg/fgl/formal_group_law.hpp"

// Vanishing examples shipped with the demos and the acceptance run.
namespace chromalg {

struct ZeroExample {
  std::string label;
  std::string kind;  // "honda" or "multiplicative"
  long p;
  int n;          // Honda height
  unsigned K;     // multiplicative: base Z/p^K, 0 for the integers
  std::vector<int> A, C;
  int cap;

  bool exact() const { return kind == "multiplicative" && K == 0; }
};

inline const std::vector<ZeroExample>& zero_examples() {
  static const std::vector<ZeroExample> v{
      {"K(1), p=2, A=C=Z/2", "honda", 2, 1, 0, {1}, {1}, 4},
      {"K(2), p=2, A=C=Z/2", "honda", 2, 2, 0, {1}, {1}, 8},
      {"K(1), p=3, A=C=Z/3", "honda", 3, 1, 0, {1}, {1}, 6},
      {"K(2), p=3, A=C=Z/3", "honda", 3, 2, 0, {1}, {1}, 12},
      {"K(1), p=2, A=Z/4+Z/2, C=Z/2+0", "honda", 2, 1, 0, {2, 1}, {1, 0}, 8},
      {"K(1), p=2, A=C=(Z/2)^2", "honda", 2, 1, 0, {1, 1}, {1, 1}, 8},
      {"K(2), p=2, A=C=(Z/2)^2", "honda", 2, 2, 0, {1, 1}, {1, 1}, 8},
      {"multiplicative Z/4, A=C=Z/2", "multiplicative", 2, 1, 2, {1}, {1}, 8},
      {"multiplicative Z/8, A=Z/4+Z/2, C=Z/2+Z/2", "multiplicative", 2, 1, 3, {2, 1}, {1, 1}, 12},
      {"KU over Z, p=2, A=C=(Z/2)^2", "multiplicative", 2, 1, 0, {1, 1}, {1, 1}, 8},
      {"KU over Z, p=3, A=C=(Z/3)^2", "multiplicative", 3, 1, 0, {1, 1}, {1, 1}, 12},
  };
  return v;
}

inline FormalGroupLaw<ModularRing> modular_law(const ZeroExample& e) {
  if (e.kind == "honda") return build_honda(Integer(e.p), e.n, e.cap);
  return build_multiplicative(Integer(e.p), e.K, e.cap);
}

inline FormalGroupLaw<IntegerRing> exact_law(const ZeroExample& e) {
  return build_multiplicative(IntegerRing{}, Integer(e.p), e.cap);
}

}  // namespace chromalg
