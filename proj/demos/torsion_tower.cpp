// [p^j]-series, their Weierstrass polynomials and the Euler classes that are
// their roots, for the Honda law of height 2 at p = 2.
#include <cstdio>

#include "chromalg/classifying/classifying_ring.hpp"
#include "chromalg/fgl/weierstrass.hpp"

using namespace chromalg;

int main() {
  auto F = build_honda(Integer(2), 2, 64);
  std::printf("%s\nF(x1,x2) = %s\n\n", F.describe().c_str(), F.law().to_string().c_str());
  for (int j = 1; j <= 3; ++j) {
    auto g = weierstrass_prepare(F.pj_series(j));
    std::printf("[2^%d](x): Weierstrass degree %d\n", j, g.degree);
  }

  AbelianPGroup A(2, {1, 2});
  auto CR = build_classifying_ring(F, A);
  std::printf("\n%s\n", CR.describe().c_str());
  for (int j = 1; j <= 3; ++j) {
    auto roots = pj_root_set(CR, j);
    std::printf("j = %d: %zu roots, |V(2^%d|A)| = %s\n", j, roots.size(), j, to_decimal(V_count(A, j)).c_str());
  }
  std::printf("\nEuler classes:\n");
  for (const auto& w : A.elements())
    std::printf("  w = (%ld,%ld): %s\n", w[0], w[1], CR.ring().to_string(CR.euler_class(w)).c_str());
}
