// Runs every shipped vanishing example and prints the three witnesses.
#include <cstdio>

#include "chromalg/tate/examples.hpp"
#include "chromalg/tate/tate_ring.hpp"

using namespace chromalg;

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class Coeff>
void report(const ZeroExample& e, const TateRingResult<Coeff>& t) {
  const auto& R = t.classifying.ring();
  auto b = blueshift_bounds(e.p, e.A, e.C);
  std::printf("%s\n  ring: %s\n  bounds: t = %d, rank_p(C) = %d\n  status: %s\n", e.label.c_str(),
              t.classifying.describe().c_str(), b.lower_t, b.upper_rank, std::string(status_name(t.status)).c_str());
  if (t.certificate) {
    std::vector<std::string> f;
    for (const auto& x : t.certificate->factors) f.push_back("(" + R.to_string(x) + ")");
    std::printf("  certificate: %s = %s\n", join(f, " * ").c_str(),
                R.to_string(replay_certificate(R, t.certificate->factors)).c_str());
  }
  auto v = torsion_root_vanishing(t.classifying, t.C, b.argmax_j);
  std::printf("  torsion roots at j = %d: %s (%s)\n\n", b.argmax_j,
              v.verdict == Verdict::MustBeZero ? "must vanish" : "inconclusive", std::string(case_name(v.which)).c_str());
}

}  // namespace

int main() {
  for (const auto& e : zero_examples()) {
    AbelianPGroup A(e.p, e.A);
    SubgroupSpec C{e.C};
    if (e.exact())
      report(e, tate_ring(exact_law(e), A, C));
    else
      report(e, tate_ring(modular_law(e), A, C));
  }
}
