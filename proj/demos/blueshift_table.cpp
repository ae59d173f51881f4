// Blue-shift bounds for all subgroups C of small abelian 2-groups A.
#include <cstdio>
#include <string>

#include "chromalg/tate/blueshift.hpp"

using namespace chromalg;

namespace {

std::string show(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

void subgroups(const std::vector<int>& A, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == A.size()) {
    out.push_back(cur);
    return;
  }
  for (int j = 0; j <= A[cur.size()]; ++j) {
    cur.push_back(j);
    subgroups(A, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int main() {
  std::printf("%-10s %-10s %3s %3s %6s  %s\n", "A", "C", "t", "rk", "exact", "reason");
  for (const auto& A : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {2, 2, 2}}) {
    std::vector<int> cur;
    std::vector<std::vector<int>> Cs;
    subgroups(A, cur, Cs);
    for (const auto& C : Cs) {
      auto r = blueshift_bounds(2, A, C);
      std::printf("%-10s %-10s %3d %3d %6s  %s\n", show(A).c_str(), show(C).c_str(), r.lower_t, r.upper_rank,
                  r.exact ? std::to_string(*r.exact).c_str() : "-", r.exact ? r.exact_reason.c_str() : "");
    }
  }
}
