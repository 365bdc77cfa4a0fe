// Sum of beta(nt)/n^s for the golden ratio at a few s, by direct partial sums and by
// the Mellin form, plus Abel-summed values at s = 0.6 inside the strip.

#include <cstdio>

#include "remsum/dirichlet.hpp"

using namespace remsum;

int main() {
  const Scalar g = parse_scalar("(-1+1*sqrt(5))/2");
  const std::uint64_t K = 100000;
  SawtoothSeries data(g, K);
  SeriesOptions opt;
  opt.cf = expand(g, 10);
  for (ComplexVal s : {ComplexVal(2, 0), ComplexVal(3, 0), ComplexVal(2, 5), ComplexVal(0.75L, 10)}) {
    const auto a = f_beta_partial(data, s, K, opt);
    const auto b = f_beta_mellin(data, s, K, opt);
    std::printf("s = %-8s partial %s (tail %.3Lg, %s)  mellin %s (tail %.3Lg)\n", to_string(s).c_str(),
                to_string(a.value).c_str(), a.tail_bound, a.mode.c_str(), to_string(b.value).c_str(), b.tail_bound);
  }
  const auto r = continuation_evidence(g, *opt.cf, {ComplexVal(0.6L, 0)}, K);
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.levels.size(); ++i) {
      std::printf("s = 0.6  X = %-7llu value %.12Lg\n", static_cast<unsigned long long>(row.levels[i]),
                  row.values[i].real());
    }
  }
}
