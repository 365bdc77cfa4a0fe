// S(n,t) for a few quadratic irrationals by brute force, Ostrowski's recursion and
// the Gauss-map recursion, with the number of steps each one took.

#include <cstdio>

#include "remsum/sums.hpp"

using namespace remsum;

int main() {
  for (const char* text : {"(-1+1*sqrt(5))/2", "(-1+1*sqrt(2))/1", "(-3+1*sqrt(13))/2"}) {
    const Scalar t = parse_scalar(text);
    const CFExpansion cf = expand(t, 100);
    std::printf("t = %s = [%s]\n", text, to_string(cf).c_str());
    const OstrowskiSum ost(t, cf, 10000000);
    for (std::uint64_t n : {10u, 1000u, 100000u, 10000000u}) {
      const auto a = ost(n);
      const auto b = bseq_S(n, t);
      const bool agree = a.value == b.value && (n > 100000 || a.value == brute_S(n, t));
      std::printf("  n = %-9llu S = %-40s ostrowski %zu steps, bseq %zu steps%s\n",
                  static_cast<unsigned long long>(n), to_string(a.value).c_str(), a.trace.size(), b.trace.size(),
                  agree ? "" : "  MISMATCH");
    }
  }
}
