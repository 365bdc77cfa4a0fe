// Farey counts at t = 1/2 against the counting identity, then a coarse look at h.

#include <cstdio>

#include "remsum/farey.hpp"

using namespace remsum;

int main() {
  const auto tables = build_tables(500);
  const Scalar half = parse_scalar("1/2");
  for (std::uint64_t n : {5u, 50u, 500u}) {
    const auto c = farey_count(n, half, tables);
    std::printf("n = %3llu  |F_n| = %-6zu  #{a/b <= 1/2} = %-6s  identity %s\n", static_cast<unsigned long long>(n),
                farey(n).fractions.size(), c.count.get_str().c_str(), to_string(c.identity_lhs).c_str());
  }
  std::printf("\n   x        h(x)\n");
  for (long x : {1, 2, 5, 10, 25, 50, 100, 250, 500}) {
    std::printf("%4ld  %12s\n", x, fmt12(h_value(Fraction(Integer(x)), tables)).c_str());
  }
}
