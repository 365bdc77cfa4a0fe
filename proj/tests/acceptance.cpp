// One PASS/FAIL line per acceptance criterion, at full size.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "remsum/verify.hpp"

using namespace remsum;

namespace {

const ArithTables& tables() {
  static const ArithTables t = build_tables(10000);
  return t;
}

Fraction fr(long a, long b) { return Fraction(Integer(a), Integer(b)); }

struct Criterion {
  int id;
  std::string title;
  std::function<std::vector<Check>()> run;
};

std::vector<Criterion> criteria() {
  const auto corpus = recursion_corpus();
  constexpr std::uint64_t seed = 42;
  return {
      {1, "oracle equivalence, n <= 2000", [=] { return std::vector{check_oracle_equivalence(corpus, 2000)}; }},
      {2, "Ostrowski side conditions", [=] { return std::vector{check_side_conditions(corpus, 2000)}; }},
      {3, "recursion depth and golden log bound",
       [=] { return std::vector{check_recursion_depth(corpus, 2000), check_golden_log_bound(100000)}; }},
      {4, "sum identities (500 direct, 200 Farey tuples)",
       [=] { return std::vector{check_thm21b(500, 500, seed), check_thm21a(200, 60, seed)}; }},
      // x l2(x) <= 1/4 on x <= 200; the sweep maximum is 0.24246 at x = 200
      {5, "L2 norm bracket [1/12, 1/4], x <= 200", [] { return std::vector{check_l2(200, fr(1, 4))}; }},
      {6, "measure product bounds, m <= 4, alpha in [2,5]", [] { return std::vector{check_measure(4, 2, 5)}; }},
      {7, "mass bound and almost-everywhere bound",
       [=] {
         return std::vector{check_mass_bound({100, 1000, 10000}, 20, seed),
                            check_ae_bound(corpus, {1000, 10000}, {0.5L, 1.0L})};
       }},
      {8, "rational sum bounds, b <= 20, x <= 500", [] { return std::vector{check_rational_bounds(20, 500)}; }},
      {9, "Farey counting identity and Moebius inversion",
       [=] {
         return std::vector{
             check_farey_identity(60, 500, seed, tables()),
             check_mobius(500, {parse_scalar("(-1+1*sqrt(2))/1"), parse_scalar("3/7"), parse_scalar("(1+1*sqrt(5))/2")},
                          tables())};
       }},
      {10, "Mellin and zeta identities at K = 1e4",
       [] {
         return std::vector{check_mellin(series_corpus(), 10000),
                            check_zeta_identity(series_corpus(), 10000, tables())};
       }},
      {11, "rescaled means converge to eta on [-8,8]",
       [] {
         return std::vector{check_eta_convergence({Fraction(0), fr(1, 2), fr(1, 3)}, {100, 400, 1600, 6400}, Scalar(8),
                                                  Scalar(fr(1, 100)), 0.0025L)};
       }},
      {12, "figure data for h and eta", [] { return std::vector{check_figures(tables(), fr(1, 100))}; }},
  };
}

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    std::string error;
    try {
      checks = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty();
    std::string detail = error;
    for (const auto& k : checks) {
      pass = pass && k.pass;
      detail += (detail.empty() ? "" : "; ") + k.name + ": " + k.detail;
    }
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s [%.1fs] %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
