#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "remsum/sums.hpp"

using namespace remsum;

namespace {

Scalar q(const char* text) { return parse_scalar(text); }
Fraction fr(long a, long b) { return Fraction(Integer(a), Integer(b)); }

const Scalar kGolden = q("(-1+1*sqrt(5))/2");
const Scalar kSilver = q("(-1+1*sqrt(2))/1");
const Scalar kSqrt3m1 = q("(-1+1*sqrt(3))/1");

}  // namespace

TEST_CASE("brute_S examples") {
  for (std::uint64_t n : {0u, 1u, 7u, 100u}) {
    CHECK(brute_S(n, Scalar(0)) == Scalar(Fraction(-Integer(static_cast<unsigned long>(n)), 2)));
  }
  CHECK(brute_S(3, q("1/3")) == q("-1/2"));
  CHECK(brute_S(2, q("1/2")) == q("-1/2"));
  CHECK(brute_S(0, kGolden) == Scalar(0));
}

TEST_CASE("brute_S0 examples") {
  CHECK(brute_S0(2, q("1/2")) == Scalar(0));
  CHECK(brute_S0(10, q("(0+1*sqrt(2))/1")) == brute_S(10, q("(0+1*sqrt(2))/1")));
  CHECK(brute_S0(4, q("1/4")) == Scalar(0));
}

TEST_CASE("fast floor paths agree with term-by-term sums") {
  oracle::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    Scalar t(rng.fraction(60, -4, 4));
    auto n = static_cast<std::uint64_t>(rng.between(0, 300));
    REQUIRE(brute_S(n, t) == oracle::naive_S(n, t));
    REQUIRE(brute_S0(n, t) == oracle::naive_S0(n, t));
  }
  for (const char* text : {"(-1+1*sqrt(5))/2", "(3-7*sqrt(13))/11", "(-5+2*sqrt(2))/3", "(1+1*sqrt(94))/9"}) {
    Scalar t = q(text);
    for (std::uint64_t n : {1u, 2u, 17u, 250u}) REQUIRE(brute_S(n, t) == oracle::naive_S(n, t));
  }
  // big numerators force the arbitrary-precision path
  Scalar big(Fraction(Integer("123456789012345678901234567"), Integer("98765432109876543210")));
  CHECK(brute_S(40, big) == oracle::naive_S(40, big));
  Scalar big_quad = Scalar::quadratic(Integer("1234567890123456789"), 3, 7, 1000003);
  CHECK(brute_S(40, big_quad) == oracle::naive_S(40, big_quad));
}

TEST_CASE("prefix table matches single sums") {
  SawtoothPrefix pre(kSilver, 300);
  for (std::uint64_t n = 0; n <= 300; n += 7) CHECK(pre.S(n) == brute_S(n, kSilver));
  SawtoothPrefix prat(q("3/7"), 100);
  for (std::uint64_t n = 0; n <= 100; n += 3) CHECK(prat.S0(n) == brute_S0(n, q("3/7")));
  CHECK_THROWS_AS(pre.S(301), DomainError);
}

TEST_CASE("B and one-sided limits") {
  CHECK(B(3, q("1/2")) == q("-1/6"));
  CHECK(B(1, kGolden) == beta(kGolden));
  CHECK(B(9, Scalar(0)) == q("-1/2"));
  CHECK(B_left(3, fr(1, 2)) == q("1/6"));
  CHECK(B_left(10, fr(2, 5)) - B(10, q("2/5")) == q("1/5"));
  CHECK(B_left(1, fr(0, 1)) == q("1/2"));
  CHECK_THROWS_AS(B(0, kGolden), DomainError);
  CHECK(B(q("7/2"), q("1/3")) == brute_S(3, q("1/3")) / q("7/2"));
  CHECK(B(20, kGolden, Method::ostrowski) == B(20, kGolden));
  CHECK(B(20, kGolden, Method::bseq) == B(20, kGolden));
  CHECK_THROWS_AS(B(5, q("1/3"), Method::ostrowski), NotIrrational);
}

TEST_CASE("Ostrowski recursion matches the oracle") {
  for (const Scalar& t : {kGolden, kSilver, kSqrt3m1, q("(0+1*sqrt(7))/1"), q("(2-3*sqrt(11))/5")}) {
    CFExpansion cf = expand(t, 1000);
    OstrowskiSum os(t, cf, 600);
    SawtoothPrefix pre(t, 600);
    CHECK(os(0).value == Scalar(0));
    CHECK(os(0).trace.size() == 0);
    for (std::uint64_t n = 1; n <= 600; ++n) {
      auto r = os(n);
      REQUIRE(r.value == pre.S(n));
      REQUIRE(r.trace.conditions_hold);
      if (n >= 3) REQUIRE(static_cast<double>(r.trace.size()) <= 4 * std::log(static_cast<double>(n)));
      const auto& steps = std::get<std::vector<OstrowskiStep>>(r.trace.steps);
      for (std::size_t i = 1; i < steps.size(); ++i) REQUIRE(steps[i].n_before < steps[i - 1].n_before);
    }
  }
  CHECK(ostrowski_S(10, kGolden, expand(kGolden, 10)).value == brute_S(10, kGolden));
  CHECK_THROWS_AS(ostrowski_S(10, q("1/2"), expand(q("1/2"), 5)), NotIrrational);
  CHECK_THROWS_AS(ostrowski_S(10, kGolden, expand(kSilver, 10)), DomainError);
}

TEST_CASE("Ostrowski recursion at n = 10^6") {
  auto r = ostrowski_S(1000000, kSilver, expand(kSilver, 10));
  CHECK(r.value == brute_S(1000000, kSilver));
  CHECK(static_cast<double>(r.trace.size()) <= 4 * std::log(1e6));
}

TEST_CASE("Gauss-map recursion matches the oracle") {
  for (const Scalar& t : {kGolden, kSilver, kSqrt3m1, q("(-2+1*sqrt(7))/1"), q("(0+1*sqrt(2))/10")}) {
    SawtoothPrefix pre(t, 600);
    for (std::uint64_t n = 0; n <= 600; ++n) {
      auto r = bseq_S(n, t);
      REQUIRE(r.value == pre.S(n));
      REQUIRE(r.trace.conditions_hold);
      if (n >= 8) REQUIRE(static_cast<double>(r.trace.size()) <= 4 * std::log(static_cast<double>(n)));
    }
  }
  Scalar small = q("(0+1*sqrt(2))/10");
  auto single = bseq_S(3, small);
  CHECK(single.trace.size() == 1);
  Scalar x = small * Scalar(3);
  CHECK(single.value == Scalar(3) * eta_tilde(x) + x / Scalar(2));
  CHECK(bseq_S(8, kSilver).value == brute_S(8, kSilver));
  CHECK_THROWS_AS(bseq_S(5, q("1/3")), NotIrrational);
  CHECK_THROWS_AS(bseq_S(5, kGolden + Scalar(1)), DomainError);
  CHECK_THROWS_AS(bseq_S(5, -kGolden), DomainError);
}

TEST_CASE("golden ratio sums stay below 2 log n") {
  OstrowskiSum os(kGolden, expand(kGolden, 10), 20000);
  for (std::uint64_t n = 3; n <= 20000; ++n) {
    REQUIRE(to_double(abs(os(n).value)) <= 2 * std::log(static_cast<double>(n)));
  }
}

TEST_CASE("periodicity and reflection") {
  // beta(-u) = -beta(u) whenever u is not an integer
  SawtoothPrefix pre(kSilver, 100);
  SawtoothPrefix shifted(kSilver + Scalar(3), 100);
  SawtoothPrefix neg(-kSilver, 100);
  for (std::uint64_t n = 0; n <= 100; ++n) {
    CHECK(shifted.S(n) == pre.S(n));
    CHECK(neg.S(n) == -pre.S(n));
  }
}

TEST_CASE("identity near 0/1 with inner left limit") {
  CHECK(thm21b_identity(5, q("2/5")).equal());
  CHECK(thm21b_identity(7, kSilver).equal());
  auto one = thm21b_identity(1, Scalar(1));
  CHECK(one.lhs == q("-1/2"));
  CHECK(one.rhs == q("-1/2"));
  oracle::Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    auto n = static_cast<std::uint64_t>(rng.between(1, 200));
    Scalar t(rng.fraction(40, 0, 1));
    if (t.sign() <= 0) continue;
    REQUIRE(thm21b_identity(n, t).equal());
  }
  CHECK_THROWS_AS(thm21b_identity(3, q("3/2")), DomainError);
}

TEST_CASE("local identity near a/b") {
  CHECK(thm21a_identity(4, fr(0, 1), 1, Scalar(2)).equal());
  CHECK(thm21a_identity(6, fr(1, 2), 1, Scalar(3)).equal());
  CHECK(thm21a_identity(9, fr(1, 3), 2, q("7/2")).equal());
  CHECK_THROWS_AS(thm21a_identity(9, fr(1, 3), 1, Scalar(1)), NotNeighbors);
  CHECK_THROWS_AS(thm21a_identity(9, fr(2, 5), 4, Scalar(1)), NotNeighbors);
  CHECK_THROWS_AS(thm21a_identity(9, fr(1, 3), 2, Scalar(5)), DomainError);
}

TEST_CASE("Lemma bound for rational points") {
  auto a = lemma31_bound(Scalar(10), fr(1, 2));
  CHECK(a.value == Scalar(0));
  CHECK(a.bound == q("1/5"));
  CHECK(a.holds);
  CHECK(lemma31_bound(Scalar(7), fr(1, 3)).holds);
  CHECK(lemma31_bound(Scalar(100), fr(5, 7)).holds);
  CHECK(lemma31_bound(q("41/3"), fr(2, 9)).holds);
}

TEST_CASE("tabulated sums") {
  CHECK(tab_sum(6, fr(1, 2)) == 0);
  CHECK(abs(tab_sum(3, fr(1, 3))) <= 12);
  CHECK(abs(tab_sum(50, fr(2, 5))) <= 30);
}

TEST_CASE("L2 norm") {
  CHECK(l2_norm_sq(1) == fr(1, 12));
  CHECK(l2_norm_sq(2) == fr(1, 16));
  auto table = l2_norm_sq_table(40);
  for (std::uint64_t x = 1; x <= 40; ++x) {
    REQUIRE(table[x] == oracle::l2_jordan(x));
    REQUIRE(table[x] >= Fraction(Integer(to_integer(x)), Integer(12 * to_integer(x * x))));
  }
  for (std::uint64_t x = 1; x <= 14; ++x) REQUIRE(table[x] == oracle::l2_piecewise(x));
  CHECK_THROWS_AS(l2_norm_sq(0), DomainError);
}
