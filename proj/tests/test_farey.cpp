#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "remsum/farey.hpp"

using namespace remsum;

namespace {

Scalar q(const char* text) { return parse_scalar(text); }
Fraction fr(long a, long b) { return Fraction(Integer(a), Integer(b)); }

const ArithTables& tables() {
  static const ArithTables t = build_tables(1000);
  return t;
}

}  // namespace

TEST_CASE("arithmetic tables") {
  const auto& t = tables();
  CHECK(std::vector<std::uint32_t>(t.phi.begin() + 1, t.phi.begin() + 6) ==
        std::vector<std::uint32_t>{1, 1, 2, 2, 4});
  CHECK(std::vector<std::int8_t>(t.mu.begin() + 1, t.mu.begin() + 7) ==
        std::vector<std::int8_t>{1, -1, -1, 0, -1, 1});
  CHECK(t.mertens[1] == 1);
  CHECK(t.mertens[4] == -1);
  for (std::uint64_t k = 1; k <= 1000; ++k) {
    REQUIRE(t.phi[k] == oracle::totient(k));
    REQUIRE(t.mu[k] == oracle::mobius(k));
    int s = 0;
    for (std::uint64_t d = 1; d <= k; ++d) {
      if (k % d == 0) s += t.mu[d];
    }
    REQUIRE(s == (k == 1 ? 1 : 0));
  }
  CHECK(t.phi_over_k(3) == fr(1, 1) + fr(1, 2) + fr(2, 3));
  auto small = build_tables(1);
  CHECK(small.phi[1] == 1);
  CHECK_THROWS_AS(build_tables(0), DomainError);
}

TEST_CASE("farey sequences") {
  auto f3 = farey(3).fractions;
  CHECK(f3 == std::vector<Fraction>{fr(0, 1), fr(1, 3), fr(1, 2), fr(2, 3), fr(1, 1)});
  CHECK(farey(5).fractions.size() == 11);
  CHECK(farey(1).fractions == std::vector<Fraction>{fr(0, 1), fr(1, 1)});
  for (std::uint64_t n = 1; n <= 300; ++n) {
    auto f = farey(n).fractions;
    REQUIRE(f.size() == 1 + tables().phi_prefix[n]);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      REQUIRE(f[i + 1].num() * f[i].den() - f[i].num() * f[i + 1].den() == 1);
      REQUIRE(f[i + 1].den() <= n);
    }
    if (n <= 40) REQUIRE(f == oracle::farey_enum(n));
  }
}

TEST_CASE("q_k examples") {
  const auto& t = tables();
  CHECK(q_k(1, q("2/5"), t) == q("1/10"));
  CHECK(q_k(2, q("2/5"), t) == q("-2/5"));
  CHECK(q_k(4, q("1/8"), t) == q("-1/4"));
  CHECK(q_k(1, q("2/5"), t, Saw::beta0) == q("1/10"));
  CHECK(q_k(1, Scalar(0), t, Saw::beta0) == Scalar(0));
  CHECK_THROWS_AS(q_k(1001, q("1/2"), t), DomainError);
}

TEST_CASE("Phi_x examples and both forms") {
  const auto& t = tables();
  CHECK(phi_x(Scalar(3), q("2/5"), t) == q("-1/30"));
  CHECK(phi_x(Scalar(1), q("1/2"), t) == Scalar(0));
  CHECK(phi_x(Scalar(2), Scalar(0), t) == q("1/4"));
  oracle::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Scalar u(rng.fraction(97, -2, 2));
    for (std::uint64_t x : {1u, 2u, 17u, 64u, 300u}) {
      REQUIRE(phi_x(Scalar(x), u, t) == phi_x_qsum(Scalar(x), u, t));
      REQUIRE(phi_x(Scalar(x), u, t, Saw::beta0) == phi_x_qsum(Scalar(x), u, t, Saw::beta0));
    }
    REQUIRE(phi_x(q("41/3"), u, t) == phi_x_qsum(q("41/3"), u, t));
  }
  Scalar g = q("(-1+1*sqrt(5))/2");
  CHECK(phi_x(Scalar(120), g, t) == phi_x_qsum(Scalar(120), g, t));
}

TEST_CASE("Mobius inversion of beta0") {
  const auto& t = tables();
  for (const Scalar& u : {q("(-1+1*sqrt(2))/1"), q("(-1+1*sqrt(5))/2"), q("3/7"), q("-11/12")}) {
    std::vector<Scalar> qs(201);
    for (std::uint64_t k = 1; k <= 200; ++k) qs[k] = q_k(k, u, t, Saw::beta0);
    for (std::uint64_t n = 1; n <= 200; ++n) {
      Scalar s;
      for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d == 0) s += qs[d];
      }
      REQUIRE(beta0(u * Scalar(to_integer(n))) == -s);
    }
  }
}

TEST_CASE("farey counting identity") {
  const auto& t = tables();
  auto a = farey_count(3, q("2/5"), t);
  CHECK(a.count == 2);
  CHECK(a.identity_lhs == Scalar(2));
  auto b = farey_count(1, q("1/2"), t);
  CHECK(b.count == 1);
  CHECK(b.identity_lhs == Scalar(1));
  auto c = farey_count(2, Scalar(0), t);
  CHECK(c.count == 1);
  CHECK(c.identity_lhs == Scalar(1));
  CHECK(c.identity_lhs_mid == q("1/2"));
  CHECK_THROWS_AS(farey_count(2, q("-1/2"), t), DomainError);

  oracle::Rng rng(9);
  for (std::uint64_t n = 1; n <= 30; ++n) {
    for (int i = 0; i < 40; ++i) {
      Scalar u(rng.fraction(2 * static_cast<std::int64_t>(n), 0, 3));
      auto r = farey_count(n, u, t);
      // right-continuous closed form counts the endpoint, also at Farey points
      REQUIRE(Scalar(r.count) == r.identity_lhs);
      REQUIRE(Scalar(r.count + r.count_open) / Scalar(2) == r.identity_lhs_mid);
    }
  }
  Scalar g = q("(1+1*sqrt(5))/2");
  auto r = farey_count(25, g, t);
  CHECK(Scalar(r.count) == r.identity_lhs);
  CHECK(r.count == r.count_open);
}

TEST_CASE("limit function h") {
  const auto& t = tables();
  constexpr long double pi = std::numbers::pi_v<long double>;
  CHECK(h_value(fr(0, 1), t) == 0.0L);
  CHECK(std::abs(h_value(fr(1, 1), t) - 3 / (pi * pi)) < 1e-18L);
  CHECK(std::abs(h_value(fr(2, 1), t) - (6 / (pi * pi) - 0.5L)) < 1e-18L);
  CHECK(h_value(fr(-7, 3), t) == -h_value(fr(7, 3), t));
  CHECK(r_minus_s(fr(2, 1), t) == fr(-1, 2));
  // h is continuous: the jumps of r_x and s_x at integers cancel
  for (long m = 1; m <= 400; ++m) {
    Fraction left = fr(m, 1) - fr(1, 1000000000);
    REQUIRE(std::abs(h_value(left, t) - h_value(fr(m, 1), t)) < 1e-6L);
  }
}

TEST_CASE("h decays between windows") {
  const auto& t = tables();
  long double early = 0;
  long double late = 0;
  for (long i = 0; i <= 2300; ++i) early = std::max(early, std::abs(h_value(fr(2, 1) + fr(i, 100), t)));
  for (long i = 0; i <= 4500; ++i) late = std::max(late, std::abs(h_value(fr(50, 1) + fr(i, 10), t)));
  CHECK(late < early);
}

TEST_CASE("h csv") {
  std::ostringstream os;
  write_h_csv(os, {fr(0, 1), fr(1, 2), fr(-3, 1)}, tables());
  std::string s = os.str();
  CHECK(s.rfind("x,h\n0,0\n0.5,", 0) == 0);
}
