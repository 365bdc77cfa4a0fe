#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "remsum/measure.hpp"

using namespace remsum;

namespace {

Fraction fr(long a, long b) { return Fraction(Integer(a), Integer(b)); }
std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Sum of fundamental_interval lengths by brute enumeration of tuples.
Fraction enumerate_measure(const std::vector<Integer>& alphas) {
  Fraction total;
  std::vector<Integer> l(alphas.size(), Integer(1));
  if (alphas.empty()) return Fraction(1);
  for (const auto& a : alphas) {
    if (a < 2) return Fraction(0);
  }
  for (;;) {
    total += fundamental_interval(l).length;
    std::size_t i = 0;
    while (i < l.size() && l[i] + 1 > alphas[i] - 1) {
      l[i] = 1;
      ++i;
    }
    if (i == l.size()) break;
    l[i] += 1;
  }
  return total;
}

}  // namespace

TEST_CASE("measure examples") {
  auto a = measure_exact(ints({2}));
  CHECK(a.exact_measure == fr(1, 2));
  CHECK(a.lower_bound == fr(1, 4));
  CHECK(a.upper_bound == fr(1, 2));
  auto b = measure_exact(ints({2, 2}));
  CHECK(b.exact_measure == fr(1, 6));
  CHECK(b.lower_bound == fr(1, 16));
  CHECK(b.upper_bound == fr(1, 4));
  CHECK(measure_exact(ints({1, 7})).exact_measure == Fraction(0));
  CHECK(measure_exact(ints({9, 1})).exact_measure == Fraction(0));
  CHECK_THROWS_AS(measure_exact(ints({0})), DomainError);
  CHECK_THROWS_AS(measure_exact(ints({1001, 1001, 12})), TooLarge);
}

TEST_CASE("product bounds hold exhaustively for entries in [2,5], m <= 4") {
  std::vector<Integer> alphas;
  std::size_t checked = 0;
  auto rec = [&](auto&& self) -> void {
    if (!alphas.empty()) {
      auto s = measure_exact(alphas);
      REQUIRE(s.lower_bound <= s.exact_measure);
      REQUIRE(s.exact_measure <= s.upper_bound);
      if (alphas.size() <= 3) REQUIRE(s.exact_measure == enumerate_measure(alphas));
      // nesting
      if (alphas.size() >= 2) {
        std::vector<Integer> shorter(alphas.begin(), alphas.end() - 1);
        REQUIRE(s.exact_measure <= measure_exact(shorter).exact_measure);
      }
      ++checked;
    }
    if (alphas.size() == 4) return;
    for (long a = 2; a <= 5; ++a) {
      alphas.emplace_back(a);
      self(self);
      alphas.pop_back();
    }
  };
  rec(rec);
  CHECK(checked == 4 + 16 + 64 + 256);
}

TEST_CASE("first-level intervals telescope") {
  Fraction total;
  for (long K = 1; K <= 100; ++K) {
    total += fundamental_interval(ints({K})).length;
    REQUIRE(total == Fraction(1) - fr(1, K + 1));
  }
}

TEST_CASE("inner sum closed form") {
  std::vector<Integer> l;
  auto rec = [&](auto&& self) -> void {
    if (!l.empty()) {
      auto c = convergents(CFExpansion{0, l, {}}, l.size());
      const Integer& bm = c[l.size()].b;
      const Integer& bm1 = c[l.size() - 1].b;
      const Integer& lm = l.back();
      for (long alpha = 2; alpha <= 4; ++alpha) {
        Fraction sum;
        for (long k = 1; k < alpha; ++k) {
          auto ext = l;
          ext.emplace_back(k);
          sum += fundamental_interval(ext).length;
        }
        Fraction inv_alpha(Integer(1), Integer(alpha));
        Fraction closed = (Fraction(1) - inv_alpha) /
                          ((Fraction(bm) * Fraction(Integer(lm + 1)) + Fraction(bm1)) *
                           (Fraction(bm) * (Fraction(lm) + inv_alpha) + Fraction(bm1)));
        REQUIRE(sum == closed);
      }
    }
    if (l.size() == 3) return;
    for (long v = 1; v <= 3; ++v) {
      l.emplace_back(v);
      self(self);
      l.pop_back();
    }
  };
  rec(rec);
}

TEST_CASE("threshold") {
  auto a = mn_threshold(3, 1);
  CHECK(a.m == 4);
  CHECK(a.cutoff == 2);
  CHECK(mn_threshold(20, 1).m == 11);
  const long double th = theta_loglog(100);
  CHECK(mn_threshold(100, th).cutoff ==
        1 + static_cast<std::uint64_t>(std::floor(th * std::log(100.0L))));
  CHECK_THROWS_AS(mn_threshold(2, 1), DomainError);
  CHECK_THROWS_AS(mn_threshold(10, 0.5L), DomainError);
}

TEST_CASE("sampler") {
  CHECK(sample_bounded_cf(2, 4, 123) == parse_scalar("(-1+1*sqrt(5))/2"));
  CHECK(value(CFExpansion{0, {}, ints({2})}) == parse_scalar("(-1+1*sqrt(2))/1"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto cf = sample_bounded_expansion(3, 5, seed);
    CHECK(cf.period.size() == 8);
    Scalar t = value(cf);
    CHECK(in_Mn(t, 40, 3));
    CHECK(expand(t, 100).period.size() <= 8);
  }
  CHECK(sample_bounded_expansion(17, 30, 9) == sample_bounded_expansion(17, 30, 9));
  CHECK_FALSE(sample_bounded_expansion(17, 30, 9) == sample_bounded_expansion(17, 30, 10));
  CHECK_FALSE(in_Mn(parse_scalar("(-1+1*sqrt(2))/1"), 3, 2));
  CHECK_THROWS_AS(sample_bounded_cf(1, 4, 0), DomainError);
}

TEST_CASE("mass bound on M_n") {
  for (std::uint64_t n : {3u, 100u, 1000u}) {
    auto r = verify_b0_mass(n, theta_loglog(n), 20, 42);
    CHECK(r.pass);
    CHECK(r.max_ratio <= 1);
    CHECK(r.samples == 20);
  }
  auto again = verify_b0_mass(100, theta_loglog(100), 20, 42);
  CHECK(to_json(again).dump() == to_json(verify_b0_mass(100, theta_loglog(100), 20, 42)).dump());
  CHECK(to_json(again).dump().rfind("{\"n\":100,\"theta\":", 0) == 0);
}

TEST_CASE("almost-everywhere bound") {
  Scalar g = parse_scalar("(-1+1*sqrt(5))/2");
  auto r = verify_ae_bound(1000, 0.5L, theta_loglog(1000), g, expand(g, 10));
  CHECK(r.pass);
  Scalar s = parse_scalar("(-1+1*sqrt(2))/1");
  CHECK(verify_ae_bound(10000, 1.0L, theta_loglog(10000), s, expand(s, 10)).pass);
  // lambda_j = j^2 outgrows j^(3/2)
  CFExpansion squares{0, ints({1, 4, 9, 16, 25, 36, 49, 64, 81, 100}), ints({1})};
  CHECK_THROWS_AS(verify_ae_bound(1000, 0.5L, 1.0L, value(squares), squares), NotMember);
  CHECK_FALSE(in_tilde_Mn(squares, 0.5L, 1.0L));
  CHECK(in_tilde_Mn(squares, 1.0L, 1.0L));
  // periodic part above theta for small j
  CHECK_FALSE(in_tilde_Mn(CFExpansion{0, {}, ints({3})}, 0.5L, 1.0L));
  CHECK(in_tilde_Mn(CFExpansion{0, {}, ints({3})}, 0.5L, 3.0L));
}
