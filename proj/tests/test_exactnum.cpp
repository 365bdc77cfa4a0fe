#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "remsum/exactnum.hpp"

using namespace remsum;

namespace {

Scalar q(const char* text) { return parse_scalar(text); }

const Scalar kSqrt2 = Scalar::quadratic(0, 1, 2, 1);

}  // namespace

TEST_CASE("fractions are always reduced") {
  Fraction f(Integer(6), Integer(-4));
  CHECK(f.num() == -3);
  CHECK(f.den() == 2);
  CHECK_THROWS_AS(Fraction(Integer(1), Integer(0)), DomainError);
  CHECK(Fraction(3) / Fraction(6) == Fraction(Integer(1), Integer(2)));
  CHECK(Fraction(Integer(1), Integer(3)) < Fraction(Integer(1), Integer(2)));
}

TEST_CASE("floor of rationals and quadratic irrationals") {
  CHECK(floor(q("7/10")) == 0);
  CHECK(floor(kSqrt2) == 1);
  CHECK(floor(-kSqrt2) == -2);
  CHECK(floor(q("-7/10")) == -1);
  CHECK(floor(q("(1+1*sqrt(5))/2")) == 1);
  CHECK(floor(q("(-1+1*sqrt(5))/2")) == 0);
}

TEST_CASE("floor agrees with bisection on random quadratic values") {
  oracle::Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    Integer p = static_cast<long>(rng.between(-5000, 5000));
    Integer qq = static_cast<long>(rng.between(-300, 300));
    Integer d = static_cast<long>(rng.between(2, 97));
    Integer r = static_cast<long>(rng.between(1, 400));
    if (is_perfect_square(d) || qq == 0) continue;
    Scalar x = Scalar::quadratic(p, qq, d, r);
    CHECK(floor(x) == oracle::bisect_floor(p, qq, d, r));
  }
}

TEST_CASE("beta and beta0") {
  CHECK(beta(Scalar(0)) == q("-1/2"));
  CHECK(beta(q("1/2")) == Scalar(0));
  CHECK(beta(q("3/10")) == q("-1/5"));
  CHECK(beta0(Scalar(1)) == Scalar(0));
  CHECK(beta0(q("1/2")) == Scalar(0));
  CHECK(beta0(kSqrt2) == kSqrt2 - q("3/2"));
  for (int m = -20; m <= 20; ++m) {
    CHECK(beta0(Scalar(m)) == Scalar(0));
    CHECK(beta(Scalar(m)) == q("-1/2"));
  }
}

TEST_CASE("floor plus fractional part reconstructs random fractions") {
  oracle::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    Scalar x(rng.fraction(1000, -50, 50));
    Scalar f = frac(x);
    CHECK(Scalar(floor(x)) + f == x);
    CHECK(f.sign() >= 0);
    CHECK(f < Scalar(1));
  }
}

TEST_CASE("beta is 1-periodic") {
  oracle::Rng rng(6);
  const Scalar golden = q("(-1+1*sqrt(5))/2");
  for (int i = 0; i < 1000; ++i) {
    Scalar k(rng.between(-1000, 1000));
    Scalar x(rng.fraction(500, -3, 3));
    CHECK(beta(x + k) == beta(x));
    Scalar y = golden * Scalar(rng.between(-40, 40)) + Scalar(rng.fraction(30, -2, 2));
    CHECK(beta(y + k) == beta(y));
    Scalar b = beta(y);
    CHECK(b >= q("-1/2"));
    CHECK(b < q("1/2"));
  }
}

TEST_CASE("quadratic field arithmetic") {
  Scalar phi = q("(1+1*sqrt(5))/2");
  CHECK(phi * phi == phi + Scalar(1));
  CHECK(phi.reciprocal() == phi - Scalar(1));
  CHECK(kSqrt2 * kSqrt2 == Scalar(2));
  CHECK((kSqrt2 * kSqrt2).is_rational());
  CHECK_THROWS_AS(kSqrt2 + phi, IncompatibleField);
  // square factors move out of the radicand
  Scalar s8 = Scalar::quadratic(0, 1, 8, 1);
  CHECK(s8 == Scalar(2) * kSqrt2);
  CHECK(Scalar::quadratic(1, 1, 9, 2) == Scalar(2));
  CHECK_THROWS_AS(QuadExt(0, 1, 4, 1), DomainError);
  CHECK_THROWS_AS(QuadExt(0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(Scalar(0).reciprocal(), DomainError);
}

TEST_CASE("quadratic comparison agrees with 200-bit evaluation") {
  oracle::Rng rng(7);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Scalar a = Scalar::quadratic(rng.between(-10000, 10000), rng.between(-100, 100), 7,
                                 rng.between(1, 100));
    Scalar b = Scalar::quadratic(rng.between(-10000, 10000), rng.between(-100, 100), 7,
                                 rng.between(1, 100));
    const int exact = a < b ? -1 : (a == b ? 0 : 1);
    BigFloat fa = to_float(a, 200);
    BigFloat fb = to_float(b, 200);
    const int approx = compare(fa, fb);
    CHECK(exact == (approx > 0 ? 1 : (approx < 0 ? -1 : 0)));
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("to_float") {
  CHECK(to_double(q("1/2")) == 0.5);
  CHECK(to_double(kSqrt2) == 1.4142135623730951);
  CHECK(to_double(q("(1+1*sqrt(5))/2")) == 1.618033988749895);
  CHECK_THROWS_AS(to_float(kSqrt2, 24), DomainError);
  // cancellation: 1e6 - sqrt(1e12 - 1) = 1 / (1e6 + sqrt(1e12 - 1))
  Scalar tiny = Scalar::quadratic(1000000, -1, Integer("999999999999"), 1);
  const double expected = 1.0 / (1e6 + std::sqrt(999999999999.0));
  CHECK(std::abs(to_double(tiny) / expected - 1.0) < 1e-15);
}

TEST_CASE("text encoding round-trips") {
  for (const char* text : {"-3/7", "0", "5", "(-1+1*sqrt(5))/2", "(3-2*sqrt(7))/5", "(0+1*sqrt(2))/1"}) {
    CHECK(to_string(parse_scalar(text)) == text);
  }
  CHECK(to_string(q("(1+1*sqrt(2))")) == "(1+1*sqrt(2))/1");
  CHECK(to_string(q("4/6")) == "2/3");
  CHECK(to_string(q("010/03")) == "10/3");
  CHECK(to_string(q("(07+010*sqrt(5))/09")) == "(7+10*sqrt(5))/9");
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
  CHECK_THROWS_AS(parse_scalar("(1+2*sqrt(3)"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/2x"), ParseError);
}
