#pragma once

// Continued fractions <l0; l1, l2, ...> of exact scalars: expansion through
// complete quotients, convergents, evaluation and fundamental intervals.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "remsum/exactnum.hpp"

namespace remsum {

/// Finite expansion (period empty) or eventually periodic expansion.
///
/// Finite expansions are canonical: the last coefficient is >= 2 unless the
/// expansion is <l0; 1>.
struct CFExpansion {
  Integer lambda0;
  std::vector<Integer> head;    // l1 .. lh; the whole tail when finite
  std::vector<Integer> period;  // repeating block after head

  bool is_finite() const { return period.empty(); }

  /// Number of coefficients l_j, j >= 1, for finite expansions.
  std::optional<std::size_t> length() const {
    if (is_finite()) return head.size();
    return std::nullopt;
  }

  bool has_coefficient(std::size_t j) const {
    return j == 0 || !is_finite() || j <= head.size();
  }

  /// l_j for j >= 0.
  const Integer& coefficient(std::size_t j) const {
    if (j == 0) return lambda0;
    if (j <= head.size()) return head[j - 1];
    if (is_finite()) throw DomainError("coefficient index past a finite expansion");
    return period[(j - 1 - head.size()) % period.size()];
  }

  friend bool operator==(const CFExpansion&, const CFExpansion&) = default;
};

/// a_k / b_k = <l0, ..., l_{k-1}> with a_0/b_0 = 1/0.
struct Convergent {
  Integer a;
  Integer b;
  std::size_t index = 0;
};

inline std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t upto_k) {
  std::vector<Convergent> out;
  out.reserve(upto_k + 1);
  out.push_back({Integer(1), Integer(0), 0});
  if (upto_k == 0) return out;
  out.push_back({cf.lambda0, Integer(1), 1});
  for (std::size_t k = 1; k < upto_k; ++k) {
    if (!cf.has_coefficient(k)) throw DomainError("expansion shorter than upto_k");
    const Integer& l = cf.coefficient(k);
    out.push_back({out[k - 1].a + l * out[k].a, out[k - 1].b + l * out[k].b, k + 1});
  }
  return out;
}

/// Exact value of a finite expansion.
inline Fraction evaluate(const CFExpansion& cf) {
  if (!cf.is_finite()) throw DomainError("evaluate needs a finite expansion");
  // Backward recurrence: value = l0 + 1/(l1 + 1/(...)).
  Integer num = 1;
  Integer den = 0;
  for (auto it = cf.head.rbegin(); it != cf.head.rend(); ++it) {
    Integer next = *it * num + den;
    den = num;
    num = std::move(next);
  }
  return Fraction(Integer(cf.lambda0 * num + den), num);
}

/// Exact value of any expansion; periodic ones land in Q(sqrt D).
inline Scalar value(const CFExpansion& cf) {
  if (cf.is_finite()) return Scalar(evaluate(cf));
  // Tail y = <p1, ..., pk, y> = (A y + A') / (B y + B').
  CFExpansion block{cf.period.front(),
                    std::vector<Integer>(cf.period.begin() + 1, cf.period.end()), {}};
  const auto pc = convergents(block, cf.period.size());
  const Integer& A = pc[cf.period.size()].a;
  const Integer& A1 = pc[cf.period.size() - 1].a;
  const Integer& B = pc[cf.period.size()].b;
  const Integer& B1 = pc[cf.period.size() - 1].b;
  // B y^2 + (B' - A) y - A' = 0, positive root.
  Integer disc = (A - B1) * (A - B1) + 4 * A1 * B;
  Scalar y = Scalar::quadratic(Integer(A - B1), Integer(1), disc, Integer(2 * B));
  // t = <l0; head..., y>
  CFExpansion prefix{cf.lambda0, cf.head, {}};
  const auto hc = convergents(prefix, cf.head.size() + 1);
  const Convergent& c1 = hc[cf.head.size() + 1];
  const Convergent& c0 = hc[cf.head.size()];
  return (y * Scalar(c1.a) + Scalar(c0.a)) / (y * Scalar(c1.b) + Scalar(c0.b));
}

namespace detail {

inline std::tuple<Integer, Integer, Integer> state_key(const Scalar& v) {
  const QuadExt& q = v.as_quad();
  return {q.p(), q.q(), q.r()};
}

inline CFExpansion expand_rational(const Fraction& t) {
  CFExpansion cf;
  Integer a = t.num();
  Integer b = t.den();
  cf.lambda0 = floor_div(a, b);
  Integer rem = a - cf.lambda0 * b;
  a = b;
  b = rem;
  while (b != 0) {
    Integer l = floor_div(a, b);
    rem = a - l * b;
    cf.head.push_back(std::move(l));
    a = b;
    b = rem;
  }
  return cf;
}

}  // namespace detail

/// Continued fraction of t. Quadratic irrationals are expanded until the
/// first repeated complete quotient; rationals are expanded in full.
inline CFExpansion expand(const Scalar& t, std::size_t max_terms) {
  if (max_terms < 1) throw DomainError("max_terms must be positive");
  if (const auto* f = t.fraction()) return detail::expand_rational(*f);

  CFExpansion cf;
  cf.lambda0 = floor(t);
  Scalar theta = t;
  std::vector<Integer> lambdas;
  std::map<std::tuple<Integer, Integer, Integer>, std::size_t> seen;  // state -> j
  for (std::size_t j = 1; j <= max_terms + 1; ++j) {
    theta = (theta - Scalar(floor(theta))).reciprocal();
    auto [it, inserted] = seen.emplace(detail::state_key(theta), j);
    if (!inserted) {
      const std::size_t first = it->second;
      cf.head.assign(lambdas.begin(), lambdas.begin() + static_cast<std::ptrdiff_t>(first - 1));
      cf.period.assign(lambdas.begin() + static_cast<std::ptrdiff_t>(first - 1), lambdas.end());
      return cf;
    }
    lambdas.push_back(floor(theta));
  }
  throw PeriodNotFound("no repeated complete quotient within " + std::to_string(max_terms) +
                       " terms");
}

/// Complete quotients theta_1 .. theta_m.
inline std::vector<Scalar> theta_sequence(const Scalar& t, std::size_t m) {
  std::vector<Scalar> out;
  out.reserve(m);
  Scalar theta = t;
  for (std::size_t j = 1; j <= m; ++j) {
    Scalar fractional = theta - Scalar(floor(theta));
    if (fractional.sign() == 0) {
      throw RationalTerminated("integer complete quotient before step " + std::to_string(j));
    }
    theta = fractional.reciprocal();
    out.push_back(theta);
  }
  return out;
}

struct FundamentalInterval {
  Fraction lo;
  Fraction hi;
  Fraction length;
};

/// J(l1, ..., lj): irrationals between <0; l1..lj> and <0; l1..lj + 1>.
inline FundamentalInterval fundamental_interval(const std::vector<Integer>& lambdas) {
  if (lambdas.empty()) throw DomainError("fundamental interval needs coefficients");
  CFExpansion lower{Integer(0), lambdas, {}};
  CFExpansion upper = lower;
  upper.head.back() += 1;
  Fraction x = evaluate(lower);
  Fraction y = evaluate(upper);
  if (y < x) std::swap(x, y);

  const std::size_t j = lambdas.size();
  const auto c = convergents(lower, j);
  const Integer& bj = c[j].b;
  const Integer& bj1 = c[j - 1].b;
  const Integer& lj = lambdas.back();
  Integer denom = (bj * (lj + 1) + bj1) * (bj * lj + bj1);
  return {std::move(x), std::move(y), Fraction(Integer(1), denom)};
}

// ---------------------------------------------------------------------------
// Text encoding: "l0;l1,l2" finite, "l0;l1,(p1,p2)" eventually periodic.

inline std::string to_string(const CFExpansion& cf) {
  std::string out = cf.lambda0.get_str();
  if (cf.head.empty() && cf.period.empty()) return out;
  out += ";";
  bool first = true;
  for (const auto& l : cf.head) {
    if (!first) out += ",";
    out += l.get_str();
    first = false;
  }
  if (!cf.period.empty()) {
    if (!first) out += ",";
    out += "(";
    for (std::size_t i = 0; i < cf.period.size(); ++i) {
      if (i != 0) out += ",";
      out += cf.period[i].get_str();
    }
    out += ")";
  }
  return out;
}

/// Inverse of to_string. A finite tail ending in 1 (after the first
/// coefficient) is folded into its predecessor to reach the canonical form.
inline CFExpansion parse_cf(std::string_view text) {
  detail::Cursor c(text);
  CFExpansion cf;
  cf.lambda0 = c.integer();
  if (c.accept(";")) {
    bool in_period = false;
    bool closed = false;
    bool expect_item = true;
    while (expect_item) {
      if (!in_period && c.accept("(")) in_period = true;
      Integer l = c.integer(false);
      if (l < 1) c.fail("coefficients after l0 must be positive");
      (in_period ? cf.period : cf.head).push_back(std::move(l));
      if (in_period && c.accept(")")) {
        if (!c.done()) c.fail("period must close the expansion");
        closed = true;
        break;
      }
      expect_item = c.accept(",");
    }
    if (in_period && !closed) c.fail("unterminated period");
  }
  if (!c.done()) c.fail("trailing characters");
  if (cf.is_finite() && cf.head.size() >= 2 && cf.head.back() == 1) {
    cf.head.pop_back();
    cf.head.back() += 1;
  }
  return cf;
}

}  // namespace remsum
