#pragma once

// Sawtooth sums S(n,t) = sum_{k<=n} beta(kt) and their means B_n(t) = S(n,t)/n.
//
// Three independent evaluation routes are provided: the O(n) definition
// (brute_S), Ostrowski's recursion over the continued fraction convergents
// (ostrowski_S), and the recursion through the Gauss-map sequence t_j built
// from the eta_tilde decomposition (bseq_S). All of them are exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "remsum/cfrac.hpp"
#include "remsum/eta.hpp"
#include "remsum/exactnum.hpp"

namespace remsum {

enum class Method { brute, ostrowski, bseq };

namespace detail {

using i128 = __int128;

inline Integer from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::uint64_t limbs[2] = {static_cast<std::uint64_t>(u >> 64), static_cast<std::uint64_t>(u)};
  Integer z;
  mpz_import(z.get_mpz_t(), 2, 1, sizeof(std::uint64_t), 0, 0, limbs);
  return neg ? Integer(-z) : z;
}

inline bool fits_bits(const Integer& v, std::size_t bits) {
  return mpz_sizeinbase(v.get_mpz_t(), 2) <= bits;
}

inline std::int64_t to_i64(const Integer& v) { return v.get_si(); }

inline i128 floor_div_i128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Calls emit(k, floor(k t)) for k = 1..n. The callback receives the floor as
// an Integer; machine-word paths are used when every intermediate fits.
template <class Emit>
void for_each_floor(const Scalar& t, std::uint64_t n, Emit&& emit) {
  if (n == 0) return;
  if (const auto* f = t.fraction()) {
    const Integer& a = f->num();
    const Integer& b = f->den();
    if (fits_bits(a, 62) && fits_bits(b, 62)) {
      // floor((k+1)a/b) = floor(ka/b) + qa + carry, with a = qa b + ra.
      const i128 bb = to_i64(b);
      const i128 aa = to_i64(a);
      const i128 qa = floor_div_i128(aa, bb);
      const i128 ra = aa - qa * bb;
      i128 quot = 0;
      i128 rem = 0;
      for (std::uint64_t k = 1; k <= n; ++k) {
        quot += qa;
        rem += ra;
        if (rem >= bb) {
          rem -= bb;
          ++quot;
        }
        emit(k, quot);
      }
      return;
    }
    for (std::uint64_t k = 1; k <= n; ++k) {
      emit(k, remsum::floor_div(Integer(a * to_integer(k)), b));
    }
    return;
  }

  const QuadExt& v = t.as_quad();
  const bool small = fits_bits(v.p(), 40) && fits_bits(v.q(), 24) && fits_bits(v.d(), 30) &&
                     fits_bits(v.r(), 60) && n < (std::uint64_t{1} << 24);
  if (small) {
    // s_k = floor(k |q| sqrt d) grows by floor(|q| sqrt d) or one more per step.
    const i128 p = to_i64(v.p());
    const i128 aq = to_i64(Integer(abs(v.q())));
    const i128 d = to_i64(v.d());
    const i128 r = to_i64(v.r());
    const bool negative_q = v.q() < 0;
    const i128 step = to_i64(isqrt(Integer(v.q() * v.q() * v.d())));
    i128 s = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      const i128 kq = aq * static_cast<i128>(k);
      const i128 target = kq * kq * d;
      s += step;
      while ((s + 1) * (s + 1) <= target) ++s;
      const i128 fl = negative_q ? -s - 1 : s;
      emit(k, floor_div_i128(p * static_cast<i128>(k) + fl, r));
    }
    return;
  }
  for (std::uint64_t k = 1; k <= n; ++k) {
    emit(k, v.scaled(to_integer(k)).floor());
  }
}

inline Integer as_integer(const Integer& v) { return v; }
inline Integer as_integer(i128 v) { return from_i128(v); }

// sum_{k<=n} floor(k t)
inline Integer floor_total(const Scalar& t, std::uint64_t n) {
  i128 fast = 0;
  Integer slow = 0;
  for_each_floor(t, n, [&](std::uint64_t, const auto& fl) {
    if constexpr (std::is_same_v<std::decay_t<decltype(fl)>, i128>) {
      fast += fl;
    } else {
      slow += fl;
    }
  });
  return slow + from_i128(fast);
}

// t n(n+1)/2 - F - n/2, the sawtooth sum given the floor total F.
inline Scalar sum_from_floors(const Scalar& t, std::uint64_t n, const Integer& floors) {
  Integer nn = to_integer(n);
  Fraction half_tri(Integer(nn * (nn + 1)), Integer(2));
  return t * Scalar(half_tri) - Scalar(Fraction(Integer(floors * 2 + nn), Integer(2)));
}

// Number of k <= n with k t an integer.
inline Integer integer_hits(const Scalar& t, std::uint64_t n) {
  if (const auto* f = t.fraction()) return floor_div(to_integer(n), f->den());
  return 0;
}

}  // namespace detail

/// S(n,t) straight from the definition; the reference for every other route.
inline Scalar brute_S(std::uint64_t n, const Scalar& t) {
  return detail::sum_from_floors(t, n, detail::floor_total(t, n));
}

/// sum_{k<=n} beta0(k t).
inline Scalar brute_S0(std::uint64_t n, const Scalar& t) {
  return brute_S(n, t) + Scalar(Fraction(detail::integer_hits(t, n), Integer(2)));
}

/// Exact S(m,t) and S0(m,t) for every m <= n_max from one O(n_max) pass.
class SawtoothPrefix {
 public:
  SawtoothPrefix(Scalar t, std::uint64_t n_max) : t_(std::move(t)), floors_(n_max + 1) {
    detail::i128 fast = 0;
    Integer slow = 0;
    detail::for_each_floor(t_, n_max, [&](std::uint64_t k, const auto& fl) {
      if constexpr (std::is_same_v<std::decay_t<decltype(fl)>, detail::i128>) {
        fast += fl;
        floors_[k] = detail::from_i128(fast);
      } else {
        slow += fl;
        floors_[k] = slow;
      }
    });
  }

  std::uint64_t n_max() const { return floors_.size() - 1; }
  const Scalar& t() const { return t_; }

  Scalar S(std::uint64_t n) const { return detail::sum_from_floors(t_, n, at(n)); }
  Scalar S0(std::uint64_t n) const {
    return S(n) + Scalar(Fraction(detail::integer_hits(t_, n), Integer(2)));
  }

 private:
  const Integer& at(std::uint64_t n) const {
    if (n >= floors_.size()) throw DomainError("n beyond the prefix table");
    return floors_[n];
  }

  Scalar t_;
  std::vector<Integer> floors_;
};

// ---------------------------------------------------------------------------
// Traces

struct OstrowskiStep {
  std::size_t j_star = 0;
  std::uint64_t n_before = 0;
  std::uint64_t n_after = 0;  // n' = n mod b_{j*}
  std::uint64_t multiplier = 0;  // floor(n / b_{j*})
  Integer lambda;  // l_{j*}
  Scalar rho;      // |b_{j*} t - a_{j*}|
  Scalar factor;   // 1 - rho (n + n' + 1)
  Scalar increment;
};

struct BseqStep {
  std::size_t j = 0;
  std::uint64_t n_j = 0;
  Scalar t_j;
  Integer lambda_next;  // floor(1 / t_j)
  Scalar term;          // signed contribution to S(n,t)
};

struct SumTrace {
  std::variant<std::vector<OstrowskiStep>, std::vector<BseqStep>> steps;
  Scalar total;
  /// (1/2) sum of the partial quotients the recursion touched.
  Fraction bound;
  /// Ostrowski: every step met its side conditions. Bsequence: |total| <= bound.
  bool conditions_hold = true;

  std::size_t size() const {
    return std::visit([](const auto& s) { return s.size(); }, steps);
  }
};

struct SumResult {
  Scalar value;
  SumTrace trace;
};

// ---------------------------------------------------------------------------
// Ostrowski recursion

/// S(n,t) for irrational t through S(n,t) = S(n',t) + (-1)^{j*}/2 floor(n/b_{j*})
/// (1 - rho_{j*}(n + n' + 1)). Convergents and rho_j are cached up to n_max.
class OstrowskiSum {
 public:
  OstrowskiSum(Scalar t, CFExpansion cf, std::uint64_t n_max) : t_(std::move(t)), cf_(std::move(cf)) {
    if (t_.is_rational()) throw NotIrrational("Ostrowski recursion needs irrational t");
    if (cf_.lambda0 != floor(t_)) throw DomainError("expansion does not match t");
    // Extend until b_j > n_max.
    conv_ = convergents(cf_, 1);
    b_.push_back(0);
    b_.push_back(1);
    rho_.push_back(Scalar(1));
    rho_.push_back(abs(t_ - Scalar(cf_.lambda0)));
    while (b_.back() <= n_max) {
      const std::size_t k = conv_.size() - 1;
      if (!cf_.has_coefficient(k)) throw DomainError("expansion too short for n_max");
      const Integer& l = cf_.coefficient(k);
      Convergent next{conv_[k - 1].a + l * conv_[k].a, conv_[k - 1].b + l * conv_[k].b, k + 1};
      b_.push_back(next.b <= to_integer(std::numeric_limits<std::uint64_t>::max() / 4)
                       ? to_u64(next.b)
                       : std::numeric_limits<std::uint64_t>::max());
      Scalar signed_rho = t_ * Scalar(next.b) - Scalar(next.a);
      // Convergents alternate around t: sign(b_j t - a_j) = (-1)^(j+1).
      const int expected = (next.index % 2 == 1) ? 1 : -1;
      if (signed_rho.sign() != expected) throw DomainError("expansion does not match t");
      rho_.push_back(abs(signed_rho));
      conv_.push_back(std::move(next));
    }
    n_max_ = n_max;
  }

  std::uint64_t n_max() const { return n_max_; }

  SumResult operator()(std::uint64_t n) const {
    if (n > n_max_) throw DomainError("n beyond the cached convergents");
    std::vector<OstrowskiStep> steps;
    Scalar total;
    Fraction bound;
    bool ok = true;
    std::uint64_t m = n;
    bool first = true;
    while (m > 0) {
      // Largest j with b_j <= m; b_1 = 1 so j >= 1.
      auto it = std::upper_bound(b_.begin() + 1, b_.end(), m);
      const std::size_t j = static_cast<std::size_t>(it - b_.begin()) - 1;
      const std::uint64_t bj = b_[j];
      const std::uint64_t mult = m / bj;
      const std::uint64_t rest = m - mult * bj;
      Integer span = to_integer(m) + to_integer(rest) + 1;
      Scalar factor = Scalar(1) - rho_[j] * Scalar(span);
      Scalar inc = factor * Scalar(Fraction(Integer(j % 2 == 0 ? 1 : -1) * to_integer(mult), 2));
      const Integer& lambda = cf_.coefficient(j);
      const int fs = factor.sign();
      if (to_integer(mult) > lambda || fs == 0 || !(abs(factor) < Scalar(1))) ok = false;
      if (first) {
        Integer sum = 0;
        for (std::size_t k = 1; k <= j; ++k) sum += cf_.coefficient(k);
        bound = Fraction(sum, Integer(2));
        first = false;
      }
      total += inc;
      steps.push_back({j, m, rest, mult, lambda, rho_[j], std::move(factor), std::move(inc)});
      m = rest;
    }
    if (!(abs(total) <= Scalar(bound))) ok = false;
    SumTrace trace{std::move(steps), total, bound, ok};
    return {std::move(total), std::move(trace)};
  }

 private:
  Scalar t_;
  CFExpansion cf_;
  std::vector<Convergent> conv_;
  std::vector<std::uint64_t> b_;
  std::vector<Scalar> rho_;
  std::uint64_t n_max_ = 0;
};

inline SumResult ostrowski_S(std::uint64_t n, const Scalar& t, const CFExpansion& cf) {
  if (t.is_rational()) throw NotIrrational("Ostrowski recursion needs irrational t");
  return OstrowskiSum(t, cf, n)(n);
}

// ---------------------------------------------------------------------------
// Gauss-map recursion

/// S(n,t) for irrational 0 < t < 1 from t_j = {1/t_{j-1}}, n_j = floor(t_{j-1} n_{j-1}):
/// S = sum_j (-1)^j (n_j eta_tilde(t_j n_j) + {t_j n_j}/2).
inline SumResult bseq_S(std::uint64_t n, const Scalar& t) {
  if (t.sign() <= 0 || t > Scalar(1)) throw DomainError("bseq_S needs 0 < t <= 1");
  if (t.is_rational()) throw NotIrrational("bseq_S needs irrational t");
  std::vector<BseqStep> steps;
  Scalar total;
  Integer lambda_sum = 0;
  Scalar tj = t;
  std::uint64_t nj = n;
  std::size_t j = 0;
  while (nj > 0) {
    Scalar x = tj * Scalar(to_integer(nj));
    Integer fl = floor(x);
    Scalar term = Scalar(to_integer(nj)) * eta_tilde(x) + (x - Scalar(fl)) / Scalar(2);
    if (j % 2 == 1) term = -term;
    Scalar inv = tj.reciprocal();
    Integer lam = floor(inv);
    lambda_sum += lam;
    total += term;
    steps.push_back({j, nj, tj, lam, term});
    nj = to_u64(fl);
    tj = inv - Scalar(lam);
    ++j;
  }
  Fraction bound(lambda_sum, Integer(2));
  const bool ok = abs(total) <= Scalar(bound);
  SumTrace trace{std::move(steps), total, bound, ok};
  return {std::move(total), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Means and one-sided limits

inline Scalar S_by(std::uint64_t n, const Scalar& t, Method method) {
  switch (method) {
    case Method::brute:
      return brute_S(n, t);
    case Method::ostrowski:
      if (t.is_rational()) throw NotIrrational("Ostrowski recursion needs irrational t");
      return ostrowski_S(n, t, expand(t, 100000)).value;
    case Method::bseq:
      return bseq_S(n, t).value;
  }
  return brute_S(n, t);
}

/// B_n(t) = S(n,t)/n.
inline Scalar B(std::uint64_t n, const Scalar& t, Method method = Method::brute) {
  if (n == 0) throw DomainError("B_n needs n >= 1");
  return S_by(n, t, method) / Scalar(to_integer(n));
}

/// B_x(t) = (1/x) sum_{k <= floor(x)} beta(kt) for real x > 0.
inline Scalar B(const Scalar& x, const Scalar& t) {
  if (x.sign() <= 0) throw DomainError("B_x needs x > 0");
  return brute_S(to_u64(floor(x)), t) / x;
}

/// Left limit of u -> S(m, u) at u: beta jumps by -1 where k u is an integer.
inline Scalar S_left(std::uint64_t m, const Scalar& u) {
  Scalar s = brute_S(m, u);
  if (const auto* f = u.fraction()) s += Scalar(floor_div(to_integer(m), f->den()));
  return s;
}

/// B_x^-(a/b) = B_x(a/b) + floor(x/b)/x.
inline Scalar B_left(const Scalar& x, const Scalar& t) {
  if (x.sign() <= 0) throw DomainError("B_x needs x > 0");
  return S_left(to_u64(floor(x)), t) / x;
}

inline Scalar B_left(std::uint64_t n, const Fraction& a_over_b) {
  return B_left(Scalar(to_integer(n)), Scalar(a_over_b));
}

// ---------------------------------------------------------------------------
// Identities and bounds

struct IdentitySides {
  Scalar lhs;
  Scalar rhs;
  bool equal() const { return lhs == rhs; }
};

/// B_n(t) = eta(tn) - (floor(tn)/n) B^-_{floor(tn)}({1/t}) + {tn}/(2n), 0 < t <= 1.
inline IdentitySides thm21b_identity(std::uint64_t n, const Scalar& t) {
  if (n == 0) throw DomainError("n must be positive");
  if (t.sign() <= 0 || t > Scalar(1)) throw DomainError("identity needs 0 < t <= 1");
  const Scalar nn(to_integer(n));
  Scalar lhs = brute_S(n, t) / nn;
  Scalar tn = t * nn;
  Integer m = floor(tn);
  // floor(tn) B^-_{floor(tn)} is the left-limit sum itself, also for floor(tn) = 0.
  Scalar inner = frac(t.reciprocal());
  Scalar rhs = eta_tilde(tn) - S_left(to_u64(m), inner) / nn + (tn - Scalar(m)) / (Scalar(2) * nn);
  return {std::move(lhs), std::move(rhs)};
}

/// Both sides of the local expansion of B_n near a/b, whose right Farey
/// neighbour of order b has denominator b_star.
inline IdentitySides thm21a_identity(std::uint64_t n, const Fraction& a_over_b,
                                     std::uint64_t b_star, const Scalar& x) {
  const Integer& a = a_over_b.num();
  const Integer& b = a_over_b.den();
  const Integer bs = to_integer(b_star);
  if (b_star == 0 || bs > b) throw NotNeighbors("b* must lie in 1..b");
  Integer a_num = 1 + a * bs;
  if (!mpz_divisible_p(a_num.get_mpz_t(), b.get_mpz_t())) {
    throw NotNeighbors("no a* with a* b - a b* = 1");
  }
  if (n == 0 || b > to_integer(n)) throw DomainError("need 1 <= b <= n");
  const Scalar nn(to_integer(n));
  if (x.sign() <= 0 || x > nn / Scalar(bs)) throw DomainError("need 0 < x <= n / b*");

  const Scalar bb(b);
  const Scalar ab(a_over_b);
  const Scalar point = ab + x / (bb * nn);
  Scalar lhs = brute_S(n, point) / nn;

  const std::uint64_t k_max = to_u64(floor(x));
  Scalar inner = (nn / x - Scalar(bs)) / bb;
  Scalar tail;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    tail += beta(Scalar(Fraction(Integer(to_integer(n) - to_integer(k) * bs), b)));
  }
  Scalar rhs = brute_S(n, ab) / nn + Scalar(Fraction(Integer(1), Integer(2 * b))) +
               eta_tilde(x) / bb - S_left(k_max, inner) / nn + x / (Scalar(2) * bb * nn) +
               tail / nn;
  return {std::move(lhs), std::move(rhs)};
}

struct Lemma31Check {
  Scalar value;  // B_{x,0}(a/b)
  Scalar bound;  // b / x
  bool holds = false;
};

/// |B_{x,0}(a/b)| <= b/x.
inline Lemma31Check lemma31_bound(const Scalar& x, const Fraction& a_over_b) {
  if (x.sign() <= 0) throw DomainError("x must be positive");
  Scalar value = brute_S0(to_u64(floor(x)), Scalar(a_over_b)) / x;
  Scalar bound = Scalar(a_over_b.den()) / x;
  const bool holds = abs(value) <= bound;
  return {std::move(value), std::move(bound), holds};
}

/// sum_{m<=x} (1 + 2b beta(am/b)); throws BoundViolated if |sum| > b(b+1).
inline Integer tab_sum(std::uint64_t x, const Fraction& a_over_b) {
  const Integer& a = a_over_b.num();
  const Integer& b = a_over_b.den();
  Integer total = 0;
  for (std::uint64_t m = 1; m <= x; ++m) {
    Integer am = a * to_integer(m);
    total += 2 * am - 2 * b * floor_div(am, b) - b + 1;
  }
  if (Integer(abs(total)) > b * (b + 1)) {
    throw BoundViolated("|sum t_{a/b}(m)| exceeds b(b+1) at x = " + std::to_string(x));
  }
  return total;
}

namespace detail {

// C(y) = sum of 1/(jk) over coprime pairs j, k <= y, for y = 0..y_max.
inline std::vector<Fraction> coprime_reciprocal_sums(std::uint64_t y_max) {
  std::vector<Fraction> c(y_max + 1);
  if (y_max >= 1) c[1] = Fraction(1);
  for (std::uint64_t y = 2; y <= y_max; ++y) {
    mpq_class inner = 0;
    for (std::uint64_t k = 1; k < y; ++k) {
      if (std::gcd(k, y) == 1) inner += mpq_class(1, static_cast<unsigned long>(k));
    }
    c[y] = c[y - 1] + Fraction(mpq_class(inner * 2 / mpq_class(static_cast<unsigned long>(y))));
  }
  return c;
}

inline Fraction l2_from_classes(std::uint64_t x, const std::vector<Fraction>& c) {
  mpq_class total = 0;
  for (std::uint64_t d = 1; d <= x; ++d) total += c[x / d].mpq();
  Fraction value(mpq_class(total / (12 * mpq_class(static_cast<unsigned long>(x * x)))));
  if (value < Fraction(Integer(to_integer(x)), Integer(12 * to_integer(x) * to_integer(x)))) {
    throw BoundViolated("L2 norm below floor(x)/(12 x^2)");
  }
  return value;
}

}  // namespace detail

/// ||B_x||_2^2 = (1/(12x^2)) sum_{d<=x} sum_{coprime j,k <= x/d} 1/(jk).
inline Fraction l2_norm_sq(std::uint64_t x) {
  if (x == 0) throw DomainError("x must be positive");
  return detail::l2_from_classes(x, detail::coprime_reciprocal_sums(x));
}

/// l2_norm_sq(x) for x = 1..x_max (index 0 unused).
inline std::vector<Fraction> l2_norm_sq_table(std::uint64_t x_max) {
  const auto c = detail::coprime_reciprocal_sums(x_max);
  std::vector<Fraction> out(x_max + 1);
  for (std::uint64_t x = 1; x <= x_max; ++x) out[x] = detail::l2_from_classes(x, c);
  return out;
}

}  // namespace remsum
