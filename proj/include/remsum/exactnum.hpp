#pragma once

// Exact scalars: reduced rationals, elements (p + q*sqrt(d))/r of a real
// quadratic field, and the tagged union Scalar that the rest of the library
// computes with. Nothing in here rounds, except the explicit to_float family.

#include <gmpxx.h>
#include <mpfr.h>

#include <cctype>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

#include "remsum/errors.hpp"

namespace remsum {

using Integer = mpz_class;

inline Integer to_integer(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

inline Integer isqrt(const Integer& v) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

/// Floor division for a positive divisor.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool is_perfect_square(const Integer& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline std::uint64_t to_u64(const Integer& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw DomainError("integer does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

// ---------------------------------------------------------------------------
// Fraction

class Fraction {
 public:
  Fraction() = default;

  template <std::integral T>
  Fraction(T v) : value_(widen(v)) {}  // NOLINT

  Fraction(const Integer& v) : value_(v) {}  // NOLINT

  Fraction(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  explicit Fraction(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  const Integer& num() const { return value_.get_num(); }
  const Integer& den() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool is_integer() const { return den() == 1; }
  int sign() const { return sgn(value_); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(mpq_class(a.value_ + b.value_), Raw{});
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return Fraction(mpq_class(a.value_ - b.value_), Raw{});
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(mpq_class(a.value_ * b.value_), Raw{});
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.sign() == 0) throw DomainError("division by zero");
    return Fraction(mpq_class(a.value_ / b.value_), Raw{});
  }
  Fraction operator-() const { return Fraction(mpq_class(-value_), Raw{}); }
  Fraction& operator+=(const Fraction& o) { value_ += o.value_; return *this; }
  Fraction& operator-=(const Fraction& o) { value_ -= o.value_; return *this; }
  Fraction& operator*=(const Fraction& o) { value_ *= o.value_; return *this; }
  Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Raw {};

  template <std::integral T>
  static Integer widen(T v) {
    if constexpr (std::is_signed_v<T>) {
      return Integer(static_cast<long>(v));
    } else {
      return Integer(static_cast<unsigned long>(v));
    }
  }

  // gmpxx arithmetic results are already canonical.
  Fraction(mpq_class v, Raw) : value_(std::move(v)) {}

  mpq_class value_;
};

inline Integer floor(const Fraction& x) { return floor_div(x.num(), x.den()); }
inline Fraction abs(const Fraction& x) { return x.sign() < 0 ? -x : x; }

// ---------------------------------------------------------------------------
// QuadExt

namespace detail {

// Returns (f, core) with d = f^2 * core. Square factors are removed by trial
// division below kSquareFreeTrialLimit and by a final perfect-square test on
// the cofactor, which makes core square-free whenever d < 10^10.
inline constexpr unsigned long kSquareFreeTrialLimit = 100000;

inline std::pair<Integer, Integer> split_square(const Integer& d) {
  Integer rest = d;
  Integer f = 1;
  Integer core = 1;
  for (unsigned long p = 2; p <= kSquareFreeTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > rest) break;
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) f *= p;
    if (e % 2 == 1) core *= p;
  }
  if (rest > 1) {
    if (is_perfect_square(rest)) {
      f *= isqrt(rest);
    } else {
      core *= rest;
    }
  }
  return {f, core};
}

}  // namespace detail

/// (p + q*sqrt(d)) / r with r > 0 and gcd(p, q, r) = 1.
///
/// Values produced by arithmetic may have q == 0; Scalar demotes those to
/// Fraction. The field parameter d never changes under arithmetic.
class QuadExt {
 public:
  /// Validates d (d > 1, not a perfect square) and pulls square factors of d
  /// into q.
  QuadExt(Integer p, Integer q, const Integer& d, Integer r) {
    if (r == 0) throw DomainError("zero denominator");
    if (d <= 1 || is_perfect_square(d)) {
      throw DomainError("radicand must be a positive non-square");
    }
    auto [f, core] = detail::split_square(d);
    p_ = std::move(p);
    q_ = q * f;
    d_ = std::move(core);
    r_ = std::move(r);
    normalize();
  }

  /// The rational u embedded in the field with radicand d (d already reduced).
  static QuadExt embed(const Fraction& u, const Integer& d) {
    return QuadExt(Unchecked{}, u.num(), Integer(0), d, u.den());
  }

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& d() const { return d_; }
  const Integer& r() const { return r_; }

  bool is_rational() const { return q_ == 0; }
  Fraction rational_part() const { return Fraction(p_, r_); }

  /// Sign decided exactly: only p^2 against q^2 d is ever compared.
  int sign() const {
    const int sp = sgn(p_);
    const int sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    const int c = cmp(Integer(p_ * p_), Integer(q_ * q_ * d_));
    // p and q*sqrt(d) have opposite signs; the larger magnitude wins.
    return c > 0 ? sp : sq;
  }

  Integer floor() const {
    if (q_ == 0) return floor_div(p_, r_);
    // floor(q sqrt d) from the integer square root of q^2 d (never a square).
    Integer s = isqrt(Integer(q_ * q_ * d_));
    if (q_ < 0) s = -s - 1;
    return floor_div(Integer(p_ + s), r_);
  }

  QuadExt conjugate() const { return QuadExt(Unchecked{}, p_, -q_, d_, r_); }

  QuadExt reciprocal() const {
    // r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
    Integer norm = p_ * p_ - q_ * q_ * d_;
    if (norm == 0) throw DomainError("division by zero");
    return QuadExt(Unchecked{}, r_ * p_, -r_ * q_, d_, norm);
  }

  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    check_field(a, b);
    if (a.r_ == b.r_) return QuadExt(Unchecked{}, a.p_ + b.p_, a.q_ + b.q_, a.d_, a.r_);
    return QuadExt(Unchecked{}, a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_,
                   a.d_, a.r_ * b.r_);
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return a + (-b); }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    check_field(a, b);
    return QuadExt(Unchecked{}, a.p_ * b.p_ + a.q_ * b.q_ * a.d_, a.p_ * b.q_ + a.q_ * b.p_,
                   a.d_, a.r_ * b.r_);
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.reciprocal(); }
  QuadExt operator-() const { return QuadExt(Unchecked{}, -p_, -q_, d_, r_); }

  QuadExt scaled(const Integer& k) const { return QuadExt(Unchecked{}, p_ * k, q_ * k, d_, r_); }
  QuadExt plus(const Fraction& u) const {
    return QuadExt(Unchecked{}, p_ * u.den() + u.num() * r_, q_ * u.den(), d_, r_ * u.den());
  }

  friend bool operator==(const QuadExt& a, const QuadExt& b) {
    return a.d_ == b.d_ && a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_;
  }

 private:
  struct Unchecked {};

  QuadExt(Unchecked, Integer p, Integer q, Integer d, Integer r)
      : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
    normalize();
  }

  static void check_field(const QuadExt& a, const QuadExt& b) {
    if (a.d_ != b.d_) throw IncompatibleField();
  }

  void normalize() {
    if (r_ < 0) {
      p_ = -p_;
      q_ = -q_;
      r_ = -r_;
    }
    if (r_ == 1) return;
    Integer g = gcd(gcd(p_, q_), r_);
    if (g != 1) {
      mpz_divexact(p_.get_mpz_t(), p_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(q_.get_mpz_t(), q_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(r_.get_mpz_t(), r_.get_mpz_t(), g.get_mpz_t());
    }
  }

  Integer p_;
  Integer q_;
  Integer d_;
  Integer r_;
};

// ---------------------------------------------------------------------------
// Scalar

/// Exact real number: a Fraction, or an irrational element of Q(sqrt d).
///
/// A QuadExt with q == 0 is always stored as a Fraction, so is_rational()
/// is a value property. Operations mixing two fields throw IncompatibleField.
class Scalar {
 public:
  Scalar() : value_(Fraction{}) {}
  template <std::integral T>
  Scalar(T v) : value_(Fraction(v)) {}  // NOLINT
  Scalar(const Integer& v) : value_(Fraction(v)) {}  // NOLINT
  Scalar(Fraction v) : value_(std::move(v)) {}  // NOLINT
  Scalar(QuadExt v) {  // NOLINT
    if (v.is_rational()) {
      value_ = v.rational_part();
    } else {
      value_ = std::move(v);
    }
  }

  /// (p + q sqrt d)/r for any d >= 0; perfect squares collapse to Fractions.
  static Scalar quadratic(const Integer& p, const Integer& q, const Integer& d,
                          const Integer& r) {
    if (r == 0) throw DomainError("zero denominator");
    if (d < 0) throw DomainError("negative radicand");
    if (q == 0 || is_perfect_square(d)) {
      return Scalar(Fraction(Integer(p + q * isqrt(d)), r));
    }
    return Scalar(QuadExt(p, q, d, r));
  }

  bool is_rational() const { return std::holds_alternative<Fraction>(value_); }
  const Fraction* fraction() const { return std::get_if<Fraction>(&value_); }
  const QuadExt* quad() const { return std::get_if<QuadExt>(&value_); }
  const Fraction& as_fraction() const { return std::get<Fraction>(value_); }
  const QuadExt& as_quad() const { return std::get<QuadExt>(value_); }

  /// Radicand of the field, or nothing for rationals.
  std::optional<Integer> field() const {
    if (const auto* q = quad()) return q->d();
    return std::nullopt;
  }

  int sign() const {
    return std::visit([](const auto& v) { return v.sign(); }, value_);
  }

  bool is_integer() const { return is_rational() && as_fraction().is_integer(); }

  Scalar reciprocal() const {
    if (const auto* f = fraction()) return Fraction(1) / *f;
    return Scalar(as_quad().reciprocal());
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (const auto* fb = b.fraction(); fb && fb->is_integer() && a.quad()) {
      return Scalar(a.as_quad().scaled(fb->num()));
    }
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.sign() == 0) throw DomainError("division by zero");
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
  }
  Scalar operator-() const {
    return std::visit([](const auto& v) { return Scalar(-v); }, value_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Structural equality; exact because both alternatives are canonical.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) return false;
    if (a.is_rational()) return a.as_fraction() == b.as_fraction();
    return a.as_quad() == b.as_quad();
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return a.as_fraction() <=> b.as_fraction();
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  template <class Op>
  static Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    const auto* fa = a.fraction();
    const auto* fb = b.fraction();
    if (fa && fb) return Scalar(op(*fa, *fb));
    if (fa) return Scalar(op(QuadExt::embed(*fa, b.as_quad().d()), b.as_quad()));
    if (fb) return Scalar(op(a.as_quad(), QuadExt::embed(*fb, a.as_quad().d())));
    return Scalar(op(a.as_quad(), b.as_quad()));
  }

  std::variant<Fraction, QuadExt> value_;
};

inline Integer floor(const Scalar& x) {
  if (const auto* f = x.fraction()) return floor(*f);
  return x.as_quad().floor();
}

inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

inline Scalar frac(const Scalar& x) { return x - Scalar(floor(x)); }

/// Centred sawtooth t - floor(t) - 1/2, with values in [-1/2, 1/2).
inline Scalar beta(const Scalar& t) { return frac(t) - Scalar(Fraction(1, 2)); }

/// Sawtooth with the midpoint value 0 at its jumps.
inline Scalar beta0(const Scalar& t) {
  if (t.is_integer()) return Scalar(0);
  return beta(t);
}

// ---------------------------------------------------------------------------
// Floating conversion (output and non-oracle checks only)

/// Owning MPFR value.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

  std::string to_string(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

/// Value of x rounded to nearest at the given precision.
///
/// Cancellation in p + q sqrt(d) is avoided by dividing the exact norm
/// p^2 - q^2 d by the conjugate, so the result is within one ulp.
inline BigFloat to_float(const Scalar& x, mpfr_prec_t bits) {
  if (bits < 53) throw DomainError("precision below 53 bits");
  BigFloat out(bits);
  if (const auto* f = x.fraction()) {
    mpfr_set_q(out.get(), f->mpq().get_mpq_t(), MPFR_RNDN);
    return out;
  }
  const QuadExt& v = x.as_quad();
  const mpfr_prec_t work = bits + 64;
  BigFloat root(work);
  BigFloat acc(work);
  mpfr_set_z(root.get(), v.d().get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  const bool cancels = sgn(v.p()) != 0 && sgn(v.p()) != sgn(v.q());
  if (!cancels) {
    mpfr_mul_z(acc.get(), root.get(), v.q().get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(acc.get(), acc.get(), v.p().get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(acc.get(), acc.get(), v.r().get_mpz_t(), MPFR_RNDN);
  } else {
    // (p + q s) = (p^2 - q^2 d) / (p - q s), and p, -q s share a sign.
    Integer norm = v.p() * v.p() - v.q() * v.q() * v.d();
    Integer mq = -v.q();
    mpfr_mul_z(acc.get(), root.get(), mq.get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(acc.get(), acc.get(), v.p().get_mpz_t(), MPFR_RNDN);
    mpfr_mul_z(acc.get(), acc.get(), v.r().get_mpz_t(), MPFR_RNDN);
    BigFloat n(work);
    mpfr_set_z(n.get(), norm.get_mpz_t(), MPFR_RNDN);
    mpfr_div(acc.get(), n.get(), acc.get(), MPFR_RNDN);
  }
  mpfr_set(out.get(), acc.get(), MPFR_RNDN);
  return out;
}

inline double to_double(const Scalar& x) { return to_float(x, 53).to_double(); }
inline long double to_long_double(const Scalar& x) { return to_float(x, 64).to_long_double(); }

// ---------------------------------------------------------------------------
// Text encoding: "p/q" (or "p" for integers) and "(p+q*sqrt(d))/r".

inline std::string to_string(const Fraction& x) {
  if (x.is_integer()) return x.num().get_str();
  return x.num().get_str() + "/" + x.den().get_str();
}

inline std::string to_string(const QuadExt& x) {
  std::string out = "(" + x.p().get_str();
  out += x.q() < 0 ? "-" : "+";
  out += Integer(abs(x.q())).get_str() + "*sqrt(" + x.d().get_str() + "))/" + x.r().get_str();
  return out;
}

inline std::string to_string(const Scalar& x) {
  if (const auto* f = x.fraction()) return to_string(*f);
  return to_string(x.as_quad());
}

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  bool accept(std::string_view token) {
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  Integer integer(bool allow_sign = true) {
    std::size_t start = pos_;
    if (allow_sign && (peek() == '-' || peek() == '+')) ++pos_;
    std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    std::string text(s_.substr(start, pos_ - start));
    if (text[0] == '+') text.erase(0, 1);
    return Integer(text, 10);
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) +
                     "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Fraction parse_fraction(std::string_view text) {
  detail::Cursor c(text);
  Integer num = c.integer();
  Integer den = 1;
  if (c.accept("/")) den = c.integer(false);
  if (!c.done()) c.fail("trailing characters");
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Fraction(num, den);
}

/// Accepts "(p+q*sqrt(d))/r", "(p-q*sqrt(d))/r", and the form without "/r".
inline Scalar parse_quadratic(std::string_view text) {
  detail::Cursor c(text);
  c.expect("(");
  Integer p = c.integer();
  int sign = 1;
  if (c.accept("+")) {
    if (c.accept("-")) sign = -1;
  } else if (c.accept("-")) {
    sign = -1;
  } else {
    c.fail("expected '+' or '-'");
  }
  Integer q = c.integer(false) * sign;
  c.expect("*sqrt(");
  Integer d = c.integer(false);
  c.expect("))");
  Integer r = 1;
  if (c.accept("/")) r = c.integer(false);
  if (!c.done()) c.fail("trailing characters");
  if (r == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Scalar::quadratic(p, q, d, r);
}

inline Scalar parse_scalar(std::string_view text) {
  if (text.find("sqrt") != std::string_view::npos) return parse_quadratic(text);
  return Scalar(parse_fraction(text));
}

}  // namespace remsum
