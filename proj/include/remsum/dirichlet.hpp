#pragma once

// Dirichlet series F_beta(t,s) = sum beta0(kt) k^-s and F_q(t,s) = sum q_k0(t) k^-s,
// the Mellin form s int_1^X B_x0(t) x^-s dx, and the zeta factor, each with an
// explicit bound for the discarded tail.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <json.hpp>

#include "remsum/cfrac.hpp"
#include "remsum/farey.hpp"
#include "remsum/parallel.hpp"
#include "remsum/sums.hpp"

namespace remsum {

using ComplexVal = std::complex<long double>;
using Quad = boost::multiprecision::cpp_bin_float_quad;
using ComplexQuad = boost::multiprecision::cpp_complex_quad;

enum class Precision { standard, extended, automatic };

/// Tail bounds below this switch Precision::automatic to 113-bit arithmetic.
inline constexpr long double kExtendedBelow = 1e-10L;

struct SeriesEval {
  ComplexVal value;
  std::uint64_t truncation_K = 0;
  long double tail_bound = 0;
  // "absolute": Re s > 1 comparison bound; "apriori": strip bound from a proven
  // growth estimate for S0; "evidence": strip bound from the observed max |S0|.
  std::string mode;
  bool extended = false;
};

namespace detail {

template <class R>
struct ComplexOf {
  using type = std::complex<R>;
};
template <>
struct ComplexOf<Quad> {
  using type = ComplexQuad;
};
template <class R>
using complex_t = typename ComplexOf<R>::type;

// A 128-bit value as an unevaluated sum hi + lo of long doubles.
struct Split {
  long double hi = 0;
  long double lo = 0;
};

inline Split split(const BigFloat& x) {
  Split out{x.to_long_double(), 0};
  BigFloat rest(x.precision());
  mpfr_set_ld(rest.get(), out.hi, MPFR_RNDN);
  mpfr_sub(rest.get(), x.get(), rest.get(), MPFR_RNDN);
  out.lo = rest.to_long_double();
  return out;
}

inline Split split(const Scalar& x) { return split(to_float(x, 128)); }

template <class R>
R join(const Split& v) {
  if constexpr (std::is_same_v<R, long double>) {
    return v.hi;
  } else {
    return R(v.hi) + R(v.lo);
  }
}

template <class R>
complex_t<R> lift(const ComplexVal& s) {
  return complex_t<R>(R(s.real()), R(s.imag()));
}

template <class C>
ComplexVal lower(const C& z) {
  return ComplexVal(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
}

// n^-s
template <class R>
complex_t<R> inv_power(std::uint64_t n, const complex_t<R>& s) {
  using std::exp;
  using std::log;
  const R ln = log(R(n));
  return exp(-(s * ln));
}

inline void require_finite(const ComplexVal& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("non-finite value");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// zeta

namespace detail {

inline constexpr int kZetaCutoff = 50;
inline constexpr int kZetaTerms = 10;

// B_2k for k = 1..11 as numerator / denominator.
inline constexpr std::int64_t kBernoulli[11][2] = {
    {1, 6},         {-1, 30},      {1, 42},      {-1, 30},         {5, 66},      {-691, 2730},
    {7, 6},         {-3617, 510},  {43867, 798}, {-174611, 330},   {854513, 138}};

template <class R>
complex_t<R> zeta_em(const complex_t<R>& s) {
  using C = complex_t<R>;
  const std::uint64_t N = kZetaCutoff;
  C sum(R(0), R(0));
  for (std::uint64_t n = 1; n < N; ++n) sum += inv_power<R>(n, s);
  const C Ns = inv_power<R>(N, s);
  const C one(R(1), R(0));
  sum += Ns * R(N) / (s - one) + Ns / R(2);
  C rising = s;          // s (s+1) ... (s+2k-2)
  C pw = Ns / R(N);      // N^(-s-2k+1)
  R factorial = R(2);    // (2k)!
  for (int k = 1; k <= kZetaTerms; ++k) {
    const R b = R(kBernoulli[k - 1][0]) / R(kBernoulli[k - 1][1]);
    sum += rising * pw * (b / factorial);
    rising *= (s + R(2 * k - 1)) * (s + R(2 * k));
    pw /= R(N * N);
    factorial *= R((2 * k + 1) * (2 * k + 2));
  }
  return sum;
}

}  // namespace detail

/// Euler-Maclaurin remainder bound |s(s+1)...(s+2m+1) B_{2m+2} N^{-sigma-2m-1}| / ((2m+2)! (sigma+2m+1)).
inline long double zeta_error_bound(const ComplexVal& s) {
  const int m = detail::kZetaTerms;
  const long double sigma = s.real();
  long double v = std::abs(static_cast<long double>(detail::kBernoulli[m][0])) /
                  static_cast<long double>(detail::kBernoulli[m][1]);
  for (int i = 0; i <= 2 * m + 1; ++i) v *= std::abs(s + static_cast<long double>(i)) / (i + 1);
  v *= std::pow(static_cast<long double>(detail::kZetaCutoff), -sigma - 2 * m - 1);
  return v / (sigma + 2 * m + 1);
}

inline ComplexVal zeta(const ComplexVal& s, bool extended = false) {
  if (s == ComplexVal(1, 0)) throw PoleAtOne();
  if (!(s.real() > 0)) throw DomainError("zeta needs Re(s) > 0");
  ComplexVal v = extended ? detail::lower(detail::zeta_em<Quad>(detail::lift<Quad>(s)))
                          : detail::zeta_em<long double>(s);
  detail::require_finite(v);
  return v;
}

// ---------------------------------------------------------------------------
// Shared per-t data

/// beta0(kt) and S0(n,t) for k, n <= n_max, from exact values rounded to 128 bits.
class SawtoothSeries {
 public:
  SawtoothSeries(Scalar t, std::uint64_t n_max)
      : t_(std::move(t)), prefix_(t_, n_max), beta0_(n_max + 1), s0_(n_max + 1) {
    parallel_for(n_max, [&](std::size_t i) {
      const std::uint64_t k = i + 1;
      const Scalar s0 = prefix_.S0(k);
      s0_[k] = detail::split(s0);
      beta0_[k] = detail::split(s0 - prefix_.S0(k - 1));
    });
    max_abs_.assign(n_max + 1, 0);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      max_abs_[n] = std::max(max_abs_[n - 1], std::abs(s0_[n].hi));
    }
  }

  const Scalar& t() const { return t_; }
  std::uint64_t n_max() const { return prefix_.n_max(); }
  Scalar exact_S0(std::uint64_t n) const { return prefix_.S0(n); }

  template <class R = long double>
  R beta0(std::uint64_t k) const {
    return detail::join<R>(beta0_.at(k));
  }
  template <class R = long double>
  R S0(std::uint64_t n) const {
    return detail::join<R>(s0_.at(n));
  }
  /// max_{n <= upto} |S0(n,t)|.
  long double max_abs_S0(std::uint64_t upto) const { return max_abs_.at(upto); }

 private:
  Scalar t_;
  SawtoothPrefix prefix_;
  std::vector<detail::Split> beta0_;
  std::vector<detail::Split> s0_;
  std::vector<long double> max_abs_;
};

struct SeriesOptions {
  Precision precision = Precision::automatic;
  // Expansion of t; gives the growth bound |S0(n,t)| <= 2 max(lambda_j) log n in the strip.
  std::optional<CFExpansion> cf;
};

namespace detail {

inline std::optional<Integer> max_partial_quotient(const CFExpansion& cf) {
  if (cf.period.empty()) return std::nullopt;
  Integer m = *std::max_element(cf.period.begin(), cf.period.end());
  for (const auto& h : cf.head) m = std::max(m, h);
  return m;
}

// Proven bound on |S0(x,t)| valid for all x >= x0, of the form c (log x) or c.
struct GrowthBound {
  long double c = 0;
  bool logarithmic = false;
};

inline std::optional<GrowthBound> growth_bound(const Scalar& t, const SeriesOptions& opt) {
  if (const auto* f = t.fraction()) {
    // |S0(x, a/b)| <= b for every x
    return GrowthBound{to_long_double(Scalar(Fraction(f->den()))), false};
  }
  if (opt.cf) {
    if (!(value(*opt.cf) == t)) throw DomainError("expansion does not match t");
    if (auto m = max_partial_quotient(*opt.cf)) {
      return GrowthBound{2 * to_long_double(Scalar(*m)), true};
    }
  }
  return std::nullopt;
}

struct Tail {
  long double bound;
  std::string mode;
};

// Bound for sum_{k>K} beta0(kt) k^-s and a flag for the Mellin variant
// s int_X^inf S0(x) x^(-s-1) dx.
inline Tail series_tail(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t K,
                        const SeriesOptions& opt, bool mellin) {
  const long double sigma = s.real();
  const long double as = std::abs(s);
  const long double k = static_cast<long double>(std::max<std::uint64_t>(K, 1));
  if (!(sigma > 0)) throw DomainError("need Re(s) > 0");
  if (sigma > 1) {
    // |beta0| <= 1/2 and |S0(x)| <= x/2
    if (mellin) return {as * std::pow(k, 1 - sigma) / (2 * (sigma - 1)), "absolute"};
    // k^-sigma <= int_{k-1/2}^{k+1/2} x^-sigma dx by convexity
    return {std::pow(k + 0.5L, 1 - sigma) / (2 * (sigma - 1)), "absolute"};
  }
  const long double ks = std::pow(k, -sigma);
  if (auto g = growth_bound(data.t(), opt); g && (!g->logarithmic || K >= 3)) {
    if (!g->logarithmic) {
      return {mellin ? as * g->c * ks / sigma : g->c * (sigma + as) * ks / sigma, "apriori"};
    }
    // |S0(x)| <= c log x, int_K^inf log x x^(-sigma-1) dx = K^-sigma (sigma log K + 1) / sigma^2
    const long double lk = std::log(k);
    const long double integral = ks * (sigma * lk + 1) / (sigma * sigma);
    return {mellin ? as * g->c * integral : g->c * (lk * ks + as * integral), "apriori"};
  }
  if (K > data.n_max()) throw DomainError("S0 table shorter than K");
  const long double M = data.max_abs_S0(K);
  return {mellin ? as * M * ks / sigma : M * (sigma + as) * ks / sigma, "evidence"};
}

inline bool use_extended(Precision p, long double tail) {
  return p == Precision::extended || (p == Precision::automatic && tail < kExtendedBelow);
}

template <class R>
ComplexVal partial_sum(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t K) {
  const auto z = lift<R>(s);
  complex_t<R> acc(R(0), R(0));
  for (std::uint64_t k = 1; k <= K; ++k) {
    const R b = data.beta0<R>(k);
    if (b != 0) acc += inv_power<R>(k, z) * b;
  }
  return lower(acc);
}

template <class R>
ComplexVal mellin_sum(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t X) {
  const auto z = lift<R>(s);
  complex_t<R> acc(R(0), R(0));
  if (X < 2) return lower(acc);
  complex_t<R> cur = inv_power<R>(1, z);
  for (std::uint64_t n = 1; n < X; ++n) {
    const complex_t<R> next = inv_power<R>(n + 1, z);
    const R v = data.S0<R>(n);
    if (v != 0) acc += (cur - next) * v;
    cur = next;
  }
  return lower(acc);
}

}  // namespace detail

/// sum_{k <= K} beta0(kt) k^-s.
inline SeriesEval f_beta_partial(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t K,
                                 const SeriesOptions& opt = {}) {
  if (K > data.n_max()) throw DomainError("K beyond the series table");
  auto tail = detail::series_tail(data, s, K, opt, false);
  const bool ext = detail::use_extended(opt.precision, tail.bound);
  SeriesEval out{ext ? detail::partial_sum<Quad>(data, s, K) : detail::partial_sum<long double>(data, s, K),
                 K, tail.bound, tail.mode, ext};
  detail::require_finite(out.value);
  return out;
}

inline SeriesEval f_beta_partial(const Scalar& t, const ComplexVal& s, std::uint64_t K,
                                 const SeriesOptions& opt = {}) {
  return f_beta_partial(SawtoothSeries(t, K), s, K, opt);
}

/// s int_1^X B_x0(t) x^-s dx = sum_{n < X} S0(n,t) (n^-s - (n+1)^-s).
inline SeriesEval f_beta_mellin(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t X,
                                const SeriesOptions& opt = {}) {
  if (X < 1) throw DomainError("need X >= 1");
  if (X > data.n_max() + 1) throw DomainError("X beyond the series table");
  auto tail = detail::series_tail(data, s, X, opt, true);
  const bool ext = detail::use_extended(opt.precision, tail.bound);
  SeriesEval out{ext ? detail::mellin_sum<Quad>(data, s, X) : detail::mellin_sum<long double>(data, s, X),
                 X, tail.bound, tail.mode, ext};
  detail::require_finite(out.value);
  return out;
}

inline SeriesEval f_beta_mellin(const Scalar& t, const ComplexVal& s, std::uint64_t X,
                                const SeriesOptions& opt = {}) {
  return f_beta_mellin(SawtoothSeries(t, X > 0 ? X - 1 : 0), s, X, opt);
}

/// q_k0(t) for k <= K, rounded to 128 bits from the exact values.
inline std::vector<detail::Split> q0_table(const Scalar& t, std::uint64_t K, const ArithTables& tables) {
  if (K > tables.N) throw DomainError("K beyond the arithmetic tables");
  std::vector<detail::Split> out(K + 1);
  parallel_for(K, [&](std::size_t i) { out[i + 1] = detail::split(q_k(i + 1, t, tables, Saw::beta0)); });
  return out;
}

/// sum_{k <= K} q_k0(t) k^-s, using |q_k0| <= d(k)/2 and sum_{k <= x} d(k) <= x (1 + log x).
inline SeriesEval f_q_partial(const Scalar& t, const ComplexVal& s, std::uint64_t K,
                              const ArithTables& tables, const SeriesOptions& opt = {}) {
  if (K < 1) throw DomainError("need K >= 1");
  const long double sigma = s.real();
  if (!(sigma > 1)) throw DomainError("F_q tail bound needs Re(s) > 1");
  const auto q = q0_table(t, K, tables);
  const long double k = static_cast<long double>(K);
  const long double tail = sigma / 2 * std::pow(k, 1 - sigma) *
                           ((1 + std::log(k)) / (sigma - 1) + 1 / ((sigma - 1) * (sigma - 1)));
  const bool ext = detail::use_extended(opt.precision, tail);
  auto run = [&]<class R>() {
    const auto z = detail::lift<R>(s);
    detail::complex_t<R> acc(R(0), R(0));
    for (std::uint64_t j = 1; j <= K; ++j) {
      const R v = detail::join<R>(q[j]);
      if (v != 0) acc += detail::inv_power<R>(j, z) * v;
    }
    return detail::lower(acc);
  };
  SeriesEval out{ext ? run.template operator()<Quad>() : run.template operator()<long double>(), K, tail,
                 "absolute", ext};
  detail::require_finite(out.value);
  return out;
}

struct IdentityCheck {
  long double residual = 0;
  long double allowed = 0;
  bool holds() const { return residual <= allowed; }
};

/// |F_beta,K - Mellin_K| against the sum of both tails.
inline IdentityCheck mellin_identity(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t K,
                                     const SeriesOptions& opt = {}) {
  auto a = f_beta_partial(data, s, K, opt);
  auto b = f_beta_mellin(data, s, K, opt);
  return {std::abs(a.value - b.value), a.tail_bound + b.tail_bound};
}

/// |zeta(s) F_q,K + F_beta,K| against |zeta| tail_q + tail_beta + |F_q,K| err(zeta).
inline IdentityCheck zeta_identity(const SawtoothSeries& data, const ComplexVal& s, std::uint64_t K,
                                   const ArithTables& tables, const SeriesOptions& opt = {}) {
  auto fb = f_beta_partial(data, s, K, opt);
  auto fq = f_q_partial(data.t(), s, K, tables, opt);
  const ComplexVal z = zeta(s, fb.extended || fq.extended);
  return {std::abs(z * fq.value + fb.value),
          std::abs(z) * fq.tail_bound + fb.tail_bound + std::abs(fq.value) * zeta_error_bound(s)};
}

// ---------------------------------------------------------------------------
// Continuation strip

struct ContinuationRow {
  ComplexVal s;
  std::vector<std::uint64_t> levels;
  std::vector<ComplexVal> values;   // Abel-summed series through each level
  std::vector<long double> cauchy;  // |values[i+1] - values[i]|
  // max over levels[i] <= n <= levels[i+1] of |A(n) - values[i]|
  std::vector<long double> oscillation;
  long double tail_bound = 0;       // for the last level
  std::string mode;
  bool decreasing = false;
};

struct ContinuationReport {
  std::string t;
  std::vector<ContinuationRow> rows;
  bool all_decreasing() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.decreasing; });
  }
};

/// A(K) = sum_{n < K} S0(n,t) (n^-s - (n+1)^-s) at increasing K; S0 at each level is
/// re-derived by the Ostrowski recursion and must match the table. `decreasing`
/// refers to the window oscillations, which are the Cauchy differences sup |A(n) - A(m)|
/// over each window; the endpoint differences alone oscillate.
inline ContinuationReport continuation_evidence(const Scalar& t, const CFExpansion& cf,
                                                const std::vector<ComplexVal>& s_grid,
                                                std::vector<std::uint64_t> levels) {
  if (t.is_rational()) throw NotIrrational();
  if (levels.empty()) throw DomainError("no levels");
  std::sort(levels.begin(), levels.end());
  if (levels.front() < 2) throw DomainError("levels must be >= 2");
  for (const auto& s : s_grid) {
    if (!(s.real() > 0)) throw DomainError("need Re(s) > 0");
  }
  const SawtoothSeries data(t, levels.back());
  OstrowskiSum ost(t, cf, levels.back());
  for (std::uint64_t L : levels) {
    if (!(ost(L - 1).value == data.exact_S0(L - 1))) {
      throw BoundViolated("Ostrowski and prefix S0 disagree at n = " + std::to_string(L - 1));
    }
  }
  SeriesOptions opt;
  opt.precision = Precision::standard;
  opt.cf = cf;
  ContinuationReport report{to_string(t), std::vector<ContinuationRow>(s_grid.size())};
  parallel_for(s_grid.size(), [&](std::size_t i) {
    const ComplexVal s = s_grid[i];
    ContinuationRow row;
    row.s = s;
    row.levels = levels;
    ComplexVal acc = 0;
    ComplexVal cur = 1;
    std::size_t next_level = 0;
    row.oscillation.assign(levels.size() - 1, 0);
    for (std::uint64_t n = 1; next_level < levels.size(); ++n) {
      if (next_level > 0) {
        auto& o = row.oscillation[next_level - 1];
        o = std::max(o, std::abs(acc - row.values[next_level - 1]));
      }
      while (next_level < levels.size() && levels[next_level] == n) {
        row.values.push_back(acc);
        ++next_level;
      }
      if (next_level == levels.size()) break;
      const ComplexVal nxt = detail::inv_power<long double>(n + 1, s);
      acc += (cur - nxt) * data.S0(n);
      cur = nxt;
    }
    for (std::size_t j = 0; j + 1 < row.values.size(); ++j) {
      row.cauchy.push_back(std::abs(row.values[j + 1] - row.values[j]));
    }
    row.decreasing = true;
    for (std::size_t j = 0; j + 1 < row.oscillation.size(); ++j) {
      if (!(row.oscillation[j + 1] < row.oscillation[j])) row.decreasing = false;
    }
    auto tail = detail::series_tail(data, s, levels.back(), opt, true);
    row.tail_bound = tail.bound;
    row.mode = tail.mode;
    report.rows[i] = std::move(row);
  });
  return report;
}

/// Levels K/25, K/5, K.
inline ContinuationReport continuation_evidence(const Scalar& t, const CFExpansion& cf,
                                                const std::vector<ComplexVal>& s_grid, std::uint64_t K) {
  return continuation_evidence(t, cf, s_grid, std::vector<std::uint64_t>{K / 25, K / 5, K});
}

// ---------------------------------------------------------------------------
// Reports

inline std::string to_string(const ComplexVal& s) {
  std::string out = fmt12(s.real());
  if (s.imag() != 0) {
    const std::string im = fmt12(s.imag());
    out += (im[0] == '-' ? "" : "+") + im + "i";
  }
  return out;
}

inline nlohmann::ordered_json to_json(const SeriesEval& e, const std::string& t, const ComplexVal& s) {
  return {{"t", t},
          {"s", to_string(s)},
          {"K", e.truncation_K},
          {"value_re", static_cast<double>(e.value.real())},
          {"value_im", static_cast<double>(e.value.imag())},
          {"tail_bound", static_cast<double>(e.tail_bound)},
          {"mode", e.mode}};
}

inline nlohmann::ordered_json to_json(const ContinuationReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const auto& v : row.values) {
      values.push_back({static_cast<double>(v.real()), static_cast<double>(v.imag())});
    }
    nlohmann::ordered_json cauchy = nlohmann::ordered_json::array();
    for (auto c : row.cauchy) cauchy.push_back(static_cast<double>(c));
    nlohmann::ordered_json oscillation = nlohmann::ordered_json::array();
    for (auto c : row.oscillation) oscillation.push_back(static_cast<double>(c));
    rows.push_back({{"s", to_string(row.s)},
                    {"levels", row.levels},
                    {"values", values},
                    {"cauchy", cauchy},
                    {"oscillation", oscillation},
                    {"tail_bound", static_cast<double>(row.tail_bound)},
                    {"mode", row.mode},
                    {"decreasing", row.decreasing}});
  }
  return {{"t", r.t}, {"rows", rows}, {"all_decreasing", r.all_decreasing()}};
}

}  // namespace remsum
