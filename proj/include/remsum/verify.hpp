#pragma once

// Invariant checks behind `remsum verify` and the acceptance runner. Each
// check returns pass/fail with a short deterministic detail string.

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "remsum/cfrac.hpp"
#include "remsum/dirichlet.hpp"
#include "remsum/farey.hpp"
#include "remsum/limits.hpp"
#include "remsum/measure.hpp"
#include "remsum/parallel.hpp"
#include "remsum/sums.hpp"

namespace remsum {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string str(long double v) { return fmt12(v); }

inline long double ln(std::uint64_t n) { return std::log(static_cast<long double>(n)); }

// Quadratic irrational in (0, 1): (p + q sqrt d)/r with p = u - floor(q sqrt d), 0 <= u < r.
inline Scalar random_unit_quadratic(std::mt19937_64& gen) {
  static const long radicands[] = {2, 3, 5, 6, 7, 10, 11, 13, 19};
  const long d = radicands[uniform_below(gen, 9)];
  const long q = 1 + static_cast<long>(uniform_below(gen, 5));
  const long r = 1 + static_cast<long>(uniform_below(gen, 20));
  const long u = static_cast<long>(uniform_below(gen, static_cast<std::uint64_t>(r)));
  const Integer fl = isqrt(Integer(q * q * d));
  return Scalar::quadratic(Integer(u - fl), Integer(q), Integer(d), Integer(r));
}

inline Fraction random_fraction(std::mt19937_64& gen, std::uint64_t den_lo, std::uint64_t den_hi,
                                std::uint64_t int_span) {
  const std::uint64_t b = den_lo + uniform_below(gen, den_hi - den_lo + 1);
  const std::uint64_t a = uniform_below(gen, b * int_span + 1);
  return Fraction(to_integer(a), to_integer(b));
}

}  // namespace detail

/// The irrational test points of the recursion checks.
inline std::vector<Scalar> recursion_corpus() {
  return {parse_scalar("(-1+1*sqrt(5))/2"), parse_scalar("(-1+1*sqrt(2))/1"),
          parse_scalar("(-1+1*sqrt(3))/1")};
}

/// ostrowski_S = bseq_S = brute_S exactly for n <= n_max.
inline Check check_oracle_equivalence(const std::vector<Scalar>& ts, std::uint64_t n_max) {
  std::uint64_t compared = 0;
  for (const auto& t : ts) {
    const OstrowskiSum ost(t, expand(t, 1000), n_max);
    const SawtoothPrefix pre(t, n_max);
    auto bad = parallel_map<char>(n_max + 1, [&](std::size_t n) {
      const Scalar ref = pre.S(n);
      return static_cast<char>(!(ost(n).value == ref) || !(bseq_S(n, t).value == ref));
    });
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      if (bad[n]) return {"oracle equivalence", false, "mismatch at t = " + to_string(t) + ", n = " + std::to_string(n)};
    }
    compared += n_max + 1;
  }
  return {"oracle equivalence", true, std::to_string(compared) + " exact comparisons"};
}

/// 0 < |1 - rho (n + n' + 1)| < 1 and floor(n / b_j*) <= lambda_j* on every Ostrowski step.
inline Check check_side_conditions(const std::vector<Scalar>& ts, std::uint64_t n_max) {
  std::uint64_t steps = 0;
  for (const auto& t : ts) {
    const OstrowskiSum ost(t, expand(t, 1000), n_max);
    auto counts = parallel_map<std::int64_t>(n_max + 1, [&](std::size_t n) -> std::int64_t {
      const auto r = ost(n);
      const auto& st = std::get<std::vector<OstrowskiStep>>(r.trace.steps);
      for (const auto& s : st) {
        const Scalar af = abs(s.factor);
        if (af.sign() == 0 || !(af < Scalar(1)) || to_integer(s.multiplier) > s.lambda) return -1;
      }
      return static_cast<std::int64_t>(st.size());
    });
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      if (counts[n] < 0) return {"side conditions", false, "violated at t = " + to_string(t) + ", n = " + std::to_string(n)};
      steps += static_cast<std::uint64_t>(counts[n]);
    }
  }
  return {"side conditions", true, std::to_string(steps) + " steps"};
}

/// j* <= 4 log n (n >= 3) for Ostrowski traces and j' <= 4 log n (n >= 8) for Gauss-map traces.
inline Check check_recursion_depth(const std::vector<Scalar>& ts, std::uint64_t n_max) {
  std::size_t max_j = 0;
  std::size_t max_bseq = 0;
  for (const auto& t : ts) {
    const OstrowskiSum ost(t, expand(t, 1000), n_max);
    auto bad = parallel_map<char>(n_max + 1, [&](std::size_t n) {
      if (n < 3) return char{0};
      const long double cap = 4 * detail::ln(n);
      const auto r = ost(n);
      const auto& st = std::get<std::vector<OstrowskiStep>>(r.trace.steps);
      if (static_cast<long double>(st.front().j_star) > cap || static_cast<long double>(st.size()) > cap) return char{1};
      if (n >= 8 && static_cast<long double>(bseq_S(n, t).trace.size()) > cap) return char{2};
      return char{0};
    });
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      if (bad[n]) return {"recursion depth", false, "bound exceeded at t = " + to_string(t) + ", n = " + std::to_string(n)};
    }
    max_j = std::max(max_j, ost(n_max).trace.size());
    max_bseq = std::max(max_bseq, bseq_S(n_max, t).trace.size());
  }
  return {"recursion depth", true,
          "trace lengths at n_max: " + std::to_string(max_j) + " / " + std::to_string(max_bseq)};
}

/// |S(n, golden)| <= 2 log n for 3 <= n <= n_max via the Ostrowski recursion.
inline Check check_golden_log_bound(std::uint64_t n_max) {
  const Scalar g = parse_scalar("(-1+1*sqrt(5))/2");
  const OstrowskiSum ost(g, expand(g, 10), n_max);
  auto ratio = parallel_map<long double>(n_max + 1, [&](std::size_t n) {
    if (n < 3) return 0.0L;
    return to_long_double(abs(ost(n).value)) / (2 * detail::ln(n));
  });
  long double worst = 0;
  std::uint64_t at = 0;
  for (std::uint64_t n = 3; n <= n_max; ++n) {
    if (ratio[n] > worst) {
      worst = ratio[n];
      at = n;
    }
  }
  return {"golden ratio 2 log n", worst <= 1,
          "max |S|/(2 log n) = " + detail::str(worst) + " at n = " + std::to_string(at)};
}

/// Both local identities, exactly, on seeded random inputs.
inline Check check_thm21b(std::uint64_t count, std::uint64_t n_max, std::uint64_t seed) {
  auto bad = parallel_map<std::string>(count, [&](std::size_t i) -> std::string {
    std::mt19937_64 gen(detail::substream_seed(seed, i));
    const std::uint64_t n = 1 + detail::uniform_below(gen, n_max);
    Scalar t = i % 2 == 0 ? Scalar(detail::random_fraction(gen, 1, 50, 1)) : detail::random_unit_quadratic(gen);
    if (t.sign() == 0) t = Scalar(1);
    if (!thm21b_identity(n, t).equal()) return to_string(t) + " n=" + std::to_string(n);
    return {};
  });
  for (const auto& b : bad) {
    if (!b.empty()) return {"identity near 0", false, "failed at " + b};
  }
  return {"identity near 0", true, std::to_string(count) + " cases"};
}

/// Right Farey neighbour denominator b* of a/b in order b: b* = -a^{-1} mod b, in 1..b.
inline std::uint64_t farey_right_denominator(std::uint64_t a, std::uint64_t b) {
  if (b == 1) return 1;
  for (std::uint64_t bs = 1; bs <= b; ++bs) {
    if ((1 + a * bs) % b == 0) return bs;
  }
  throw NotNeighbors("a/b not reduced");
}

inline Check check_thm21a(std::uint64_t count, std::uint64_t n_max, std::uint64_t seed) {
  auto bad = parallel_map<std::string>(count, [&](std::size_t i) -> std::string {
    std::mt19937_64 gen(detail::substream_seed(seed, i));
    const std::uint64_t n = 1 + detail::uniform_below(gen, n_max);
    const std::uint64_t b = 1 + detail::uniform_below(gen, n);
    std::uint64_t a = detail::uniform_below(gen, 3 * b);
    while (std::gcd(a, b) != 1) ++a;
    const std::uint64_t bs = farey_right_denominator(a % b, b);
    const std::uint64_t D = 1 + detail::uniform_below(gen, 12);
    const std::uint64_t top = n * D / bs;
    const Scalar x(Fraction(to_integer(1 + detail::uniform_below(gen, top)), to_integer(D)));
    const Fraction ab(to_integer(a), to_integer(b));
    if (!thm21a_identity(n, ab, bs, x).equal()) {
      return to_string(ab) + " b*=" + std::to_string(bs) + " n=" + std::to_string(n) + " x=" + to_string(x);
    }
    return {};
  });
  std::uint64_t failures = 0;
  std::string first;
  for (const auto& b : bad) {
    if (!b.empty()) {
      if (failures++ == 0) first = b;
    }
  }
  if (failures) return {"identity near a/b", false, std::to_string(failures) + " failures, first " + first};
  return {"identity near a/b", true, std::to_string(count) + " admissible tuples"};
}

/// floor(x)/(12x^2) <= ||B_x||^2 and 1/12 <= x ||B_x||^2 <= upper for x <= x_max.
inline Check check_l2(std::uint64_t x_max, const Fraction& upper) {
  std::vector<Fraction> table;
  try {
    table = l2_norm_sq_table(x_max);
  } catch (const BoundViolated& e) {
    return {"L2 norm", false, e.what()};
  }
  Fraction lo(1), hi(0);
  bool first = true;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    const Fraction v = table[x] * Fraction(to_integer(x));
    if (first || v < lo) lo = v;
    if (first || hi < v) hi = v;
    first = false;
  }
  const bool ok = !(lo < Fraction(Integer(1), Integer(12))) && !(upper < hi);
  return {"L2 norm", ok,
          "x ||B_x||^2 in [" + detail::str(to_long_double(Scalar(lo))) + ", " +
              detail::str(to_long_double(Scalar(hi))) + "]"};
}

/// Product bounds for every alpha in [lo, hi]^m, m <= m_max, and the base case (2) -> 1/2.
inline Check check_measure(std::size_t m_max, long lo, long hi) {
  if (!(measure_exact({Integer(2)}).exact_measure == Fraction(Integer(1), Integer(2)))) {
    return {"measure bounds", false, "base case (2) is not 1/2"};
  }
  std::uint64_t sets = 0;
  std::vector<Integer> alphas;
  std::string failure;
  auto rec = [&](auto&& self) -> void {
    if (!failure.empty()) return;
    if (!alphas.empty()) {
      try {
        measure_exact(alphas);
      } catch (const BoundViolated&) {
        failure = "bounds violated";
      }
      ++sets;
    }
    if (alphas.size() == m_max) return;
    for (long a = lo; a <= hi; ++a) {
      alphas.emplace_back(a);
      self(self);
      alphas.pop_back();
    }
  };
  rec(rec);
  if (!failure.empty()) return {"measure bounds", false, failure};
  return {"measure bounds", true, std::to_string(sets) + " sets"};
}

inline Check check_mass_bound(const std::vector<std::uint64_t>& ns, std::uint64_t samples, std::uint64_t seed) {
  std::ostringstream os;
  for (std::uint64_t n : ns) {
    try {
      const auto r = verify_b0_mass(n, theta_loglog(n), samples, seed);
      os << "n=" << n << " ratio=" << detail::str(r.max_ratio) << ' ';
    } catch (const Error& e) {
      return {"mass bound on M_n", false, "n=" + std::to_string(n) + ": " + e.what()};
    }
  }
  return {"mass bound on M_n", true, os.str()};
}

inline Check check_ae_bound(const std::vector<Scalar>& ts, const std::vector<std::uint64_t>& ns,
                            const std::vector<long double>& eps) {
  long double worst = 0;
  for (const auto& t : ts) {
    const CFExpansion cf = expand(t, 100);
    for (std::uint64_t n : ns) {
      for (long double e : eps) {
        try {
          const long double theta = theta_loglog(n);
          const auto r = verify_ae_bound(n, e, theta, t, cf);
          worst = std::max(worst, r.max_ratio);
        } catch (const Error& err) {
          return {"almost-everywhere bound", false, to_string(t) + " n=" + std::to_string(n) + ": " + err.what()};
        }
      }
    }
  }
  return {"almost-everywhere bound", true, "max ratio " + detail::str(worst)};
}

/// |B_x0(a/b)| <= b/x and |sum t_{a/b}(m)| <= b(b+1) for reduced a/b, b <= b_max, x <= x_max.
inline Check check_rational_bounds(std::uint64_t b_max, std::uint64_t x_max) {
  std::vector<Fraction> points;
  for (std::uint64_t b = 1; b <= b_max; ++b) {
    for (std::uint64_t a = 0; a < b; ++a) {
      if (std::gcd(a, b) == 1) points.emplace_back(to_integer(a), to_integer(b));
    }
  }
  auto bad = parallel_map<std::string>(points.size(), [&](std::size_t i) -> std::string {
    const Fraction& ab = points[i];
    const Scalar t(ab);
    const Integer& a = ab.num();
    const Integer& b = ab.den();
    Scalar s0;
    Integer tab = 0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
      const Integer am = a * to_integer(x);
      s0 += beta0(Scalar(Fraction(am, b)));
      tab += 2 * am - 2 * b * floor_div(am, b) - b + 1;
      const Scalar xs(to_integer(x));
      if (!(abs(s0 / xs) <= Scalar(b) / xs)) return "lemma bound at " + to_string(ab) + " x=" + std::to_string(x);
      if (Integer(abs(tab)) > b * (b + 1)) return "tab bound at " + to_string(ab) + " x=" + std::to_string(x);
      if (x % 97 == 0) {
        if (!lemma31_bound(xs, ab).holds) return "lemma31_bound at " + to_string(ab);
        if (tab_sum(x, ab) != tab) return "tab_sum mismatch at " + to_string(ab);
      }
    }
    return {};
  });
  for (const auto& b : bad) {
    if (!b.empty()) return {"rational point bounds", false, b};
  }
  return {"rational point bounds", true, std::to_string(points.size()) + " fractions x " + std::to_string(x_max)};
}

/// Count of F^ext_n in [0, t] from the sequence F_n, shifted over the integers.
inline Integer count_from_sequence(const FareySequence& f, const Fraction& t) {
  Integer total = 0;
  const Integer whole = floor(t);
  for (Integer m = 0; m <= whole; ++m) {
    for (std::size_t i = 0; i + 1 < f.fractions.size(); ++i) {
      if (Fraction(m) + f.fractions[i] <= t) ++total;
    }
  }
  return total;
}

/// Farey counting identity against enumeration for t off F^ext_n.
inline Check check_farey_identity(std::uint64_t n_max, std::uint64_t count, std::uint64_t seed,
                                  const ArithTables& tables) {
  std::vector<FareySequence> seqs(n_max + 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) seqs[n] = farey(n);
  auto bad = parallel_map<std::string>(count, [&](std::size_t i) -> std::string {
    std::mt19937_64 gen(detail::substream_seed(seed, i));
    const std::uint64_t n = 1 + detail::uniform_below(gen, n_max);
    Fraction t = detail::random_fraction(gen, n + 1, 4 * n + 8, 3);
    while (t.den() <= to_integer(n)) t = detail::random_fraction(gen, n + 1, 4 * n + 8, 3);
    const auto r = farey_count(n, Scalar(t), tables);
    if (!(Scalar(r.count) == r.identity_lhs) || r.count != count_from_sequence(seqs[n], t)) {
      return to_string(t) + " n=" + std::to_string(n);
    }
    return {};
  });
  for (const auto& b : bad) {
    if (!b.empty()) return {"Farey identity", false, "failed at " + b};
  }
  return {"Farey identity", true, std::to_string(count) + " cases"};
}

/// beta0(nt) = -sum_{d | n} q_d0(t) for n <= n_max.
inline Check check_mobius(std::uint64_t n_max, const std::vector<Scalar>& ts, const ArithTables& tables) {
  for (const auto& t : ts) {
    std::vector<Scalar> qs(n_max + 1);
    parallel_for(n_max, [&](std::size_t i) { qs[i + 1] = q_k(i + 1, t, tables, Saw::beta0); });
    auto bad = parallel_map<char>(n_max, [&](std::size_t i) {
      const std::uint64_t n = i + 1;
      Scalar s;
      for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d == 0) s += qs[d];
      }
      return static_cast<char>(!(beta0(t * Scalar(to_integer(n))) == -s));
    });
    for (std::uint64_t i = 0; i < n_max; ++i) {
      if (bad[i]) return {"Moebius inversion", false, to_string(t) + " n=" + std::to_string(i + 1)};
    }
  }
  return {"Moebius inversion", true, std::to_string(ts.size()) + " points, n <= " + std::to_string(n_max)};
}

/// Test points for the series checks.
inline std::vector<Scalar> series_corpus() {
  return {parse_scalar("(-1+1*sqrt(5))/2"), parse_scalar("(-1+1*sqrt(2))/1"), parse_scalar("(-1+1*sqrt(3))/1"),
          parse_scalar("(1+1*sqrt(5))/2"),  parse_scalar("2/5"),              parse_scalar("17/43")};
}

inline Check check_mellin(const std::vector<Scalar>& ts, std::uint64_t K) {
  long double worst = 0;
  for (const auto& t : ts) {
    const SawtoothSeries data(t, K);
    for (ComplexVal s : {ComplexVal(2, 0), ComplexVal(3, 0), ComplexVal(2, 5)}) {
      const auto c = mellin_identity(data, s, K);
      if (!c.holds()) {
        return {"Mellin identity", false, to_string(t) + " s=" + to_string(s) + " residual " + detail::str(c.residual) +
                                                " > " + detail::str(c.allowed)};
      }
      worst = std::max(worst, c.residual / c.allowed);
    }
  }
  return {"Mellin identity", true, "max residual/allowed " + detail::str(worst)};
}

inline Check check_zeta_identity(const std::vector<Scalar>& ts, std::uint64_t K, const ArithTables& tables) {
  long double worst = 0;
  for (const auto& t : ts) {
    const SawtoothSeries data(t, K);
    for (ComplexVal s : {ComplexVal(2, 0), ComplexVal(3, 0)}) {
      const auto c = zeta_identity(data, s, K, tables);
      if (!c.holds()) {
        return {"zeta identity", false, to_string(t) + " s=" + to_string(s) + " residual " + detail::str(c.residual) +
                                              " > " + detail::str(c.allowed)};
      }
      worst = std::max(worst, c.residual / c.allowed);
    }
  }
  return {"zeta identity", true, "max residual/allowed " + detail::str(worst)};
}

inline Check check_zeta_values() {
  constexpr long double pi = std::numbers::pi_v<long double>;
  const long double e2 = std::abs(zeta(2) - pi * pi / 6);
  const long double e4 = std::abs(zeta(4) - pi * pi * pi * pi / 90);
  const long double e6 = std::abs(zeta(6) - pi * pi * pi * pi * pi * pi / 945);
  const long double eh = std::abs(zeta(0.5L) - ComplexVal(-1.46035450880958681289L));
  const long double worst = std::max({e2, e4, e6, eh});
  return {"zeta values", worst < 1e-12L, "max error " + detail::str(worst)};
}

inline Check check_continuation(std::uint64_t K) {
  const Scalar g = parse_scalar("(-1+1*sqrt(5))/2");
  const Scalar s2 = parse_scalar("(-1+1*sqrt(2))/1");
  const auto a = continuation_evidence(g, expand(g, 10), {ComplexVal(0.6L, 0)}, K);
  const auto b = continuation_evidence(s2, expand(s2, 10), {ComplexVal(0.9L, 3)}, K);
  const bool ok = a.all_decreasing() && b.all_decreasing();
  return {"continuation evidence", ok,
          "oscillations " + detail::str(a.rows[0].oscillation[0]) + " > " + detail::str(a.rows[0].oscillation[1]) +
              ", " + detail::str(b.rows[0].oscillation[0]) + " > " + detail::str(b.rows[0].oscillation[1])};
}

/// Sup-grid deviation from eta_tilde strictly decreasing in n, below `final_bound` at the last n,
/// and the envelope |eta_tilde| <= min(1/2, 1/(8|x|)) exactly on the grid.
inline Check check_eta_convergence(const std::vector<Fraction>& points, const std::vector<std::uint64_t>& ns,
                                   const Scalar& x_star, const Scalar& step, long double final_bound) {
  for (const auto& x : offset_grid(x_star, step)) {
    const Scalar e = abs(eta_tilde(x));
    if (Scalar(Fraction(1, 2)) < e || Scalar(1) / (Scalar(8) * abs(x)) < e) {
      return {"eta convergence", false, "envelope fails at x = " + to_string(x)};
    }
  }
  std::ostringstream os;
  for (const auto& ab : points) {
    const auto reps = convergence_report(ab, ns, x_star, step);
    os << to_string(ab) << ':';
    for (std::size_t i = 0; i < reps.size(); ++i) {
      os << ' ' << detail::str(reps[i].sup_abs_dev);
      if (i > 0 && !(reps[i].sup_abs_dev < reps[i - 1].sup_abs_dev)) {
        return {"eta convergence", false, "not decreasing for " + to_string(ab) + ": " + os.str()};
      }
    }
    if (!(reps.back().sup_abs_dev < final_bound)) {
      return {"eta convergence", false, "final deviation too large for " + to_string(ab) + ": " + os.str()};
    }
    os << "; ";
  }
  return {"eta convergence", true, os.str()};
}

struct FigureData {
  std::vector<Fraction> grid;
  std::vector<long double> values;
  long double max_abs() const {
    long double m = 0;
    for (auto v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

inline FigureData h_figure(const Fraction& lo, const Fraction& hi, const Fraction& step, const ArithTables& tables) {
  FigureData f{linear_grid(lo, hi, step), {}};
  f.values = parallel_map<long double>(f.grid.size(), [&](std::size_t i) { return h_value(f.grid[i], tables); });
  return f;
}

/// Figure windows: h on [-25,25], [25,50], [50,500] and eta_tilde on [-8,8].
inline Check check_figures(const ArithTables& tables, const Fraction& fine_step) {
  const Fraction one(1);
  const auto w1 = h_figure(Fraction(-25), Fraction(25), fine_step, tables);
  const auto w2 = h_figure(Fraction(25), Fraction(50), fine_step, tables);
  const auto w3 = h_figure(Fraction(50), Fraction(500), fine_step * Fraction(10), tables);
  const bool decay = w2.max_abs() < w1.max_abs() && w3.max_abs() < w2.max_abs();
  bool odd = true;
  for (std::size_t i = 0, j = w1.grid.size() - 1; i < j; ++i, --j) {
    if (w1.values[i] != -w1.values[j]) odd = false;
  }
  const bool origin = h_value(Fraction(0), tables) == 0;
  FigureData eta{linear_grid(Fraction(-8), Fraction(8), Fraction(Integer(1), Integer(1000))), {}};
  eta.values = eta_values(eta.grid);
  bool eta_shape = eta.grid.size() == 16001 && eta.values[8000] == -0.5L;
  for (std::size_t i = 0; i < eta.grid.size(); ++i) {
    const int sx = eta.grid[i].sign();
    if ((sx > 0 && eta.values[i] > 0) || (sx < 0 && eta.values[i] < 0)) eta_shape = false;
  }
  return {"figure data", decay && odd && origin && eta_shape,
          "max|h| " + detail::str(w1.max_abs()) + " > " + detail::str(w2.max_abs()) + " > " +
              detail::str(w3.max_abs()) + (odd ? ", h odd" : ", h not odd") +
              (eta_shape ? ", eta shape ok" : ", eta shape wrong")};
}

// ---------------------------------------------------------------------------
// Suites

enum class SuiteSize { quick, full };

struct SuiteReport {
  std::string suite;
  SuiteSize size = SuiteSize::quick;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"oracle", "bounds", "measure", "farey", "dirichlet"};
  return names;
}

/// Upper end of the bracket for x ||B_x||^2, x <= 200; the sweep maximum is 0.24246 at x = 200.
inline Fraction l2_upper_bracket() { return Fraction(Integer(1), Integer(4)); }

inline std::vector<Check> run_suite(const std::string& name, SuiteSize size, std::uint64_t seed) {
  const bool full = size == SuiteSize::full;
  std::vector<Check> out;
  auto tables = [&]() -> const ArithTables& {
    static const ArithTables t = build_tables(10000);
    return t;
  };
  if (name == "oracle") {
    const auto ts = recursion_corpus();
    const std::uint64_t n = full ? 2000 : 300;
    out.push_back(check_oracle_equivalence(ts, n));
    out.push_back(check_side_conditions(ts, n));
    out.push_back(check_recursion_depth(ts, n));
    out.push_back(check_thm21b(full ? 500 : 100, full ? 500 : 200, seed));
    out.push_back(check_thm21a(full ? 200 : 50, 60, seed));
  } else if (name == "bounds") {
    out.push_back(check_golden_log_bound(full ? 100000 : 5000));
    out.push_back(check_l2(full ? 200 : 60, l2_upper_bracket()));
    out.push_back(check_rational_bounds(full ? 20 : 8, full ? 500 : 120));
    out.push_back(check_eta_convergence({Fraction(0), Fraction(Integer(1), Integer(2)), Fraction(Integer(1), Integer(3))},
                                        full ? std::vector<std::uint64_t>{100, 400, 1600, 6400}
                                             : std::vector<std::uint64_t>{100, 400},
                                        Scalar(8), Scalar(Fraction(Integer(1), Integer(full ? 100 : 10))),
                                        full ? 0.0025L : 0.05L));
  } else if (name == "measure") {
    out.push_back(check_measure(full ? 4 : 3, 2, 5));
    out.push_back(check_mass_bound(full ? std::vector<std::uint64_t>{100, 1000, 10000}
                                        : std::vector<std::uint64_t>{100, 1000},
                                   20, seed));
    const auto ts = recursion_corpus();
    out.push_back(check_ae_bound(ts, full ? std::vector<std::uint64_t>{1000, 10000} : std::vector<std::uint64_t>{1000},
                                 {0.5L, 1.0L}));
  } else if (name == "farey") {
    out.push_back(check_farey_identity(60, full ? 500 : 100, seed, tables()));
    out.push_back(check_mobius(full ? 500 : 100,
                               {parse_scalar("(-1+1*sqrt(2))/1"), parse_scalar("3/7"), parse_scalar("(1+1*sqrt(5))/2")},
                               tables()));
    out.push_back(check_figures(tables(), Fraction(Integer(1), Integer(full ? 100 : 10))));
  } else if (name == "dirichlet") {
    const auto ts = full ? series_corpus() : std::vector<Scalar>{series_corpus()[0], series_corpus()[4]};
    const std::uint64_t K = full ? 10000 : 2000;
    out.push_back(check_zeta_values());
    out.push_back(check_mellin(ts, K));
    out.push_back(check_zeta_identity(ts, K, tables()));
    out.push_back(check_continuation(full ? 100000 : 20000));
  } else {
    throw DomainError("unknown suite " + name);
  }
  return out;
}

inline SuiteReport run_verify(const std::string& suite, SuiteSize size, std::uint64_t seed) {
  SuiteReport r{suite, size, seed, {}};
  if (suite == "all") {
    for (const auto& name : suite_names()) {
      for (auto& c : run_suite(name, size, seed)) r.checks.push_back(std::move(c));
    }
  } else {
    r.checks = run_suite(suite, size, seed);
  }
  return r;
}

inline nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  std::string first_failure;
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    if (!c.pass && first_failure.empty()) first_failure = c.name + ": " + c.detail;
  }
  nlohmann::ordered_json out = {{"suite", r.suite},
                                {"size", r.size == SuiteSize::full ? "full" : "quick"},
                                {"seed", r.seed},
                                {"pass", r.pass()},
                                {"checks", checks}};
  if (!first_failure.empty()) out["first_failure"] = first_failure;
  return out;
}

}  // namespace remsum
