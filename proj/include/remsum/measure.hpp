#pragma once

// Measures of continued-fraction coefficient sets {t : theta_j(t) < alpha_j},
// and sampled checks of the bounds for |B_n(t)| on the sets M_n and M~_n.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "remsum/cfrac.hpp"
#include "remsum/parallel.hpp"
#include "remsum/sums.hpp"

namespace remsum {

struct MeasureSet {
  std::vector<Integer> alphas;
  Fraction exact_measure;
  Fraction lower_bound;  // prod (1 - 1/alpha_j)^2
  Fraction upper_bound;  // prod (1 - 1/alpha_j)
};

inline constexpr std::uint64_t kMeasureEnumerationGuard = 10000000;

/// |{t in (0,1) irrational : lambda_j(t) <= alpha_j - 1 for j <= m}| as a sum of
/// fundamental interval lengths 1/((b_j(l_j + 1) + b_{j-1})(b_j l_j + b_{j-1})).
inline MeasureSet measure_exact(const std::vector<Integer>& alphas) {
  MeasureSet out;
  out.alphas = alphas;
  Integer size = 1;
  out.lower_bound = Fraction(1);
  out.upper_bound = Fraction(1);
  for (const auto& a : alphas) {
    if (a < 1) throw DomainError("alphas must be positive");
    size *= a - 1;
    Fraction f = Fraction(1) - Fraction(Integer(1), a);
    out.upper_bound *= f;
    out.lower_bound *= f * f;
  }
  if (size > kMeasureEnumerationGuard) {
    throw TooLarge("enumeration of " + size.get_str() + " intervals exceeds the guard");
  }
  if (alphas.empty()) {
    out.exact_measure = Fraction(1);
    return out;
  }
  mpq_class total = 0;
  const std::size_t m = alphas.size();
  if (size > 0) {
    // Depth-first over (l_1..l_m) carrying the convergent denominators.
    auto rec = [&](auto&& self, std::size_t j, const Integer& b_prev, const Integer& b_cur) -> void {
      const unsigned long top = alphas[j].get_ui() - 1;
      for (unsigned long l = 1; l <= top; ++l) {
        if (j + 1 == m) {
          Integer lo = b_cur * l + b_prev;
          Integer hi = lo + b_cur;
          total += mpq_class(1, Integer(lo * hi));
        } else {
          self(self, j + 1, b_cur, Integer(b_cur * l + b_prev));
        }
      }
    };
    rec(rec, 0, Integer(0), Integer(1));
    total.canonicalize();
  }
  out.exact_measure = Fraction(total);
  if (out.exact_measure < out.lower_bound || out.upper_bound < out.exact_measure) {
    throw BoundViolated("product bounds violated for the measure set");
  }
  return out;
}

struct Threshold {
  std::uint64_t m = 0;
  std::uint64_t cutoff = 0;
};

/// m = floor(4 log n), cutoff = 1 + floor(theta log n).
inline Threshold mn_threshold(std::uint64_t n, long double theta) {
  if (n < 3) throw DomainError("need n >= 3");
  if (!(theta >= 1)) throw DomainError("need theta >= 1");
  const long double ln = std::log(static_cast<long double>(n));
  return {static_cast<std::uint64_t>(std::floor(4 * ln)),
          1 + static_cast<std::uint64_t>(std::floor(theta * ln))};
}

/// 1 + log(1 + log n).
inline long double theta_loglog(std::uint64_t n) {
  return 1 + std::log(1 + std::log(static_cast<long double>(n)));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in [0, bound) by rejection, independent of the standard library's distributions.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = gen();
    if (v < limit) return v % bound;
  }
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace detail

/// Purely periodic expansion <0; (l_1..l_L)>, L = max(m, 8), l_i uniform on [1, cutoff - 1].
inline CFExpansion sample_bounded_expansion(std::uint64_t cutoff, std::uint64_t m, std::uint64_t seed) {
  if (cutoff < 2) throw DomainError("cutoff must be >= 2");
  std::mt19937_64 gen(seed);
  const std::uint64_t length = std::max<std::uint64_t>(m, 8);
  CFExpansion cf;
  cf.lambda0 = 0;
  cf.period.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    cf.period.push_back(to_integer(1 + detail::uniform_below(gen, cutoff - 1)));
  }
  return cf;
}

inline Scalar sample_bounded_cf(std::uint64_t cutoff, std::uint64_t m, std::uint64_t seed) {
  return value(sample_bounded_expansion(cutoff, m, seed));
}

/// theta_j(t) < cutoff for j = 1..m, decided exactly.
inline bool in_Mn(const Scalar& t, std::uint64_t m, std::uint64_t cutoff) {
  if (t.sign() <= 0 || !(t < Scalar(1)) || t.is_rational()) return false;
  const Scalar c(to_integer(cutoff));
  for (const auto& th : theta_sequence(t, m)) {
    if (!(th < c)) return false;
  }
  return true;
}

struct BoundReport {
  std::uint64_t n = 0;
  long double theta = 0;
  std::uint64_t samples = 0;
  long double max_ratio = 0;
  bool pass = false;
  std::optional<long double> epsilon;  // set for the almost-everywhere check
  std::string witness;                 // sample attaining max_ratio
};

inline nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json out = {{"n", r.n},
                                {"theta", static_cast<double>(r.theta)},
                                {"samples", r.samples},
                                {"max_ratio", static_cast<double>(r.max_ratio)},
                                {"pass", r.pass}};
  if (r.epsilon) out["epsilon"] = static_cast<double>(*r.epsilon);
  return out;
}

/// |B_n(t)| against 2 log^2(n) theta / n for seeded samples of M_n.
inline BoundReport verify_b0_mass(std::uint64_t n, long double theta, std::uint64_t samples,
                                  std::uint64_t seed) {
  const Threshold th = mn_threshold(n, theta);
  const long double ln = std::log(static_cast<long double>(n));
  const long double bound_s = 2 * ln * ln * theta;  // bound on |S(n,t)| = n |B_n(t)|
  struct Row {
    long double ratio;
    std::string t;
  };
  auto rows = parallel_map<Row>(samples, [&](std::size_t i) {
    CFExpansion cf = sample_bounded_expansion(th.cutoff, th.m, detail::substream_seed(seed, i));
    Scalar t = value(cf);
    if (!in_Mn(t, th.m, th.cutoff)) throw NotMember("sampler produced t outside M_n: " + to_string(t));
    Scalar s = ostrowski_S(n, t, cf).value;
    return Row{to_long_double(abs(s)) / bound_s, to_string(cf)};
  });
  BoundReport r{n, theta, samples, 0, true, std::nullopt, {}};
  for (const auto& row : rows) {
    if (row.ratio >= r.max_ratio) {
      r.max_ratio = row.ratio;
      r.witness = row.t;
    }
  }
  r.pass = r.max_ratio <= 1;
  if (!r.pass) throw BoundViolated("|B_n(t)| above the bound for t = " + r.witness);
  return r;
}

/// lambda_j <= floor(theta j^(1+eps)) for every j; exact for eventually periodic or finite cf.
inline bool in_tilde_Mn(const CFExpansion& cf, long double epsilon, long double theta) {
  auto allowed = [&](std::size_t j) {
    return std::floor(theta * std::pow(static_cast<long double>(j), 1 + epsilon));
  };
  auto ok = [&](std::size_t j) {
    return !(cf.coefficient(j) > Integer(static_cast<unsigned long>(allowed(j))));
  };
  for (std::size_t j = 1; j <= cf.head.size(); ++j) {
    if (!ok(j)) return false;
  }
  if (cf.period.empty()) return true;
  Integer lmax = *std::max_element(cf.period.begin(), cf.period.end());
  // allowed(j) grows without bound, so only finitely many periodic j can fail.
  for (std::size_t j = cf.head.size() + 1;; ++j) {
    if (!ok(j)) return false;
    if (Integer(static_cast<unsigned long>(std::min<long double>(allowed(j), 1e18L))) >= lmax) return true;
  }
}

/// |B_n(t)| against (4 log n)^(2+eps) theta / (2n).
inline BoundReport verify_ae_bound(std::uint64_t n, long double epsilon, long double theta,
                                   const Scalar& t, const CFExpansion& cf) {
  if (n < 3) throw DomainError("need n >= 3");
  if (!(epsilon > 0)) throw DomainError("need epsilon > 0");
  if (!in_tilde_Mn(cf, epsilon, theta)) {
    throw NotMember("continued fraction coefficients exceed theta j^(1+eps)");
  }
  const long double ln = std::log(static_cast<long double>(n));
  const long double bound_s = std::pow(4 * ln, 2 + epsilon) * theta / 2;
  const long double ratio = to_long_double(abs(ostrowski_S(n, t, cf).value)) / bound_s;
  BoundReport r{n, theta, 1, ratio, ratio <= 1, epsilon, to_string(cf)};
  if (!r.pass) throw BoundViolated("|B_n(t)| above the bound for t = " + r.witness);
  return r;
}

}  // namespace remsum
