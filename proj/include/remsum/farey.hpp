#pragma once

// Farey sequences, totient/Moebius tables, the families q_k and Phi_x, the
// Farey counting identity and the limit function h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "remsum/exactnum.hpp"

namespace remsum {

enum class Saw { beta, beta0 };

inline Scalar saw(const Scalar& t, Saw variant) {
  return variant == Saw::beta ? beta(t) : beta0(t);
}

/// phi, mu, Mertens and the prefix sums behind r_x and s_x, for 1..N.
struct ArithTables {
  std::uint64_t N = 0;
  std::vector<std::uint32_t> phi;          // phi[k], index 0 unused
  std::vector<std::int8_t> mu;
  std::vector<std::int32_t> mertens;       // M(k), M(0) = 0
  std::vector<std::uint64_t> phi_prefix;   // sum_{k<=K} phi(k)
  /// sum_{k<=K} phi(k)/k, kept exactly for K <= exact_cap.
  std::vector<Fraction> phi_over_k_prefix;
  std::uint64_t exact_cap = 0;

  /// s_K = sum_{k<=K} phi(k)/k exactly, for any K <= N.
  Fraction phi_over_k(std::uint64_t K) const {
    if (K > N) throw DomainError("argument beyond the tables");
    if (K <= exact_cap) return phi_over_k_prefix[K];
    mpq_class total = phi_over_k_prefix[exact_cap].mpq();
    for (std::uint64_t k = exact_cap + 1; k <= K; ++k) {
      total += mpq_class(phi[k], static_cast<unsigned long>(k));
    }
    return Fraction(total);
  }
};

inline constexpr std::uint64_t kExactPhiOverKCap = 5000;

/// Linear sieve for phi and mu up to N.
inline ArithTables build_tables(std::uint64_t N) {
  if (N < 1) throw DomainError("tables need N >= 1");
  ArithTables t;
  t.N = N;
  t.phi.assign(N + 1, 0);
  t.mu.assign(N + 1, 0);
  t.mertens.assign(N + 1, 0);
  t.phi_prefix.assign(N + 1, 0);
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(N + 1, false);
  t.phi[1] = 1;
  t.mu[1] = 1;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      t.phi[i] = static_cast<std::uint32_t>(i - 1);
      t.mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > N) break;
      composite[ip] = true;
      if (i % p == 0) {
        t.phi[ip] = t.phi[i] * p;
        t.mu[ip] = 0;
        break;
      }
      t.phi[ip] = t.phi[i] * (p - 1);
      t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
    }
  }
  for (std::uint64_t k = 1; k <= N; ++k) {
    t.mertens[k] = t.mertens[k - 1] + t.mu[k];
    t.phi_prefix[k] = t.phi_prefix[k - 1] + t.phi[k];
  }
  t.exact_cap = std::min(N, kExactPhiOverKCap);
  t.phi_over_k_prefix.assign(t.exact_cap + 1, Fraction{});
  mpq_class acc = 0;
  for (std::uint64_t k = 1; k <= t.exact_cap; ++k) {
    acc += mpq_class(t.phi[k], static_cast<unsigned long>(k));
    t.phi_over_k_prefix[k] = Fraction(acc);
  }
  return t;
}

struct FareySequence {
  std::uint64_t order = 0;
  std::vector<Fraction> fractions;
};

/// F_n by the neighbour recurrence a''/b'' = (k a' - a)/(k b' - b), k = floor((n + b)/b').
inline FareySequence farey(std::uint64_t n) {
  if (n < 1) throw DomainError("Farey order must be positive");
  FareySequence f;
  f.order = n;
  std::uint64_t a = 0, b = 1, c = 1, d = n;
  f.fractions.emplace_back(0);
  while (c <= n) {
    f.fractions.push_back(Fraction(to_integer(c), to_integer(d)));
    const std::uint64_t k = (n + b) / d;
    const std::uint64_t e = k * c - a;
    const std::uint64_t g = k * d - b;
    a = c;
    b = d;
    c = e;
    d = g;
    if (a == 1 && b == 1) break;
  }
  return f;
}

/// q_k(t) = -sum_{d | k} mu(d) beta(kt/d), or with beta0.
inline Scalar q_k(std::uint64_t k, const Scalar& t, const ArithTables& tables,
                  Saw variant = Saw::beta) {
  if (k < 1 || k > tables.N) throw DomainError("k outside the tables");
  Scalar total;
  auto add = [&](std::uint64_t d) {
    if (tables.mu[d] == 0) return;
    Scalar term = saw(t * Scalar(to_integer(k / d)), variant);
    total += tables.mu[d] > 0 ? -term : term;
  };
  for (std::uint64_t d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    add(d);
    if (d * d != k) add(k / d);
  }
  return total;
}

/// Phi_x(t) = -(1/x) sum_{j <= x} M(floor(x/j)) beta(jt).
inline Scalar phi_x(const Scalar& x, const Scalar& t, const ArithTables& tables,
                    Saw variant = Saw::beta) {
  if (x.sign() <= 0) throw DomainError("x must be positive");
  const std::uint64_t m = to_u64(floor(x));
  if (m > tables.N) throw DomainError("x beyond the tables");
  Scalar total;
  for (std::uint64_t j = 1; j <= m; ++j) {
    const std::int32_t M = tables.mertens[m / j];
    if (M == 0) continue;
    total += Scalar(Integer(static_cast<long>(M))) * saw(t * Scalar(to_integer(j)), variant);
  }
  return -total / x;
}

/// Phi_x(t) as (1/x) sum_{k <= x} q_k(t); the slow form used to cross-check phi_x.
inline Scalar phi_x_qsum(const Scalar& x, const Scalar& t, const ArithTables& tables,
                         Saw variant = Saw::beta) {
  if (x.sign() <= 0) throw DomainError("x must be positive");
  const std::uint64_t m = to_u64(floor(x));
  Scalar total;
  for (std::uint64_t k = 1; k <= m; ++k) total += q_k(k, t, tables, variant);
  return total / x;
}

struct FareyCount {
  Integer count;           // fractions a/b, b <= n, with 0 <= a/b <= t
  Integer count_open;      // the same with a/b < t
  Scalar identity_lhs;     // t sum phi + n Phi_n(t) + 1/2
  Scalar identity_lhs_mid; // the same with Phi_{n,0}
};

/// Direct count of F^ext_n in [0, t] next to the closed form.
inline FareyCount farey_count(std::uint64_t n, const Scalar& t, const ArithTables& tables) {
  if (t.sign() < 0) throw DomainError("t must be nonnegative");
  if (n < 1 || n > tables.N) throw DomainError("n outside the tables");
  FareyCount out;
  out.count = 0;
  out.count_open = 0;
  for (std::uint64_t b = 1; b <= n; ++b) {
    const Scalar bt = t * Scalar(to_integer(b));
    const std::uint64_t top = to_u64(floor(bt));
    std::uint64_t c = 0;
    for (std::uint64_t a = 0; a <= top; ++a) c += std::gcd(a, b) == 1 ? 1 : 0;
    out.count += to_integer(c);
    out.count_open += to_integer(c);
    // a/b = t exactly only when bt is the integer top with gcd(top, b) = 1.
    if (bt.is_integer() && std::gcd(top, b) == 1) out.count_open -= 1;
  }
  const Scalar nn(to_integer(n));
  const Scalar base = t * Scalar(to_integer(tables.phi_prefix[n])) + Scalar(Fraction(1, 2));
  out.identity_lhs = base + nn * phi_x(nn, t, tables, Saw::beta);
  out.identity_lhs_mid = base + nn * phi_x(nn, t, tables, Saw::beta0);
  return out;
}

/// r_x - s_x exactly, for x > 0.
inline Fraction r_minus_s(const Fraction& x, const ArithTables& tables) {
  const std::uint64_t m = to_u64(floor(x));
  if (m > tables.N) throw DomainError("x beyond the tables");
  Fraction r = Fraction(to_integer(tables.phi_prefix[m])) / x;
  return r - tables.phi_over_k(m);
}

/// h(x) = 3x/pi^2 + r_x - s_x for x > 0, odd, h(0) = 0.
inline long double h_value(const Fraction& x, const ArithTables& tables) {
  if (x.sign() == 0) return 0.0L;
  if (x.sign() < 0) return -h_value(-x, tables);
  constexpr long double pi = std::numbers::pi_v<long double>;
  const long double lead = 3.0L * to_long_double(Scalar(x)) / (pi * pi);
  return lead + to_long_double(Scalar(r_minus_s(x, tables)));
}

inline std::vector<long double> h_values(const std::vector<Fraction>& grid, const ArithTables& tables) {
  std::vector<long double> out;
  out.reserve(grid.size());
  for (const auto& x : grid) out.push_back(h_value(x, tables));
  return out;
}

// ---------------------------------------------------------------------------
// CSV

/// %.12g formatting used by every CSV column that is not exact.
inline std::string fmt12(long double v) {
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

inline void write_h_csv(std::ostream& os, const std::vector<Fraction>& grid, const ArithTables& tables) {
  os << "x,h\n";
  for (const auto& x : grid) {
    os << fmt12(to_long_double(Scalar(x))) << ',' << fmt12(h_value(x, tables)) << '\n';
  }
}

}  // namespace remsum
