#pragma once

// The limit profile eta_tilde, the rescaled means eta_{a,b}(n, x) = b B_n(a/b + x/(bn))
// and sup-grid deviation reports.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "remsum/eta.hpp"
#include "remsum/farey.hpp"
#include "remsum/parallel.hpp"
#include "remsum/sums.hpp"

namespace remsum {

/// b B_n(a/b + x/(bn)).
inline Scalar rescaled_eta(const Fraction& a_over_b, std::uint64_t n, const Scalar& x) {
  const Integer& b = a_over_b.den();
  if (n == 0 || b > to_integer(n)) throw DomainError("need 1 <= b <= n");
  const Scalar bn(Integer(b * to_integer(n)));
  const Scalar t = Scalar(a_over_b) + x / bn;
  return Scalar(b) * B(n, t);
}

struct DeviationReport {
  Fraction a_over_b;
  std::uint64_t n = 0;
  Scalar x_star;
  Scalar grid_step;
  long double sup_abs_dev = 0;
  Scalar argmax_x;
};

/// Offset grid -x* + (2i + 1) step / 2 inside [-x*, x*].
inline std::vector<Scalar> offset_grid(const Scalar& x_star, const Scalar& step) {
  if (x_star.sign() <= 0 || step.sign() <= 0) throw DomainError("grid needs x* > 0 and step > 0");
  std::vector<Scalar> grid;
  Scalar x = -x_star + step / Scalar(2);
  while (x <= x_star) {
    grid.push_back(x);
    x += step;
  }
  return grid;
}

inline std::vector<DeviationReport> convergence_report(const Fraction& a_over_b,
                                                       const std::vector<std::uint64_t>& n_list,
                                                       const Scalar& x_star, const Scalar& grid_step) {
  const auto grid = offset_grid(x_star, grid_step);
  std::vector<long double> eta(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) eta[i] = to_long_double(eta_tilde(grid[i]));

  std::vector<std::uint64_t> ns = n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<DeviationReport> out;
  for (std::uint64_t n : ns) {
    auto dev = parallel_map<long double>(grid.size(), [&](std::size_t i) {
      return std::abs(to_long_double(rescaled_eta(a_over_b, n, grid[i])) - eta[i]);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < dev.size(); ++i) {
      if (dev[i] > dev[best]) best = i;
    }
    out.push_back({a_over_b, n, x_star, grid_step, dev[best], grid[best]});
  }
  return out;
}

/// Exact grid lo, lo + step, ..., up to hi.
inline std::vector<Fraction> linear_grid(const Fraction& lo, const Fraction& hi, const Fraction& step) {
  if (step.sign() <= 0 || hi < lo) throw DomainError("grid needs lo <= hi and step > 0");
  const Integer count = floor((hi - lo) / step);
  std::vector<Fraction> out;
  out.reserve(to_u64(count) + 1);
  for (std::uint64_t i = 0; i <= to_u64(count); ++i) out.push_back(lo + step * Fraction(to_integer(i)));
  return out;
}

inline void write_value_csv(std::ostream& os, const std::vector<Fraction>& grid,
                            const std::vector<long double>& values) {
  os << "x,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << fmt12(to_long_double(Scalar(grid[i]))) << ',' << fmt12(values[i]) << '\n';
  }
}

inline std::vector<long double> eta_values(const std::vector<Fraction>& grid) {
  std::vector<long double> out;
  out.reserve(grid.size());
  for (const auto& x : grid) out.push_back(to_long_double(eta_tilde(Scalar(x))));
  return out;
}

inline std::vector<long double> rescaled_values(const Fraction& a_over_b, std::uint64_t n,
                                                const std::vector<Fraction>& grid) {
  return parallel_map<long double>(grid.size(), [&](std::size_t i) {
    return to_long_double(rescaled_eta(a_over_b, n, Scalar(grid[i])));
  });
}

}  // namespace remsum
