#pragma once

// Command bodies of the `remsum` tool. run_cli takes the arguments after the
// program name and writes to the given streams, so tests can run it in-process.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 internal cross-check failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "remsum/cfrac.hpp"
#include "remsum/dirichlet.hpp"
#include "remsum/farey.hpp"
#include "remsum/limits.hpp"
#include "remsum/measure.hpp"
#include "remsum/sums.hpp"
#include "remsum/verify.hpp"

namespace remsum {

enum ExitCode : int { kExitPass = 0, kExitVerify = 1, kExitUsage = 2, kExitCrossCheck = 3 };

/// Raised when two independent routes disagree.
class CrossCheckFailure : public Error {
 public:
  using Error::Error;
};

struct TSpec {
  Scalar value;
  std::optional<CFExpansion> cf;  // set for "cf:" input
  std::string text;
};

/// "rat:p/q", "quad:(p+q*sqrt(d))/r" or "cf:l0;l1,(period)".
inline TSpec parse_tspec(const std::string& text) {
  auto body = [&](std::string_view prefix) { return std::string_view(text).substr(prefix.size()); };
  if (text.rfind("rat:", 0) == 0) return {Scalar(parse_fraction(body("rat:"))), std::nullopt, text};
  if (text.rfind("quad:", 0) == 0) return {parse_quadratic(body("quad:")), std::nullopt, text};
  if (text.rfind("cf:", 0) == 0) {
    CFExpansion cf = parse_cf(body("cf:"));
    return {value(cf), cf, text};
  }
  throw ParseError("t-spec must start with rat:, quad: or cf: ('" + text + "')");
}

/// "-8", "0.001", "2.5e-3" or "1/3" as an exact fraction.
inline Fraction parse_decimal(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse_fraction(text);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw ParseError("expected a number: '" + text + "'");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + text + "'");
    }
    if (used == 0 || e > 1000 || e < -1000) throw ParseError("bad exponent in '" + text + "'");
    pos += used;
    scale += e;
  }
  if (pos != text.size()) throw ParseError("trailing characters in '" + text + "'");
  Integer num(digits, 10);
  if (negative) num = -num;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  return scale >= 0 ? Fraction(Integer(num * ten_pow)) : Fraction(num, ten_pow);
}

/// "2", "0.9+3i", "-1.5-2i", "3i".
inline ComplexVal parse_complex(const std::string& text) {
  auto real_of = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      long double v = std::stold(part, &used);
      if (used != part.size()) throw ParseError("bad number in '" + text + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("bad complex number '" + text + "'");
    }
  };
  if (text.empty()) throw ParseError("empty complex number");
  if (text.back() != 'i') return {real_of(text), 0};
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not part of an exponent or the leading sign
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+") return {0, 1};
    if (body == "-") return {0, -1};
    return {0, real_of(body)};
  }
  std::string im = body.substr(split);
  if (im == "+" || im == "-") im += "1";
  return {real_of(body.substr(0, split)), real_of(im)};
}

namespace detail {

inline std::pair<Fraction, Fraction> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw ParseError("range must be lo:hi ('" + text + "')");
  Fraction lo = parse_decimal(text.substr(0, colon));
  Fraction hi = parse_decimal(text.substr(colon + 1));
  if (hi < lo) throw ParseError("range needs lo <= hi");
  return {lo, hi};
}

inline CFExpansion expansion_for(const TSpec& t) {
  if (t.cf) return *t.cf;
  return expand(t.value, 10000);
}

inline std::string trace_text(const SumTrace& trace) {
  std::ostringstream os;
  if (const auto* st = std::get_if<std::vector<OstrowskiStep>>(&trace.steps)) {
    os << "j_star,n,n_next,multiplier,lambda,factor,increment\n";
    for (const auto& s : *st) {
      os << s.j_star << ',' << s.n_before << ',' << s.n_after << ',' << s.multiplier << ',' << s.lambda.get_str()
         << ',' << to_string(s.factor) << ',' << to_string(s.increment) << '\n';
    }
  } else {
    os << "j,n_j,t_j,lambda_next,term\n";
    for (const auto& s : std::get<std::vector<BseqStep>>(trace.steps)) {
      os << s.j << ',' << s.n_j << ',' << to_string(s.t_j) << ',' << s.lambda_next.get_str() << ','
         << to_string(s.term) << '\n';
    }
  }
  os << "bound," << to_string(trace.bound) << "\nconditions_hold," << (trace.conditions_hold ? "true" : "false")
     << '\n';
  return os.str();
}

// S(n,t) by the Gauss-map recursion, reduced to 0 < t < 1 by periodicity.
inline SumResult bseq_any(std::uint64_t n, const Scalar& t) { return bseq_S(n, frac(t)); }

}  // namespace detail

struct CliOptions {
  std::string out_file;
  // sum
  std::uint64_t n = 0;
  std::string t;
  std::string method = "brute";
  bool trace = false;
  std::string format = "text";
  // plot
  std::string which = "h";
  std::string range;
  std::string step = "0.01";
  std::int64_t a = 0;
  std::uint64_t b = 1;
  // verify
  std::string suite = "all";
  std::string size = "quick";
  std::uint64_t seed = 42;
  // bench
  std::uint64_t n_max = 1000000;
  std::uint64_t points = 20;
  bool no_timing = false;
  // measure
  std::string alphas;
  std::uint64_t m = 2;
  std::uint64_t lo = 2;
  std::uint64_t hi = 5;
  std::uint64_t samples = 0;
  // dirichlet
  std::string s = "2";
  std::uint64_t K = 10000;
  std::string series = "beta";
  std::string precision = "auto";
};

inline int cmd_sum(const CliOptions& o, std::ostream& out) {
  const TSpec t = parse_tspec(o.t);
  if (o.method != "brute" && o.method != "ostrowski" && o.method != "bseq" && o.method != "all") {
    throw ParseError("unknown method " + o.method);
  }
  std::vector<std::pair<std::string, SumResult>> results;
  const bool irrational = !t.value.is_rational();
  if (o.method == "brute" || o.method == "all") results.push_back({"brute", {brute_S(o.n, t.value), {}}});
  if (o.method == "ostrowski" || (o.method == "all" && irrational)) {
    if (!irrational) throw NotIrrational("ostrowski needs irrational t");
    results.push_back({"ostrowski", ostrowski_S(o.n, t.value, detail::expansion_for(t))});
  }
  if (o.method == "bseq" || (o.method == "all" && irrational)) {
    if (!irrational) throw NotIrrational("bseq needs irrational t");
    results.push_back({"bseq", detail::bseq_any(o.n, t.value)});
  }
  for (const auto& r : results) {
    if (!(r.second.value == results.front().second.value)) {
      throw CrossCheckFailure(r.first + " gives " + to_string(r.second.value) + ", " + results.front().first +
                              " gives " + to_string(results.front().second.value));
    }
  }
  const std::string value = to_string(results.front().second.value);
  if (o.format == "json") {
    nlohmann::ordered_json j = {{"n", o.n}, {"t", o.t}, {"S", value}};
    nlohmann::ordered_json methods = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      nlohmann::ordered_json m = {{"method", r.first}, {"value", to_string(r.second.value)}};
      if (r.first != "brute") m["steps"] = r.second.trace.size();
      methods.push_back(m);
    }
    j["methods"] = methods;
    out << j.dump() << '\n';
  } else if (o.format == "text") {
    out << value << '\n';
  } else {
    throw ParseError("sum supports --format text or json");
  }
  if (o.trace) {
    for (const auto& r : results) {
      if (r.first == "brute") continue;
      out << "# " << r.first << '\n' << detail::trace_text(r.second.trace);
    }
  }
  return kExitPass;
}

inline int cmd_plot(const CliOptions& o, std::ostream& out) {
  const Fraction step = parse_decimal(o.step);
  if (step.sign() <= 0) throw ParseError("step must be positive");
  std::string range = o.range;
  if (range.empty()) range = o.which == "h" ? "-25:25" : "-8:8";
  const auto [lo, hi] = detail::parse_range(range);
  const auto grid = linear_grid(lo, hi, step);
  if (o.which == "h") {
    const Integer top = std::max(floor(abs(lo)), floor(abs(hi))) + 1;
    const auto tables = build_tables(to_u64(top));
    write_h_csv(out, grid, tables);
  } else if (o.which == "eta") {
    write_value_csv(out, grid, eta_values(grid));
  } else if (o.which == "rescaled") {
    if (o.b == 0) throw ParseError("b must be positive");
    const Fraction ab(Integer(static_cast<long>(o.a)), to_integer(o.b));
    if (to_integer(o.n) < ab.den() || o.n == 0) throw ParseError("rescaled needs 1 <= b <= n");
    write_value_csv(out, grid, rescaled_values(ab, o.n, grid));
  } else {
    throw ParseError("--which must be h, eta or rescaled");
  }
  return kExitPass;
}

inline int cmd_verify(const CliOptions& o, std::ostream& out) {
  SuiteSize size;
  if (o.size == "quick") {
    size = SuiteSize::quick;
  } else if (o.size == "full") {
    size = SuiteSize::full;
  } else {
    throw ParseError("--size must be quick or full");
  }
  const auto& names = suite_names();
  if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw ParseError("unknown suite " + o.suite);
  }
  const auto report = run_verify(o.suite, size, o.seed);
  out << to_json(report).dump(2) << '\n';
  return report.pass() ? kExitPass : kExitVerify;
}

/// Sampled n, geometric from 10 to n_max.
inline std::vector<std::uint64_t> bench_points(std::uint64_t n_max, std::uint64_t points) {
  std::vector<std::uint64_t> ns;
  if (n_max < 1 || points < 1) throw ParseError("bench needs n-max >= 1 and points >= 1");
  const long double lo = std::log(10.0L);
  const long double hi = std::log(static_cast<long double>(std::max<std::uint64_t>(n_max, 10)));
  for (std::uint64_t i = 0; i < points; ++i) {
    const long double f = points == 1 ? 1.0L : static_cast<long double>(i) / static_cast<long double>(points - 1);
    ns.push_back(std::min<std::uint64_t>(n_max, static_cast<std::uint64_t>(std::llround(std::exp(lo + f * (hi - lo))))));
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

inline int cmd_bench(const CliOptions& o, std::ostream& out) {
  const TSpec t = parse_tspec(o.t);
  if (t.value.is_rational()) throw NotIrrational("bench needs irrational t");
  const auto ns = bench_points(o.n_max, o.points);
  const OstrowskiSum ost(t.value, detail::expansion_for(t), o.n_max);
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<long double>(b - a).count();
  };
  out << "n,brute_ops,ostrowski_ops,bseq_ops";
  if (!o.no_timing) out << ",brute_seconds,ostrowski_seconds,bseq_seconds";
  out << '\n';
  bool depth_ok = true;
  for (std::uint64_t n : ns) {
    const auto t0 = clock::now();
    const Scalar brute = brute_S(n, t.value);
    const auto t1 = clock::now();
    const auto os = ost(n);
    const auto t2 = clock::now();
    const auto bs = detail::bseq_any(n, t.value);
    const auto t3 = clock::now();
    if (!(os.value == brute) || !(bs.value == brute)) {
      throw CrossCheckFailure("methods disagree at n = " + std::to_string(n));
    }
    if (n >= 3 && static_cast<long double>(os.trace.size()) > 4 * std::log(static_cast<long double>(n))) {
      depth_ok = false;
    }
    out << n << ',' << n << ',' << os.trace.size() << ',' << bs.trace.size();
    if (!o.no_timing) {
      out << ',' << fmt12(seconds(t0, t1)) << ',' << fmt12(seconds(t1, t2)) << ',' << fmt12(seconds(t2, t3));
    }
    out << '\n';
  }
  return depth_ok ? kExitPass : kExitVerify;
}

inline int cmd_farey(const CliOptions& o, std::ostream& out) {
  if (o.n < 1) throw ParseError("farey needs --n >= 1");
  if (o.t.empty()) {
    const auto f = farey(o.n);
    out << "index,fraction\n";
    for (std::size_t i = 0; i < f.fractions.size(); ++i) out << i << ',' << to_string(f.fractions[i]) << '\n';
    return kExitPass;
  }
  const TSpec t = parse_tspec(o.t);
  if (t.value.sign() < 0) throw ParseError("farey count needs t >= 0");
  const auto tables = build_tables(o.n);
  const auto r = farey_count(o.n, t.value, tables);
  nlohmann::ordered_json j = {{"n", o.n},
                              {"t", o.t},
                              {"count", r.count.get_str()},
                              {"count_open", r.count_open.get_str()},
                              {"identity_lhs", to_string(r.identity_lhs)},
                              {"identity_lhs_mid", to_string(r.identity_lhs_mid)},
                              {"identity_holds", Scalar(r.count) == r.identity_lhs}};
  out << j.dump() << '\n';
  return Scalar(r.count) == r.identity_lhs ? kExitPass : kExitCrossCheck;
}

inline int cmd_measure(const CliOptions& o, std::ostream& out) {
  if (o.samples > 0) {
    const auto r = verify_b0_mass(o.n, theta_loglog(o.n), o.samples, o.seed);
    out << to_json(r).dump() << '\n';
    return kExitPass;
  }
  auto row = [&](const std::vector<Integer>& alphas) {
    const auto s = measure_exact(alphas);
    std::string key;
    for (std::size_t i = 0; i < alphas.size(); ++i) key += (i ? " " : "") + alphas[i].get_str();
    out << key << ',' << to_string(s.exact_measure) << ',' << to_string(s.lower_bound) << ','
        << to_string(s.upper_bound) << '\n';
  };
  out << "alphas,exact,lower,upper\n";
  if (!o.alphas.empty()) {
    std::vector<Integer> alphas;
    std::stringstream ss(o.alphas);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const Fraction a = parse_fraction(item);
      if (!a.is_integer()) throw ParseError("alphas must be integers");
      alphas.push_back(a.num());
    }
    row(alphas);
    return kExitPass;
  }
  if (o.lo < 1 || o.hi < o.lo || o.m < 1) throw ParseError("measure table needs 1 <= lo <= hi and m >= 1");
  std::vector<Integer> alphas;
  auto rec = [&](auto&& self) -> void {
    if (!alphas.empty()) row(alphas);
    if (alphas.size() == o.m) return;
    for (std::uint64_t a = o.lo; a <= o.hi; ++a) {
      alphas.push_back(to_integer(a));
      self(self);
      alphas.pop_back();
    }
  };
  rec(rec);
  return kExitPass;
}

inline int cmd_dirichlet(const CliOptions& o, std::ostream& out) {
  const ComplexVal s = parse_complex(o.s);
  SeriesOptions opt;
  if (o.precision == "standard") {
    opt.precision = Precision::standard;
  } else if (o.precision == "extended") {
    opt.precision = Precision::extended;
  } else if (o.precision != "auto") {
    throw ParseError("--precision must be standard, extended or auto");
  }
  if (o.series == "zeta") {
    const ComplexVal z = zeta(s, opt.precision == Precision::extended);
    out << nlohmann::ordered_json{{"s", to_string(s)},
                                  {"value_re", static_cast<double>(z.real())},
                                  {"value_im", static_cast<double>(z.imag())},
                                  {"error_bound", static_cast<double>(zeta_error_bound(s))}}
               .dump()
        << '\n';
    return kExitPass;
  }
  const TSpec t = parse_tspec(o.t);
  if (!t.value.is_rational()) opt.cf = detail::expansion_for(t);
  if (o.series == "continuation") {
    if (t.value.is_rational()) throw NotIrrational("continuation evidence needs irrational t");
    out << to_json(continuation_evidence(t.value, *opt.cf, {s}, o.K)).dump() << '\n';
    return kExitPass;
  }
  SeriesEval e;
  if (o.series == "beta") {
    e = f_beta_partial(t.value, s, o.K, opt);
  } else if (o.series == "mellin") {
    e = f_beta_mellin(t.value, s, o.K, opt);
  } else if (o.series == "q") {
    e = f_q_partial(t.value, s, o.K, build_tables(std::max<std::uint64_t>(o.K, 1)), opt);
  } else {
    throw ParseError("--series must be beta, mellin, q, zeta or continuation");
  }
  out << to_json(e, o.t, s).dump() << '\n';
  return kExitPass;
}

/// Runs one command; args exclude the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sawtooth sums, Farey counts and the associated Dirichlet series", "remsum"};
  app.require_subcommand(1);
  CliOptions o;
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out_file, "write output to this file"); };

  auto* sum = app.add_subcommand("sum", "S(n,t) by one or all methods");
  sum->add_option("--n", o.n, "number of terms")->required();
  sum->add_option("--t", o.t, "rat:p/q, quad:(p+q*sqrt(d))/r or cf:l0;l1,(period)")->required();
  sum->add_option("--method", o.method, "brute, ostrowski, bseq or all");
  sum->add_flag("--trace", o.trace, "print the recursion steps");
  sum->add_option("--format", o.format, "text or json");
  add_out(sum);

  auto* plot = app.add_subcommand("plot", "CSV data for h, eta or the rescaled means");
  plot->add_option("--which", o.which, "h, eta or rescaled");
  plot->add_option("--range", o.range, "lo:hi")->allow_extra_args(false);
  plot->add_option("--step", o.step, "grid step");
  plot->add_option("--a", o.a, "numerator of a/b (rescaled)");
  plot->add_option("--b", o.b, "denominator of a/b (rescaled)");
  plot->add_option("--n", o.n, "n (rescaled)");
  add_out(plot);

  auto* verify = app.add_subcommand("verify", "run an invariant suite; JSON summary");
  verify->add_option("--suite", o.suite, "oracle, bounds, measure, farey, dirichlet or all");
  verify->add_option("--size", o.size, "quick or full");
  verify->add_option("--seed", o.seed, "seed for sampled checks");
  add_out(verify);

  auto* bench = app.add_subcommand("bench", "operation counts and times of the three methods");
  bench->add_option("--t", o.t, "irrational t-spec")->required();
  bench->add_option("--n-max", o.n_max, "largest n");
  bench->add_option("--points", o.points, "number of sampled n");
  bench->add_flag("--no-timing", o.no_timing, "omit the wall-time columns");
  add_out(bench);

  auto* farey_cmd = app.add_subcommand("farey", "F_n, or the counting identity at t");
  farey_cmd->add_option("--n", o.n, "order")->required();
  farey_cmd->add_option("--t", o.t, "t-spec; omit to list F_n");
  add_out(farey_cmd);

  auto* measure = app.add_subcommand("measure", "exact measures and product bounds");
  measure->add_option("--alphas", o.alphas, "comma separated alpha_j");
  measure->add_option("--m", o.m, "table: longest tuple");
  measure->add_option("--lo", o.lo, "table: smallest alpha");
  measure->add_option("--hi", o.hi, "table: largest alpha");
  measure->add_option("--samples", o.samples, "sample the mass bound on M_n instead");
  measure->add_option("--n", o.n, "n for --samples");
  measure->add_option("--seed", o.seed, "seed for --samples");
  add_out(measure);

  auto* dir = app.add_subcommand("dirichlet", "Dirichlet series partial sums with tail bounds");
  dir->add_option("--t", o.t, "t-spec");
  dir->add_option("--s", o.s, "complex s, e.g. 2+5i");
  dir->add_option("--K", o.K, "truncation");
  dir->add_option("--series", o.series, "beta, mellin, q, zeta or continuation");
  dir->add_option("--precision", o.precision, "standard, extended or auto");
  add_out(dir);

  // "--range -8:8" reads as a value, not as an option.
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--range" || args[i] == "--s") {
      args[i] += "=" + args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_file.empty()) {
    file.open(o.out_file, std::ios::binary);
    if (!file) {
      err << "cannot open " << o.out_file << '\n';
      return kExitUsage;
    }
    sink = &file;
  }
  try {
    if (sum->parsed()) return cmd_sum(o, *sink);
    if (plot->parsed()) return cmd_plot(o, *sink);
    if (verify->parsed()) return cmd_verify(o, *sink);
    if (bench->parsed()) return cmd_bench(o, *sink);
    if (farey_cmd->parsed()) return cmd_farey(o, *sink);
    if (measure->parsed()) return cmd_measure(o, *sink);
    if (dir->parsed()) return cmd_dirichlet(o, *sink);
  } catch (const CrossCheckFailure& e) {
    err << "cross-check failure: " << e.what() << '\n';
    return kExitCrossCheck;
  } catch (const BoundViolated& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerify;
  } catch (const NotMember& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerify;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace remsum
