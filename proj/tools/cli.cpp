#include "cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "cubic/basic_family.hpp"
#include "cubic/polynomiograph.hpp"
#include "cubic/sampling.hpp"
#include "cubic/solver.hpp"
#include "cubic/theorem_sweep.hpp"
#include "cubic/voronoi.hpp"
#include "json.hpp"

namespace cubic::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

Complex parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_re = 0, used_im = 0;
    const std::string re_text = text.substr(0, comma), im_text = text.substr(comma + 1);
    const double re = std::stod(re_text, &used_re);
    const double im = std::stod(im_text, &used_im);
    if (used_re != re_text.size() || used_im != im_text.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("bad ") + what + " '" + text + "' (expected RE,IM)");
  }
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_w = 0, used_h = 0;
    const std::string w_text = text.substr(0, x), h_text = text.substr(x + 1);
    const int w = std::stoi(w_text, &used_w);
    const int h = std::stoi(h_text, &used_h);
    if (used_w != w_text.size() || used_h != h_text.size() || w <= 0 || h <= 0) {
      throw std::invalid_argument(text);
    }
    return {w, h};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidInput, "bad size '" + text + "' (expected WxH)");
  }
}

Polynomial parse_cubic(const std::string& text) {
  Polynomial p = parse_polynomial(text);
  if (p.degree() != 3) {
    throw Error(ErrorCode::kInvalidInput,
                "expected a cubic (four coefficients, constant first), got degree " +
                    std::to_string(p.degree()));
  }
  return p;
}

/// Turns a key=value ConvergenceReport record into JSON.
ordered_json record_to_json(const std::string& record) {
  ordered_json j;
  std::istringstream in(record);
  std::string line;
  auto complex_json = [](const std::string& pair) {
    const auto comma = pair.find(',');
    return ordered_json{{"re", std::stod(pair.substr(0, comma))},
                        {"im", std::stod(pair.substr(comma + 1))}};
  };
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "converged") {
      j[key] = value == "true";
    } else if (key == "terms_used" || key == "history_size") {
      j[key] = std::stoi(value);
    } else if (key == "limit") {
      j[key] = complex_json(value);
    } else if (key == "history") {
      ordered_json terms = ordered_json::array();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ';')) {
        const auto colon = item.find(':');
        ordered_json t = complex_json(item.substr(colon + 1));
        terms.push_back({{"m", std::stoi(item.substr(0, colon))}, {"re", t["re"]}, {"im", t["im"]}});
      }
      j[key] = std::move(terms);
    } else {
      j[key] = value;
    }
  }
  return j;
}

struct SolveArgs {
  std::string coeffs;
  double tol = kDefaultSolveTol;
  int m_cap = kDefaultMCap;
};

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Polynomial p = parse_cubic(a.coeffs);
  try {
    out << to_json(solve(p, a.tol, a.m_cap)) << '\n';
    return kOk;
  } catch (const NoConvergenceError& e) {
    ordered_json j;
    j["error"] = "no-convergence";
    j["sequences"] = {record_to_json(to_record(e.first())), record_to_json(to_record(e.second()))};
    out << j.dump() << '\n';
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  }
}

struct VerifyArgs {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double a_max = 10.0;
  double b_max = 10.0;
  std::string w;
  unsigned threads = 0;
};

void print_violations(const SweepSummary& s, std::ostream& out) {
  out << fmt::format("{:<26}{:>10}\n", "theorem1_violations", s.theorem1_violations);
  out << fmt::format("{:<26}{:>10}\n", "theorem2_violations", s.theorem2_violations);
  out << fmt::format("{:<26}{:>10}\n", "gauss_lucas_violations", s.gauss_lucas_violations);
  out << fmt::format("{:<26}{:>10}\n", "distance_gap_violations", s.distance_gap_violations);
  out << fmt::format("{:<26}{:>10}\n", "identity_violations", s.identity_violations);
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  if (!a.w.empty()) {
    const Complex w = parse_pair(a.w, "w");
    const CanonicalCubic c = CanonicalCubic::from_w(w);
    const SweepInstance inst = check_instance(c);
    out << fmt::format("# verify w={:.17g},{:.17g}\n", c.w.real(), c.w.imag());
    out << to_record(inst.verdict) << '\n';
    const SweepSummary s = summarize({inst});
    print_violations(s, out);
    return s.total_violations() == 0 ? kOk : kNoConvergence;
  }

  SweepOptions opts;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.a_max = a.a_max;
  opts.b_max = a.b_max;
  opts.threads = a.threads;
  const SweepSummary s = summarize(run_sweep(opts));

  out << fmt::format("# verify seed={} samples={} amax={:g} bmax={:g}\n", a.seed, a.samples,
                     a.a_max, a.b_max);
  out << fmt::format("{:<26}{:>10}\n", "case", "count");
  for (int c = 0; c < 5; ++c) {
    out << fmt::format("{:<26}{:>10}\n", to_string(static_cast<Theorem2Case>(c)),
                       s.case_counts[static_cast<std::size_t>(c)]);
  }
  print_violations(s, out);
  return s.total_violations() == 0 ? kOk : kNoConvergence;
}

struct RenderArgs {
  std::string coeffs;
  std::string method = "newton";
  std::string center = "0,0";
  double half_width = 2.5;
  std::string size = "512x512";
  std::string output;
  double tol = 1e-8;
  int cap = 0;
  unsigned threads = 0;
};

int run_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  const Polynomial p = parse_cubic(a.coeffs);
  const auto method = parse_render_method(a.method);
  if (!method) throw Error(ErrorCode::kInvalidInput, "unknown method '" + a.method + "'");
  RenderConfig cfg;
  cfg.method = *method;
  cfg.center = parse_pair(a.center, "center");
  cfg.half_width = a.half_width;
  std::tie(cfg.pixels_x, cfg.pixels_y) = parse_size(a.size);
  cfg.tol = a.tol;
  cfg.cap = a.cap > 0 ? a.cap : default_cap(cfg.method);

  std::ofstream file(a.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << a.output << "' for writing\n";
    return kInputError;
  }
  const Polynomiograph g = render(p, cfg, a.threads);
  const auto bytes = encode_image(g);
  file.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!file) {
    err << "error: failed writing '" << a.output << "'\n";
    return kInputError;
  }
  out << fmt::format("method={} size={}x{} cap={} divergence_fraction={:.6f} fnv1a64={:016x}\n",
                     to_string(cfg.method), cfg.pixels_x, cfg.pixels_y, cfg.cap,
                     measure_divergence_fraction(g), fnv1a64(bytes));
  return kOk;
}

struct BenchArgs {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::string poly;
  unsigned threads = 0;
};

/// Largest distance between matched roots, minimized over the six pairings.
double match_error(std::array<Complex, 3> found, const std::array<Complex, 3>& reference) {
  std::sort(found.begin(), found.end(), [](Complex x, Complex y) {
    return std::pair(x.real(), x.imag()) < std::pair(y.real(), y.imag());
  });
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(found[k] - reference[k]));
    best = std::min(best, worst);
  } while (std::next_permutation(found.begin(), found.end(), [](Complex x, Complex y) {
    return std::pair(x.real(), x.imag()) < std::pair(y.real(), y.imag());
  }));
  return best;
}

struct MethodRow {
  std::string name;
  std::vector<double> errors;   ///< NaN marks a failure
  std::vector<double> work;     ///< terms or iterations
  double seconds = 0.0;
};

void print_rows(const std::vector<MethodRow>& rows, std::ostream& out, std::ostream& err) {
  out << fmt::format("{:<24}{:>9}{:>10}{:>14}{:>14}{:>12}\n", "method", "samples", "failures",
                     "mean_error", "max_error", "mean_work");
  for (const MethodRow& r : rows) {
    std::size_t failures = 0;
    double sum = 0.0, worst = 0.0, work = 0.0;
    for (std::size_t i = 0; i < r.errors.size(); ++i) {
      work += r.work[i];
      if (std::isnan(r.errors[i])) {
        ++failures;
        continue;
      }
      sum += r.errors[i];
      worst = std::max(worst, r.errors[i]);
    }
    const std::size_t ok = r.errors.size() - failures;
    out << fmt::format("{:<24}{:>9}{:>10}{:>14.3e}{:>14.3e}{:>12.2f}\n", r.name, r.errors.size(),
                       failures, ok ? sum / ok : 0.0, worst,
                       r.errors.empty() ? 0.0 : work / r.errors.size());
    err << fmt::format("timing {:<24} {:.6f} s\n", r.name, r.seconds);
  }
}

template <class Fn>
MethodRow timed_row(std::string name, std::size_t n, unsigned threads, Fn&& fn) {
  MethodRow row{std::move(name), std::vector<double>(n), std::vector<double>(n), 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  parallel_for(n, threads, [&](std::size_t i) {
    auto [e, w] = fn(i);
    row.errors[i] = e;
    row.work[i] = w;
  });
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const std::optional<Polynomial> fixed =
      a.poly.empty() ? std::nullopt : std::optional<Polynomial>(parse_cubic(a.poly));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Case {
    Polynomial poly;
    std::array<Complex, 3> reference;
  };
  std::vector<std::optional<Case>> cases(a.samples);
  parallel_for(a.samples, a.threads, [&](std::size_t i) {
    if (fixed) {
      auto ref = cardano_oracle(*fixed);
      for (Complex& r : ref) r = polish(*fixed, r, 3).root;
      cases[i] = Case{*fixed, ref};
    } else {
      Rng rng(mix_seed(a.seed, i));
      RandomCubic rc = random_cubic(rng);
      cases[i] = Case{rc.poly, rc.roots};
    }
  });

  out << fmt::format("# bench seed={} samples={} polynomial={}\n", a.seed, a.samples,
                     fixed ? format_polynomial(*fixed) : std::string("random"));

  std::vector<MethodRow> rows;
  rows.push_back(timed_row("basic-sequence", a.samples, a.threads, [&](std::size_t i) {
    const Case& c = *cases[i];
    try {
      const SolveReport r = solve(c.poly);
      return std::pair(match_error(r.roots, c.reference), static_cast<double>(r.terms_used));
    } catch (const NoConvergenceError&) {
      return std::pair(nan, static_cast<double>(kDefaultMCap));
    }
  }));
  rows.push_back(timed_row("cardano", a.samples, a.threads, [&](std::size_t i) {
    const Case& c = *cases[i];
    return std::pair(match_error(cardano_oracle(c.poly), c.reference), 0.0);
  }));
  rows.push_back(timed_row("newton-random-seed", a.samples, a.threads, [&](std::size_t i) {
    const Case& c = *cases[i];
    double extent = 0.0;
    for (const Complex& r : c.reference) extent = std::max(extent, std::abs(r));
    Rng rng(mix_seed(a.seed ^ 0x6e6577746f6eULL, i));
    const Complex z0 = rng.in_box(0.0, 2.0 * extent + 1.0);
    const ConvergenceReport r = fixed_point_member(c.poly, 2, z0, 1e-12, 100);
    if (!r.converged) return std::pair(nan, static_cast<double>(r.terms_used));
    double e = std::numeric_limits<double>::infinity();
    for (const Complex& root : c.reference) e = std::min(e, std::abs(r.limit - root));
    return std::pair(e, static_cast<double>(r.terms_used));
  }));

  if (!fixed) {
    // z^3 - 2z + 2 with small coefficient perturbations keeps its attracting {0, 1} cycle.
    rows.push_back(timed_row("newton-z3-2z+2-family", a.samples, a.threads, [&](std::size_t i) {
      Rng rng(mix_seed(a.seed ^ 0x66616d696c79ULL, i));
      const Polynomial p{Complex{2.0 + rng.uniform(-1e-3, 1e-3)},
                         Complex{-2.0 + rng.uniform(-1e-3, 1e-3)}, Complex{0.0}, Complex{1.0}};
      const Complex z0 = rng.in_box(0.0, 2.5);
      const ConvergenceReport r = fixed_point_member(p, 2, z0, 1e-12, 100);
      if (!r.converged) return std::pair(nan, static_cast<double>(r.terms_used));
      return std::pair(std::abs(p(r.limit)), static_cast<double>(r.terms_used));
    }));
  }
  print_rows(rows, out, err);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cubic equations via the basic sequence at the critical points"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a cubic and print a JSON report");
  solve_cmd->add_option("coeffs", solve_args.coeffs, "Coefficients, constant first: a0,a1,a2,a3")
      ->required();
  solve_cmd->add_option("--tol", solve_args.tol, "Successive-difference tolerance")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--mcap", solve_args.m_cap, "Largest m of the basic sequence")
      ->check(CLI::Range(3, 1 << 24));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Randomized check of the Voronoi theorems");
  verify_cmd->add_option("--samples", verify_args.samples)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_args.seed);
  verify_cmd->add_option("--amax", verify_args.a_max)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--bmax", verify_args.b_max)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--w", verify_args.w, "Check the single canonical instance w = RE,IM");
  verify_cmd->add_option("--threads", verify_args.threads, "Worker threads (0 = all cores)");

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "Render a polynomiograph as binary PPM");
  render_cmd->add_option("coeffs", render_args.coeffs)->required();
  render_cmd->add_option("--method", render_args.method, "newton | halley | basic");
  render_cmd->add_option("--center", render_args.center, "RE,IM");
  render_cmd->add_option("--half-width", render_args.half_width)->check(CLI::PositiveNumber);
  render_cmd->add_option("--size", render_args.size, "WxH");
  render_cmd->add_option("-o,--output", render_args.output)->required();
  render_cmd->add_option("--tol", render_args.tol)->check(CLI::PositiveNumber);
  render_cmd->add_option("--cap", render_args.cap, "Iteration cap (0 = method default)")
      ->check(CLI::NonNegativeNumber);
  render_cmd->add_option("--threads", render_args.threads);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Accuracy and timing against the Cardano oracle");
  bench_cmd->add_option("--samples", bench_args.samples)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_args.seed);
  bench_cmd->add_option("--poly", bench_args.poly, "Use this cubic for every sample");
  bench_cmd->add_option("--threads", bench_args.threads);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args, out, err);
    if (*verify_cmd) return run_verify(verify_args, out);
    if (*render_cmd) return run_render(render_args, out, err);
    if (*bench_cmd) return run_bench(bench_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kNoConvergence ? kNoConvergence : kInputError;
  }
  return kInputError;
}

}  // namespace cubic::cli
