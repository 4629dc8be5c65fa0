#include "cubic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace cubic {

namespace {

constexpr int kFirstRootPolish = 5;
constexpr int kQuotientRootPolish = 3;

std::string describe(const ConvergenceReport& r) {
  return to_string(r.stop_reason) + " at m=" + std::to_string(r.terms_used);
}

}  // namespace

std::string to_string(RootSource source) {
  switch (source) {
    case RootSource::kCriticalPoint1:
      return "critical-point-1";
    case RootSource::kCriticalPoint2:
      return "critical-point-2";
    case RootSource::kPureRadical:
      return "pure-radical";
  }
  return "unknown";
}

NoConvergenceError::NoConvergenceError(ConvergenceReport first, ConvergenceReport second)
    : Error(ErrorCode::kNoConvergence,
            "neither basic sequence converged (c1: " + describe(first) + ", c2: " +
                describe(second) + ")"),
      first_(std::move(first)),
      second_(std::move(second)) {}

PolishResult polish(const Polynomial& p, Complex z0, int max_iters) {
  PolishResult out{z0, 0, false};
  Complex z = z0;
  for (int i = 0; i < max_iters; ++i) {
    const auto d = derivatives_up_to(p, z, 1);
    if (d[1] == Complex{}) {
      out.derivative_vanished = true;
      break;
    }
    const Complex step = d[0] / d[1];
    z -= step;
    ++out.iterations;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) break;
  }
  out.root = z;
  return out;
}

SolveReport solve(const Polynomial& p, double tol, int m_cap) {
  if (p.degree() != 3) {
    throw Error(ErrorCode::kInvalidInput,
                "solve expects a cubic, got degree " + std::to_string(p.degree()));
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  if (m_cap < 3) throw Error(ErrorCode::kInvalidInput, "m_cap must be at least 3");

  const Polynomial monic = p.monic();
  const CriticalPoints cp = critical_points(monic);
  SolveReport report;
  std::array<Complex, 3> roots;

  if (cp.repeated) {
    // p is a translate of z^3 - a0: shift by -a2/3 and take cube roots.
    const Complex shift = -monic[2] / 3.0;
    const Complex constant = monic(shift);
    const Complex base = constant == Complex{}
                             ? Complex{}
                             : std::polar(std::cbrt(std::abs(constant)),
                                          (std::arg(-constant)) / 3.0);
    report.first_root_source = RootSource::kPureRadical;
    for (int k = 0; k < 3; ++k) {
      const Complex y = base * std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
      const PolishResult polished = polish(p, y + shift, kQuotientRootPolish);
      roots[k] = polished.root;
      report.polished_iters += polished.iterations;
    }
  } else {
    BasicSequence first(monic, cp.c1, tol);
    BasicSequence second(monic, cp.c2, tol);
    while (true) {
      first.advance(m_cap);
      second.advance(m_cap);
      const bool ok1 = first.report().converged, ok2 = second.report().converged;
      if (ok1 || ok2) {
        bool pick_first = ok1;
        if (ok1 && ok2) {
          report.tie = true;
          pick_first = std::abs(p(first.report().limit)) <= std::abs(p(second.report().limit));
        }
        const BasicSequence& winner = pick_first ? first : second;
        report.first_root_source =
            pick_first ? RootSource::kCriticalPoint1 : RootSource::kCriticalPoint2;
        report.terms_used = winner.report().terms_used;
        roots[0] = winner.report().limit;
        break;
      }
      if (first.stopped() && second.stopped()) {
        throw NoConvergenceError(first.report(), second.report());
      }
    }

    const PolishResult head = polish(p, roots[0], kFirstRootPolish);
    roots[0] = head.root;
    report.polished_iters += head.iterations;

    const Deflation deflated = deflate(monic, roots[0]);
    const QuadraticRoots rest = solve_quadratic(deflated.quotient);
    for (int k = 1; k < 3; ++k) {
      const PolishResult polished = polish(p, k == 1 ? rest.r1 : rest.r2, kQuotientRootPolish);
      roots[k] = polished.root;
      report.polished_iters += polished.iterations;
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (roots[i].real() != roots[j].real()) return roots[i].real() < roots[j].real();
    return roots[i].imag() < roots[j].imag();
  });
  for (int k = 0; k < 3; ++k) {
    report.roots[k] = roots[order[k]];
    report.residuals[k] = std::abs(p(report.roots[k]));
  }
  return report;
}

std::string to_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["roots"] = nlohmann::ordered_json::array();
  for (const Complex& r : report.roots) {
    j["roots"].push_back({{"re", r.real()}, {"im", r.imag()}});
  }
  j["residuals"] = report.residuals;
  j["source"] = to_string(report.first_root_source);
  j["terms_used"] = report.terms_used;
  j["polished_iters"] = report.polished_iters;
  return j.dump();
}

}  // namespace cubic
