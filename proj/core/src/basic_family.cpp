#include "cubic/basic_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace cubic {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
  return buf;
}

}  // namespace

BasicSequenceState BasicSequenceState::start(const Polynomial& p, Complex xi) {
  if (p.degree() != 3) {
    throw Error(ErrorCode::kInvalidInput, "basic sequence requires a cubic");
  }
  const auto d = derivatives_up_to(p, xi, 2);
  BasicSequenceState s;
  s.xi = xi;
  s.p0 = d[0];
  s.p1 = d[1];
  s.p2 = d[2];
  s.p3 = p.leading();
  s.window = {s.p1, Complex{1.0}, Complex{}};
  s.m = 2;
  return s;
}

Complex BasicSequenceState::term() const noexcept {
  return xi - p0 * (window[1] / window[0]);
}

BasicSequenceState d_step_cubic(BasicSequenceState s) {
  const auto& w = s.window;
  const Complex next = s.p1 * w[0] - 0.5 * s.p0 * s.p2 * w[1] + s.p0 * s.p0 * s.p3 * w[2];
  s.window = {next, w[0], w[1]};
  ++s.m;

  double peak = 0.0;
  for (const Complex& v : s.window) peak = std::max(peak, std::abs(v));
  if (peak > kRescaleHigh || (peak > 0.0 && peak < kRescaleLow)) {
    // Power-of-two divisor: the rescale itself is exact.
    int exponent = 0;
    std::frexp(peak, &exponent);
    for (Complex& v : s.window) v = {std::ldexp(v.real(), -exponent), std::ldexp(v.imag(), -exponent)};
    s.log_scale += exponent * std::numbers::ln2;
    ++s.rescale_count;
  }
  return s;
}

Complex general_D(const Polynomial& p, Complex z, int m) {
  if (m < 0) return {};
  if (m == 0) return 1.0;
  const int n = p.degree();
  const auto derivs = derivatives_up_to(p, z, n);
  // coeff[i] = (-1)^(i-1) p(z)^(i-1) p^(i)(z) / i!
  std::vector<Complex> coeff(static_cast<std::size_t>(n) + 1);
  Complex power = 1.0;
  double factorial = 1.0;
  for (int i = 1; i <= n; ++i) {
    factorial *= i;
    coeff[i] = (i % 2 == 1 ? 1.0 : -1.0) * power * derivs[i] / factorial;
    power *= derivs[0];
  }
  std::vector<Complex> D(static_cast<std::size_t>(m) + 1);
  D[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    Complex acc;
    for (int i = 1; i <= n && i <= k; ++i) acc += coeff[i] * D[k - i];
    D[k] = acc;
  }
  return D[m];
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged:
      return "successive-diff-below-tol";
    case StopReason::kCapReached:
      return "m-cap-reached";
    case StopReason::kNonFinite:
      return "non-finite-ratio";
  }
  return "unknown";
}

BasicSequence::BasicSequence(const Polynomial& p, Complex xi, double tol)
    : state_(BasicSequenceState::start(p, xi)), tol_(tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
}

bool BasicSequence::advance(int m_cap) {
  if (stopped_) return false;
  if (started_) {
    if (state_.m >= m_cap) {
      stopped_ = true;
      report_.stop_reason = StopReason::kCapReached;
      report_.terms_used = state_.m;
      return false;
    }
    state_ = d_step_cubic(state_);
  }
  started_ = true;
  report_.terms_used = state_.m;

  const auto& w = state_.window;
  if (w[0] == Complex{} && w[1] == Complex{} && w[2] == Complex{}) {
    stopped_ = true;
    report_.stop_reason = StopReason::kNonFinite;
    return false;
  }
  if (w[0] == Complex{}) return true;  // B_m undefined at this m

  const Complex b = state_.term();
  if (!is_finite(b)) {
    stopped_ = true;
    report_.stop_reason = StopReason::kNonFinite;
    return false;
  }
  const bool has_prev = !report_.history.empty();
  const Complex prev = has_prev ? report_.history.back().value : Complex{};
  report_.history.push_back({state_.m, b});
  report_.limit = b;
  if (has_prev && std::abs(b - prev) < tol_) {
    stopped_ = true;
    report_.converged = true;
    report_.stop_reason = StopReason::kConverged;
    return false;
  }
  return true;
}

ConvergenceReport basic_sequence(const Polynomial& p, Complex xi, double tol, int m_cap) {
  if (m_cap < 3) throw Error(ErrorCode::kInvalidInput, "m_cap must be at least 3");
  BasicSequence seq(p, xi, tol);
  while (seq.advance(m_cap)) {
  }
  return seq.report();
}

Complex member_correction(const Polynomial& p, int m, Complex z) {
  if (m == 2) {
    const auto d = derivatives_up_to(p, z, 1);
    return d[0] / d[1];
  }
  if (m == 3) {
    const auto d = derivatives_up_to(p, z, std::min(2, p.degree()));
    const Complex second = d.size() > 2 ? d[2] : Complex{};
    return 2.0 * d[0] * d[1] / (2.0 * d[1] * d[1] - d[0] * second);
  }
  throw Error(ErrorCode::kInvalidInput, "closed-form members exist only for m = 2, 3");
}

ConvergenceReport fixed_point_member(const Polynomial& p, int m, Complex z0, double tol,
                                     int iter_cap) {
  if (m != 2 && m != 3) {
    throw Error(ErrorCode::kInvalidInput, "closed-form members exist only for m = 2, 3");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  ConvergenceReport report;
  report.history.push_back({0, z0});
  report.limit = z0;
  if (p(z0) == Complex{}) {
    report.converged = true;
    report.stop_reason = StopReason::kConverged;
    return report;
  }
  Complex z = z0;
  for (int k = 1; k <= iter_cap; ++k) {
    const Complex delta = member_correction(p, m, z);
    if (!is_finite(delta)) {
      report.stop_reason = StopReason::kNonFinite;
      return report;
    }
    z -= delta;
    report.history.push_back({k, z});
    report.limit = z;
    report.terms_used = k;
    if (std::abs(delta) < tol) {
      report.converged = true;
      report.stop_reason = StopReason::kConverged;
      return report;
    }
  }
  report.stop_reason = StopReason::kCapReached;
  return report;
}

double rate_ratio(std::span<const Complex> roots, Complex w) {
  if (roots.size() < 2) throw Error(ErrorCode::kInvalidInput, "rate_ratio needs two roots");
  std::vector<double> dist;
  dist.reserve(roots.size());
  for (const Complex& r : roots) dist.push_back(std::abs(w - r));
  std::sort(dist.begin(), dist.end());
  if (dist[0] == 0.0) return 0.0;
  if (dist[1] - dist[0] < 1e-12 * dist[1]) {
    throw Error(ErrorCode::kBoundary, "seed is equidistant from its two nearest roots");
  }
  return dist[0] / dist[1];
}

std::string to_record(const ConvergenceReport& report, std::size_t max_history) {
  std::string out;
  out += "converged=" + std::string(report.converged ? "true" : "false") + "\n";
  out += "stop_reason=" + to_string(report.stop_reason) + "\n";
  out += "terms_used=" + std::to_string(report.terms_used) + "\n";
  out += "limit=" + format_complex(report.limit) + "\n";
  out += "history_size=" + std::to_string(report.history.size()) + "\n";
  out += "history=";
  const std::size_t skip =
      report.history.size() > max_history ? report.history.size() - max_history : 0;
  for (std::size_t i = skip; i < report.history.size(); ++i) {
    if (i != skip) out += ';';
    out += std::to_string(report.history[i].m) + ":" + format_complex(report.history[i].value);
  }
  out += "\n";
  return out;
}

}  // namespace cubic
