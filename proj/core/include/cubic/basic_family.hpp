#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubic/poly.hpp"

namespace cubic {

/// Rolling window of the cubic d_m recurrence at a fixed seed xi.
///
/// window = (d_{m-1}, d_{m-2}, d_{m-3}); the next available term is B_m.
/// The window is renormalized whenever its largest entry leaves
/// [1e-100, 1e100], by the power of two that brings it into [0.5, 1). The
/// recurrence is linear and homogeneous, so B_m only depends on ratios and is
/// unaffected; log_scale accumulates the natural log of every divisor so the
/// true values are window * exp(log_scale).
struct BasicSequenceState {
  Complex xi;
  Complex p0;  ///< p(xi)
  Complex p1;  ///< p'(xi)
  Complex p2;  ///< p''(xi)
  Complex p3;  ///< p'''(xi) / 3!, the leading coefficient (1 for monic p)
  std::array<Complex, 3> window;
  int m = 2;
  int rescale_count = 0;
  double log_scale = 0.0;

  /// State at m = 2: window (d_1, d_0, d_{-1}) = (p'(xi), 1, 0).
  static BasicSequenceState start(const Polynomial& p, Complex xi);

  /// B_m(xi) = xi - p(xi) d_{m-2} / d_{m-1}. Non-finite when d_{m-1} == 0.
  Complex term() const noexcept;
};

constexpr double kRescaleHigh = 1e100;
constexpr double kRescaleLow = 1e-100;

/// One step of d_m = p' d_{m-1} - (1/2) p p'' d_{m-2} + p^2 d_{m-3}
/// (the p^2 term carries the leading coefficient for non-monic p).
BasicSequenceState d_step_cubic(BasicSequenceState state);

/// D_m(z) from the full degree-n recurrence, unscaled. Oracle use only.
Complex general_D(const Polynomial& p, Complex z, int m);

enum class StopReason { kConverged, kCapReached, kNonFinite };

std::string to_string(StopReason reason);

struct SequenceTerm {
  int m;  ///< member index for basic sequences, iteration count for fixed-point runs
  Complex value;
};

struct ConvergenceReport {
  bool converged = false;
  Complex limit;
  int terms_used = 0;
  std::vector<SequenceTerm> history;
  StopReason stop_reason = StopReason::kCapReached;
};

/// Stepwise driver for the basic sequence {B_m(xi)}, m = 2, 3, ...
///
/// Each advance() moves exactly one index m. Terms with d_{m-1} == 0 (e.g.
/// B_2 at an exact critical point) are undefined and left out of the history;
/// the run ends with kNonFinite only if a term overflows or the whole window
/// vanishes.
class BasicSequence {
 public:
  BasicSequence(const Polynomial& p, Complex xi, double tol);

  /// Evaluates B_m for the next m. Returns false once the run has stopped
  /// (converged, capped, or non-finite).
  bool advance(int m_cap);

  bool stopped() const noexcept { return stopped_; }
  const ConvergenceReport& report() const noexcept { return report_; }
  const BasicSequenceState& state() const noexcept { return state_; }
  int m() const noexcept { return state_.m; }

 private:
  BasicSequenceState state_;
  double tol_;
  bool stopped_ = false;
  bool started_ = false;
  ConvergenceReport report_;
};

constexpr int kDefaultMCap = 500;

/// Streams B_2(xi), B_3(xi), ... until |B_{m+1} - B_m| < tol or m reaches m_cap.
ConvergenceReport basic_sequence(const Polynomial& p, Complex xi, double tol,
                                 int m_cap = kDefaultMCap);

/// Newton (m = 2) or Halley (m = 3) correction at z, i.e. z - B_m(z).
/// Non-finite when the denominator vanishes.
Complex member_correction(const Polynomial& p, int m, Complex z);

/// Fixed-point iteration z_{k+1} = B_m(z_k) for m in {2, 3}.
ConvergenceReport fixed_point_member(const Polynomial& p, int m, Complex z0, double tol,
                                     int iter_cap);

/// Distance to the nearest root over distance to the second nearest.
/// Throws kBoundary when those two distances tie to 1e-12 relative.
double rate_ratio(std::span<const Complex> roots, Complex w);

/// key=value record, one field per line; history keeps the last max_history terms.
std::string to_record(const ConvergenceReport& report, std::size_t max_history = 32);

}  // namespace cubic
