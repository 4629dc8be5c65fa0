#pragma once

#include <array>
#include <string>

#include "cubic/basic_family.hpp"
#include "cubic/poly.hpp"

namespace cubic {

enum class RootSource { kCriticalPoint1, kCriticalPoint2, kPureRadical };

std::string to_string(RootSource source);

struct SolveReport {
  std::array<Complex, 3> roots;  ///< sorted by (real, imag)
  std::array<double, 3> residuals;
  RootSource first_root_source = RootSource::kCriticalPoint1;
  int terms_used = 0;  ///< m reached by the lockstep basic sequences
  int polished_iters = 0;
  /// Both sequences converged at the same m; the smaller residual won.
  bool tie = false;
};

/// Thrown when neither interlaced sequence converges before m_cap.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(ConvergenceReport first, ConvergenceReport second);

  const ConvergenceReport& first() const noexcept { return first_; }
  const ConvergenceReport& second() const noexcept { return second_; }

 private:
  ConvergenceReport first_;
  ConvergenceReport second_;
};

struct PolishResult {
  Complex root;
  int iterations = 0;
  bool derivative_vanished = false;
};

/// Newton steps until |step| < 1e-14 (1 + |z|) or max_iters.
PolishResult polish(const Polynomial& p, Complex z0, int max_iters);

constexpr double kDefaultSolveTol = 1e-10;

/// Roots of a cubic from the basic sequences seeded at its critical points.
///
/// Both sequences advance in lockstep; the first whose successive terms agree
/// to `tol` yields a root, which is Newton-polished, deflated out, and the
/// quadratic quotient is solved in closed form. When p' has a double root
/// the cubic is a translate of z^3 - a0 and is solved by radicals.
SolveReport solve(const Polynomial& p, double tol = kDefaultSolveTol, int m_cap = kDefaultMCap);

/// JSON object {"roots":[{"re":..,"im":..}],"residuals":[..],"source":..,
/// "terms_used":n,"polished_iters":k}
std::string to_json(const SolveReport& report);

}  // namespace cubic
