#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubic/sampling.hpp"
#include "cubic/voronoi.hpp"

namespace cubic {

struct SweepOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double a_max = 10.0;
  double b_max = 10.0;
  /// Share of instances drawn on the a = 0 line, which a continuous draw never hits.
  double zero_a_fraction = 0.25;
  unsigned threads = 0;
};

/// Checks run on one canonical instance.
struct SweepInstance {
  CanonicalCubic cubic;
  VoronoiVerdict verdict;
  bool voronoi_property = true;   ///< some critical point owns a cell
  bool strong_property = true;    ///< the per-case cell assignments hold
  bool gauss_lucas = true;
  bool distance_gap = true;       ///< d1 > d2 and the a, b inequality margin is positive
  bool critical_identities = true;  ///< 3c^2 - 2wc - 1 = 0 and 3 c1 c2 = -1
};

struct SweepSummary {
  std::size_t samples = 0;
  std::array<std::size_t, 5> case_counts{};  ///< indexed by Theorem2Case
  std::size_t theorem1_violations = 0;
  std::size_t theorem2_violations = 0;
  std::size_t gauss_lucas_violations = 0;
  std::size_t distance_gap_violations = 0;
  std::size_t identity_violations = 0;

  std::size_t total_violations() const noexcept {
    return theorem1_violations + theorem2_violations + gauss_lucas_violations +
           distance_gap_violations + identity_violations;
  }
};

/// Draws w = a + ib with a in [0, a_max], b in (0, b_max], rejecting the
/// collinear line and the |b - sqrt(3)| < 1e-6 band on a = 0 (which contains
/// the repeated-critical-point locus w = i sqrt(3)).
CanonicalCubic sample_canonical(Rng& rng, const SweepOptions& opts);

SweepInstance check_instance(const CanonicalCubic& c);

/// Instance i is drawn from Rng(mix_seed(seed, i)), so results do not depend
/// on thread count.
std::vector<SweepInstance> run_sweep(const SweepOptions& opts);

SweepSummary summarize(const std::vector<SweepInstance>& instances);

}  // namespace cubic
