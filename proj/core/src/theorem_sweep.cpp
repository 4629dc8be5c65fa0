#include "cubic/theorem_sweep.hpp"

#include <cmath>

namespace cubic {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt3Exclusion = 1e-6;

}  // namespace

CanonicalCubic sample_canonical(Rng& rng, const SweepOptions& opts) {
  while (true) {
    const bool on_axis = rng.uniform() < opts.zero_a_fraction;
    const double a = on_axis ? 0.0 : rng.uniform(0.0, opts.a_max);
    const double b = opts.b_max * (1.0 - rng.uniform());  // (0, b_max]
    if (b < kCollinearTolerance) continue;
    if (a == 0.0 && std::abs(b - kSqrt3) < kSqrt3Exclusion) continue;
    return CanonicalCubic::from_w({a, b});
  }
}

SweepInstance check_instance(const CanonicalCubic& c) {
  SweepInstance s{c, classify(c)};
  const VoronoiVerdict& v = s.verdict;
  if (v.theorem2_case == Theorem2Case::kExcludedCollinear) return s;

  s.voronoi_property = v.c1_cell.has_value() || v.c2_cell.has_value();

  switch (v.theorem2_case) {
    case Theorem2Case::kAPositive:
      s.strong_property = v.c2_cell == 0;
      break;
    case Theorem2Case::kAZeroBSmall:
      s.strong_property = v.c2_cell == 0 && v.c1_cell == 1;
      break;
    case Theorem2Case::kAZeroBLarge:
      s.strong_property = v.c1_cell == 2;
      break;
    default:
      break;
  }

  s.gauss_lucas = gauss_lucas_check(c.polynomial());

  if (v.theorem2_case != Theorem2Case::kExcludedBSqrt3) {
    const DistanceGap gap = theorem2_distance_gap(c);
    s.distance_gap = gap.d1 > gap.d2 && theorem2_inequality_margin(c) > 0.0;
  }

  for (const Complex& cp : {c.c1, c.c2}) {
    const double size = 3.0 * std::norm(cp) + 2.0 * std::abs(c.w) * std::abs(cp) + 1.0;
    if (std::abs(3.0 * cp * cp - 2.0 * c.w * cp - 1.0) > 1e-12 * size) {
      s.critical_identities = false;
    }
  }
  if (std::abs(3.0 * c.c1 * c.c2 + 1.0) > 1e-12) s.critical_identities = false;
  return s;
}

std::vector<SweepInstance> run_sweep(const SweepOptions& opts) {
  std::vector<SweepInstance> out(opts.samples);
  parallel_for(opts.samples, opts.threads, [&](std::size_t i) {
    Rng rng(mix_seed(opts.seed, i));
    out[i] = check_instance(sample_canonical(rng, opts));
  });
  return out;
}

SweepSummary summarize(const std::vector<SweepInstance>& instances) {
  SweepSummary s;
  s.samples = instances.size();
  for (const SweepInstance& inst : instances) {
    ++s.case_counts[static_cast<std::size_t>(inst.verdict.theorem2_case)];
    s.theorem1_violations += !inst.voronoi_property;
    s.theorem2_violations += !inst.strong_property;
    s.gauss_lucas_violations += !inst.gauss_lucas;
    s.distance_gap_violations += !inst.distance_gap;
    s.identity_violations += !inst.critical_identities;
  }
  return s;
}

}  // namespace cubic
