#include <gtest/gtest.h>

#include <cmath>

#include "cubic/theorem_sweep.hpp"
#include "cubic/voronoi.hpp"

using namespace cubic;

namespace {

const std::array<Complex, 3> kCanon2i{-1.0, 1.0, Complex{0, 2}};
constexpr double kSqrt3 = 1.7320508075688772;

// Critical points of (z^2 - 1)(z - w) from the library-free closed form, upper-half branch first.
std::array<Complex, 2> critical_by_hand(Complex w) {
  const Complex s = std::sqrt(w * w + 3.0);
  return {(w + s) / 3.0, (w - s) / 3.0};
}

}  // namespace

TEST(NearestRoot, Examples) {
  EXPECT_EQ(nearest_root(Complex{0, 1}, kCanon2i), 2);
  EXPECT_EQ(nearest_root(0.0, kCanon2i), std::nullopt);
  const std::array<Complex, 3> paper{Complex{-1.7692923542386314, 0},
                                     Complex{0.8846461771193157, 0.5897428050222054},
                                     Complex{0.8846461771193157, -0.5897428050222054}};
  EXPECT_EQ(nearest_root(-std::sqrt(2.0 / 3.0), paper), 0);
  EXPECT_EQ(nearest_root(0.0, paper), std::nullopt);  // conjugate roots are equidistant from the real axis
  EXPECT_EQ(nearest_root(paper[2], paper), 2);
}

TEST(Canonicalize, AlreadyCanonical) {
  const CanonicalCubic c = canonicalize(kCanon2i, {0, 1});
  EXPECT_EQ(c.w, Complex(0, 2));
  EXPECT_EQ(c.transform.scale, Complex(1.0));
  EXPECT_EQ(c.transform.shift, Complex(0.0));
  EXPECT_FALSE(c.transform.reflect);
  EXPECT_FALSE(c.collinear);
}

TEST(Canonicalize, ShiftOnly) {
  const std::array<Complex, 3> roots{0.0, 2.0, Complex{2, 2}};
  const CanonicalCubic c = canonicalize(roots, {0, 1});
  EXPECT_LT(std::abs(c.w - Complex(1, 2)), 1e-15);
  EXPECT_DOUBLE_EQ(c.a, 1.0);
  EXPECT_DOUBLE_EQ(c.b, 2.0);
  EXPECT_LT(std::abs(c.transform.shift - Complex(-1.0)), 1e-15);
  EXPECT_LT(std::abs(c.transform.scale - Complex(1.0)), 1e-15);
}

TEST(Canonicalize, NegativeRealPartIsReflected) {
  const std::array<Complex, 3> roots{-1.0, 1.0, Complex{-0.5, 1}};
  const CanonicalCubic c = canonicalize(roots, {0, 1});
  EXPECT_LT(std::abs(c.w - Complex(0.5, 1)), 1e-15);
  // -1 and 1 swap places under z -> -conj(z).
  EXPECT_EQ(c.original_index[0], 1);
  EXPECT_EQ(c.original_index[1], 0);
  EXPECT_EQ(c.original_index[2], 2);
}

TEST(Canonicalize, TransformMapsEveryRootAndCriticalPoint) {
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    std::array<Complex, 3> roots;
    for (Complex& r : roots) r = rng.in_box(Complex{rng.uniform(-5, 5), rng.uniform(-5, 5)}, 3.0);
    if (min_separation(roots) < 1e-3) continue;
    const CanonicalCubic c = canonicalize(roots, farthest_pair(roots));
    if (c.collinear) continue;
    ASSERT_GE(c.a, 0.0);
    ASSERT_GT(c.b, 0.0);
    const auto canon = c.roots();
    for (int k = 0; k < 3; ++k) {
      ASSERT_LT(std::abs(c.transform.apply(roots[c.original_index[k]]) - canon[k]), 1e-10) << i;
      ASSERT_LT(std::abs(c.transform.invert(canon[k]) - roots[c.original_index[k]]),
                1e-10 * (1.0 + std::abs(roots[c.original_index[k]])))
          << i;
    }
    // Critical points of the original cubic map onto the canonical ones.
    const CriticalPoints cp = critical_points(Polynomial::from_roots(roots));
    std::array<Complex, 2> mapped{c.transform.apply(cp.c1), c.transform.apply(cp.c2)};
    const double direct = std::max(std::abs(mapped[0] - c.c1), std::abs(mapped[1] - c.c2));
    const double swapped = std::max(std::abs(mapped[0] - c.c2), std::abs(mapped[1] - c.c1));
    ASSERT_LT(std::min(direct, swapped), 1e-10) << i;
  }
}

TEST(Canonicalize, CollinearIsFlagged) {
  const std::array<Complex, 3> roots{-1.0, 0.5, 1.0};
  EXPECT_TRUE(canonicalize(roots, {0, 2}).collinear);
  EXPECT_EQ(classify(canonicalize(roots, {0, 2})).theorem2_case, Theorem2Case::kExcludedCollinear);
}

TEST(CanonicalCubic, CriticalPointsMatchClosedForm) {
  for (Complex w : {Complex{0, 2}, Complex{0, 1}, Complex{1, 1}, Complex{3, 0.2}, Complex{0.01, 9}}) {
    const CanonicalCubic c = CanonicalCubic::from_w(w);
    const auto expected = critical_by_hand(w);
    EXPECT_LT(std::abs(c.c1 - expected[0]), 1e-14) << w;
    EXPECT_LT(std::abs(c.c2 - expected[1]), 1e-14) << w;
    EXPECT_LT(std::abs(3.0 * c.c1 * c.c2 + 1.0), 1e-12);
  }
}

TEST(CanonicalCubic, ImaginaryWCriticalPointsFollowTheProofFormula) {
  // For w = ib, b > sqrt(3): c1 = i (b + sqrt(b^2 - 3)) / 3.
  for (double b : {2.0, 3.0, 10.0}) {
    const CanonicalCubic c = CanonicalCubic::from_w({0, b});
    EXPECT_LT(std::abs(c.c1 - Complex{0, (b + std::sqrt(b * b - 3)) / 3}), 1e-14);
  }
  EXPECT_LT(std::abs(CanonicalCubic::from_w({0, 2}).c1 - Complex(0, 1)), 1e-15);
}

TEST(Classify, Examples) {
  const VoronoiVerdict large = classify(CanonicalCubic::from_w({0, 2}));
  EXPECT_EQ(large.theorem2_case, Theorem2Case::kAZeroBLarge);
  EXPECT_EQ(large.c1_cell, 2);
  // Direct distances: |i - 2i| = 1 < sqrt(2) = |i - 1|.
  EXPECT_EQ(to_record(large), "case=a-zero-b-large c1->w c2->boundary strong=false");

  const VoronoiVerdict small = classify(CanonicalCubic::from_w({0, 1}));
  EXPECT_EQ(small.theorem2_case, Theorem2Case::kAZeroBSmall);
  EXPECT_EQ(small.c2_cell, 0);
  EXPECT_EQ(small.c1_cell, 1);
  EXPECT_TRUE(small.strong);

  const VoronoiVerdict pos = classify(CanonicalCubic::from_w({1, 1}));
  EXPECT_EQ(pos.theorem2_case, Theorem2Case::kAPositive);
  EXPECT_EQ(pos.c2_cell, 0);

  EXPECT_EQ(classify(CanonicalCubic::from_w({0, kSqrt3})).theorem2_case,
            Theorem2Case::kExcludedBSqrt3);
  EXPECT_EQ(classify(CanonicalCubic::from_w({2, kSqrt3 + 1e-11})).theorem2_case,
            Theorem2Case::kExcludedBSqrt3);
}

TEST(Classify, SmallBCaseMirrorsUnderConjugation) {
  // Reflecting w = ib to -ib swaps c1 and c2 to their conjugates; cells are unchanged.
  const CanonicalCubic up = CanonicalCubic::from_w({0, 1});
  const std::array<Complex, 3> down_roots{-1.0, 1.0, Complex{0, -1}};
  EXPECT_EQ(nearest_root(std::conj(up.c1), down_roots), 1);
  EXPECT_EQ(nearest_root(std::conj(up.c2), down_roots), 0);
}

TEST(GaussLucas, Examples) {
  EXPECT_TRUE(gauss_lucas_check(Polynomial{2.0, -2.0, 0.0, 1.0}));
  EXPECT_TRUE(gauss_lucas_check(Polynomial::from_roots(std::array<Complex, 3>{-1.0, 0.0, 1.0})));
  EXPECT_TRUE(gauss_lucas_check(CanonicalCubic::from_w({3, 0.5}).polynomial()));
}

TEST(GaussLucas, RandomCubics) {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const RandomCubic rc = random_cubic(rng, 1.0, 1e-2);
    ASSERT_TRUE(gauss_lucas_check(rc.poly)) << format_polynomial(rc.poly);
  }
}

TEST(DistanceGap, AgreesWithDirectDistances) {
  for (Complex w : {Complex{1, 1}, Complex{0, 1}, Complex{0, 2}, Complex{4, 0.3}, Complex{0.2, 7}}) {
    const CanonicalCubic c = CanonicalCubic::from_w(w);
    const DistanceGap gap = theorem2_distance_gap(c);
    EXPECT_NEAR(gap.d1, std::abs(c.c2 - w), 1e-12) << w;
    EXPECT_NEAR(gap.d2, std::abs(c.c2 + 1.0), 1e-12) << w;
    EXPECT_GT(gap.d1, gap.d2) << w;
    EXPECT_GT(theorem2_inequality_margin(c), 0.0) << w;
  }
}

TEST(DistanceGap, SqrtThreeBandThrows) {
  try {
    theorem2_distance_gap(CanonicalCubic::from_w({0, kSqrt3}));
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBoundary);
  }
}

TEST(InequalityMargin, MatchesHandExpansion) {
  const CanonicalCubic c = CanonicalCubic::from_w({1, 1});
  // w^2 + 3 = 3 + 2i; sqrt = A + iB with A^2 - B^2 = 3, AB = 1.
  const double A = std::sqrt((3 + std::sqrt(13.0)) / 2), B = 1 / A;
  EXPECT_NEAR(theorem2_inequality_margin(c), 1 + 1 + 2 * A + 2 * B + 2 * A - 2 - 3, 1e-13);
}

TEST(Sweep, SmallRunHasNoViolationsAndIsThreadIndependent) {
  SweepOptions opts;
  opts.samples = 20000;
  opts.seed = 3;
  opts.threads = 1;
  const auto one = run_sweep(opts);
  opts.threads = 4;
  const auto four = run_sweep(opts);
  const SweepSummary s = summarize(one);
  EXPECT_EQ(s.total_violations(), 0u);
  EXPECT_GT(s.case_counts[static_cast<int>(Theorem2Case::kAPositive)], 0u);
  EXPECT_GT(s.case_counts[static_cast<int>(Theorem2Case::kAZeroBSmall)], 0u);
  EXPECT_GT(s.case_counts[static_cast<int>(Theorem2Case::kAZeroBLarge)], 0u);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    ASSERT_EQ(one[i].cubic.w, four[i].cubic.w);
    ASSERT_EQ(to_record(one[i].verdict), to_record(four[i].verdict));
  }
}

TEST(Sweep, SamplerRespectsExclusions) {
  Rng rng(1);
  SweepOptions opts;
  for (int i = 0; i < 100000; ++i) {
    const CanonicalCubic c = sample_canonical(rng, opts);
    ASSERT_GE(c.a, 0.0);
    ASSERT_LE(c.a, opts.a_max);
    ASSERT_GT(c.b, 0.0);
    ASSERT_LE(c.b, opts.b_max);
    if (c.a == 0.0) {
      ASSERT_GE(std::abs(c.b - kSqrt3), 1e-6);
    }
  }
}
