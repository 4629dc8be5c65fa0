#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cubic/basic_family.hpp"
#include "cubic/sampling.hpp"
#include "test_support.hpp"

using namespace cubic;
using cubic::testing::kPaperRealRoot;
using cubic::testing::same_to_sig_digits;

namespace {

const Polynomial kPaperCubic{2.0, -2.0, 0.0, 1.0};  // z^3 - 2z + 2

// Independent D_m for a cubic: direct unrolled recurrence with explicit derivative values.
Complex d_by_hand(Complex p, Complex dp, Complex ddp, Complex lead, int m) {
  std::vector<Complex> d{0.0, 0.0, 1.0};  // d_{-2}, d_{-1}, d_0
  for (int k = 1; k <= m; ++k) {
    const std::size_t i = d.size();
    d.push_back(dp * d[i - 1] - 0.5 * p * ddp * d[i - 2] + p * p * lead * d[i - 3]);
  }
  return d.back();
}

Complex true_window_lead(const BasicSequenceState& s) {
  return s.window[0] * std::exp(s.log_scale);
}

}  // namespace

TEST(BasicSequenceState, StartsWithStatedInitialWindow) {
  const Complex xi{0.3, -0.2};
  const BasicSequenceState s = BasicSequenceState::start(kPaperCubic, xi);
  EXPECT_EQ(s.m, 2);
  EXPECT_EQ(s.window[0], kPaperCubic.derivative()(xi));
  EXPECT_EQ(s.window[1], Complex(1.0));
  EXPECT_EQ(s.window[2], Complex(0.0));
  EXPECT_EQ(s.p3, Complex(1.0));
  EXPECT_THROW(BasicSequenceState::start(Polynomial{1.0, 0.0, 1.0}, 0.0), Error);
}

TEST(DStepCubic, AtARootOnlyTheLeadingTermSurvives) {
  const Polynomial p = Polynomial::from_roots(std::array<Complex, 3>{-1.0, 1.0, Complex{0, 2}});
  BasicSequenceState s = BasicSequenceState::start(p, 1.0);
  const Complex dp = p.derivative()(1.0);
  for (int k = 0; k < 5; ++k) {
    const Complex before = s.window[0];
    s = d_step_cubic(s);
    EXPECT_LT(std::abs(s.window[0] - dp * before), 1e-14 * std::abs(dp * before));
    EXPECT_EQ(s.term(), Complex(1.0));
  }
}

TEST(DStepCubic, ZeroDerivativeSeedGivesHalfPPdd) {
  const Complex xi{-std::sqrt(2.0 / 3.0), 0.0};
  BasicSequenceState s = BasicSequenceState::start(kPaperCubic, xi);
  s = d_step_cubic(s);
  const Complex p = kPaperCubic(xi);
  const Complex ddp = 6.0 * xi;
  EXPECT_EQ(s.m, 3);
  EXPECT_LT(std::abs(s.window[0] - (-0.5 * p * ddp)), 1e-13);
  EXPECT_EQ(s.window[1], s.p1);
}

TEST(DStepCubic, MatchesGeneralDForSmallM) {
  const Complex xi{0.4, 0.7};
  BasicSequenceState s = BasicSequenceState::start(kPaperCubic, xi);
  for (int m = 2; m <= 4; ++m) {
    s = d_step_cubic(s);
    const Complex expected = general_D(kPaperCubic, xi, m);
    EXPECT_LT(std::abs(true_window_lead(s) - expected), 1e-13 * std::abs(expected)) << m;
  }
}

TEST(GeneralD, BaseCases) {
  const Complex z{1.5, -0.5};
  EXPECT_EQ(general_D(kPaperCubic, z, 0), Complex(1.0));
  EXPECT_EQ(general_D(kPaperCubic, z, -1), Complex(0.0));
  EXPECT_EQ(general_D(kPaperCubic, z, -2), Complex(0.0));
  EXPECT_LT(std::abs(general_D(kPaperCubic, z, 1) - kPaperCubic.derivative()(z)), 1e-15);
}

TEST(GeneralD, MatchesHandUnrolledCubicRecurrence) {
  const Complex z{3.0, 0.0};
  const Complex expected = d_by_hand(kPaperCubic(z), 25.0, 18.0, 1.0, 5);
  EXPECT_LT(std::abs(general_D(kPaperCubic, z, 5) - expected), 1e-12 * std::abs(expected));

  BasicSequenceState s = BasicSequenceState::start(kPaperCubic, z);
  while (s.m <= 5) s = d_step_cubic(s);
  EXPECT_LT(std::abs(true_window_lead(s) - expected), 1e-12 * std::abs(expected));
}

TEST(GeneralD, QuarticUsesEveryDerivative) {
  // p = z^4 - 1: D_2 = p'^2 - p p''/2.
  const Polynomial p{-1.0, 0.0, 0.0, 0.0, 1.0};
  const Complex z{0.5, 0.25};
  const Complex v = p(z), d1 = 4.0 * z * z * z, d2 = 12.0 * z * z;
  EXPECT_LT(std::abs(general_D(p, z, 2) - (d1 * d1 - 0.5 * v * d2)), 1e-14);
}

TEST(DStepCubic, OracleEquivalenceOnRandomCubics) {
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const RandomCubic rc = random_cubic(rng);
    const Complex xi = rng.in_box(0.0, 2.0);
    BasicSequenceState s = BasicSequenceState::start(rc.poly, xi);
    for (int m = 2; m <= 12; ++m) {
      s = d_step_cubic(s);
      const Complex expected = general_D(rc.poly, xi, m);
      const double scale = std::abs(expected);
      if (scale == 0.0) continue;
      ASSERT_LT(std::abs(true_window_lead(s) - expected), 1e-9 * scale) << i << " m=" << m;
    }
  }
}

TEST(DStepCubic, RescalingKeepsWindowInRange) {
  const Polynomial p = kPaperCubic.scaled(1e40);
  BasicSequenceState s = BasicSequenceState::start(p, Complex{5.0, 1.0});
  for (int k = 0; k < 200; ++k) {
    s = d_step_cubic(s);
    for (const Complex& w : s.window) {
      ASSERT_TRUE(std::isfinite(w.real()) && std::isfinite(w.imag()));
      ASSERT_LE(std::abs(w), kRescaleHigh);
    }
  }
  EXPECT_GT(s.rescale_count, 0);
}

TEST(DStepCubic, TinyValuesAreRenormalizedUpward) {
  const Polynomial p = kPaperCubic.scaled(1e-40);
  BasicSequenceState s = BasicSequenceState::start(p, Complex{0.1, 0.1});
  for (int k = 0; k < 200; ++k) s = d_step_cubic(s);
  EXPECT_GT(s.rescale_count, 0);
  EXPECT_TRUE(std::isfinite(s.term().real()));
  EXPECT_EQ(s.term(), BasicSequenceState{s}.term());
}

TEST(DStepCubic, PowerOfTwoWindowScalingIsBitExact) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const RandomCubic rc = random_cubic(rng);
    BasicSequenceState a = BasicSequenceState::start(rc.poly.scaled(1e30), rng.in_box(0.0, 1.5));
    BasicSequenceState b = a;
    const int shift = static_cast<int>(rng.uniform(-60.0, 60.0));
    for (Complex& w : b.window) w = {std::ldexp(w.real(), shift), std::ldexp(w.imag(), shift)};
    for (int k = 0; k < 60; ++k) {
      a = d_step_cubic(a);
      b = d_step_cubic(b);
      const Complex ta = a.term(), tb = b.term();
      if (!std::isfinite(ta.real())) continue;
      ASSERT_EQ(ta, tb) << i << " " << k;
    }
  }
}

TEST(DStepCubic, ArbitraryWindowScalingLeavesTermsUnchanged) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const RandomCubic rc = random_cubic(rng);
    BasicSequenceState a = BasicSequenceState::start(rc.poly, rng.in_box(0.0, 1.5));
    BasicSequenceState b = a;
    const double factor = std::pow(10.0, rng.uniform(-20.0, 20.0));
    for (Complex& w : b.window) w *= factor;
    for (int k = 0; k < 40; ++k) {
      a = d_step_cubic(a);
      b = d_step_cubic(b);
      const Complex ta = a.term(), tb = b.term();
      if (!std::isfinite(ta.real())) continue;
      // Only the rounding of the initial multiply differs; it propagates through the recurrence.
      const double scale = std::abs(a.xi) + std::abs(a.xi - ta);
      ASSERT_LT(std::abs(ta - tb), (k == 0 ? 1e-15 : 1e-10) * scale) << i << " " << k;
    }
  }
}

TEST(BasicSequence, PaperCriticalPointConvergesToRealRoot) {
  const ConvergenceReport r = basic_sequence(kPaperCubic, -std::sqrt(2.0 / 3.0), 1e-10, 400);
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.stop_reason, StopReason::kConverged);
  EXPECT_TRUE(same_to_sig_digits(r.limit.real(), kPaperRealRoot, 5));
  EXPECT_LT(std::abs(r.limit.imag()), 1e-10);
  ASSERT_GE(r.history.size(), 2u);
  const auto& h = r.history;
  EXPECT_LT(std::abs(h.back().value - h[h.size() - 2].value), 1e-10);
}

TEST(BasicSequence, RootSeedConvergesImmediately) {
  const ConvergenceReport r = basic_sequence(Polynomial{-1.0, 0.0, 0.0, 1.0}, 1.0, 1e-12, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.limit, Complex(1.0));
  EXPECT_LE(r.terms_used, 3);
}

TEST(BasicSequence, CriticalPointOfCanonicalCubicConvergesToW) {
  const Polynomial p = Polynomial::from_roots(std::array<Complex, 3>{-1.0, 1.0, Complex{0, 2}});
  const ConvergenceReport r = basic_sequence(p, Complex{0, 1}, 1e-12, kDefaultMCap);
  ASSERT_TRUE(r.converged);
  EXPECT_LT(std::abs(p(r.limit)), 1e-8);
  EXPECT_LT(std::abs(r.limit - Complex(0, 2)), 1e-9);
}

TEST(BasicSequence, BoundarySeedReachesCap) {
  // 0 is equidistant from -1 and 1.
  const Polynomial p = Polynomial::from_roots(std::array<Complex, 3>{-1.0, 1.0, Complex{0, 5}});
  const ConvergenceReport r = basic_sequence(p, Complex{0.0, 0.0}, 1e-12, 50);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.stop_reason, StopReason::kCapReached);
  EXPECT_EQ(r.terms_used, 50);
}

TEST(BasicSequence, RejectsBadArguments) {
  EXPECT_THROW(basic_sequence(kPaperCubic, 0.0, 1e-10, 2), Error);
  EXPECT_THROW(basic_sequence(kPaperCubic, 0.0, 0.0, 10), Error);
}

TEST(BasicSequence, StepperAdvancesOneIndexPerCall) {
  BasicSequence seq(kPaperCubic, -std::sqrt(2.0 / 3.0), 1e-10);
  ASSERT_TRUE(seq.advance(kDefaultMCap));  // B_2, undefined here since p'(xi) is ~0
  int expected_m = 2;
  ASSERT_EQ(seq.m(), expected_m);
  while (seq.advance(kDefaultMCap)) ASSERT_EQ(seq.m(), ++expected_m);
  EXPECT_TRUE(seq.stopped());
  EXPECT_TRUE(seq.report().converged);
  EXPECT_EQ(seq.report().terms_used, expected_m + 1);
  EXPECT_FALSE(seq.advance(kDefaultMCap));
}

TEST(BasicSequence, ConvergedReportsSatisfyTolerance) {
  Rng rng(44);
  for (int i = 0; i < 500; ++i) {
    const RandomCubic rc = random_cubic(rng);
    const double tol = std::pow(10.0, rng.uniform(-12.0, -4.0));
    const ConvergenceReport r = basic_sequence(rc.poly, rng.in_box(0.0, 1.5), tol, 300);
    if (!r.converged) continue;
    const auto& h = r.history;
    ASSERT_GE(h.size(), 2u);
    ASSERT_LT(std::abs(h.back().value - h[h.size() - 2].value), tol);
    ASSERT_EQ(r.limit, h.back().value);
  }
}

TEST(FixedPointMember, NewtonCycleOnPaperCubic) {
  const ConvergenceReport r = fixed_point_member(kPaperCubic, 2, 0.0, 1e-12, 50);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.stop_reason, StopReason::kCapReached);
  ASSERT_GE(r.history.size(), 4u);
  EXPECT_EQ(r.history[0].value, Complex(0.0));
  EXPECT_EQ(r.history[1].value, Complex(1.0));
  EXPECT_EQ(r.history[2].value, Complex(0.0));
  EXPECT_EQ(r.history[3].value, Complex(1.0));
}

TEST(FixedPointMember, NewtonAndHalleyConvergeFromMinusTwo) {
  for (int m : {2, 3}) {
    const ConvergenceReport r = fixed_point_member(kPaperCubic, m, -2.0, 1e-12, 100);
    ASSERT_TRUE(r.converged) << m;
    EXPECT_LT(std::abs(kPaperCubic(r.limit)), 1e-10);
    EXPECT_TRUE(same_to_sig_digits(r.limit.real(), kPaperRealRoot, 5));
  }
}

TEST(FixedPointMember, ExactRootTakesZeroSteps) {
  const ConvergenceReport r = fixed_point_member(Polynomial{-1.0, 0.0, 0.0, 1.0}, 2, 1.0, 1e-12, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.terms_used, 0);
}

TEST(FixedPointMember, VanishingDerivativeIsNonFinite) {
  // p'(1) = 0 exactly for z^3 - 3z + 1.
  const ConvergenceReport r = fixed_point_member(Polynomial{1.0, -3.0, 0.0, 1.0}, 2, 1.0, 1e-12, 10);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.stop_reason, StopReason::kNonFinite);
  EXPECT_THROW(fixed_point_member(kPaperCubic, 4, 0.0, 1e-12, 10), Error);
}

TEST(MemberCorrection, HalleyFormula) {
  const Complex z{0.3, 0.9};
  const Complex p = kPaperCubic(z), dp = 3.0 * z * z - 2.0, ddp = 6.0 * z;
  EXPECT_LT(std::abs(member_correction(kPaperCubic, 2, z) - p / dp), 1e-15);
  EXPECT_LT(std::abs(member_correction(kPaperCubic, 3, z) - 2.0 * p * dp / (2.0 * dp * dp - p * ddp)),
            1e-15);
}

TEST(MemberCorrection, AgreesWithBasicSequenceTerms) {
  // B_2 and B_3 at a fixed seed are the Newton and Halley steps.
  const Complex xi{0.6, -1.1};
  BasicSequenceState s = BasicSequenceState::start(kPaperCubic, xi);
  EXPECT_LT(std::abs((xi - s.term()) - member_correction(kPaperCubic, 2, xi)), 1e-14);
  s = d_step_cubic(s);
  EXPECT_LT(std::abs((xi - s.term()) - member_correction(kPaperCubic, 3, xi)), 1e-14);
}

TEST(RateRatio, Examples) {
  const std::array<Complex, 3> paper{Complex{-1.7693, 0}, Complex{0.88456, 0.58974},
                                     Complex{0.88456, -0.58974}};
  const double r = rate_ratio(paper, -std::sqrt(2.0 / 3.0));
  EXPECT_NEAR(r, 0.9528 / 1.8004, 1e-3);
  EXPECT_EQ(rate_ratio(paper, paper[1]), 0.0);

  const std::array<Complex, 3> canon{-1.0, 1.0, Complex{0, 2}};
  EXPECT_NEAR(rate_ratio(canon, Complex{0, 1}), 1.0 / std::sqrt(2.0), 1e-15);
  try {
    rate_ratio(canon, 0.0);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBoundary);
  }
}

TEST(ConvergenceRecord, KeyValueLines) {
  ConvergenceReport r;
  r.converged = true;
  r.limit = {1.5, -2.0};
  r.terms_used = 7;
  r.stop_reason = StopReason::kConverged;
  for (int m = 2; m <= 40; ++m) r.history.push_back({m, Complex(m, 0)});
  const std::string rec = to_record(r);
  EXPECT_NE(rec.find("converged=true\n"), std::string::npos);
  EXPECT_NE(rec.find("stop_reason=successive-diff-below-tol\n"), std::string::npos);
  EXPECT_NE(rec.find("terms_used=7\n"), std::string::npos);
  EXPECT_NE(rec.find("history_size=39\n"), std::string::npos);
  const std::string hist = rec.substr(rec.find("history="));
  EXPECT_EQ(std::count(hist.begin(), hist.end(), ';'), 31);
  EXPECT_EQ(rec.find("history=2:"), std::string::npos);
  EXPECT_NE(rec.find("history=9:"), std::string::npos);
  EXPECT_EQ(to_string(StopReason::kCapReached), "m-cap-reached");
  EXPECT_EQ(to_string(StopReason::kNonFinite), "non-finite-ratio");
}
