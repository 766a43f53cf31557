#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "stovex/errors.hpp"
#include "stovex/observables.hpp"

using namespace stovex;

namespace {

const ModelParams kP = ModelParams::validate(0.6, 0.2);

Errc code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST(CurrentLaw, IsAProbabilityVector) {
  for (int t = 1; t <= 4; ++t) {
    for (int x = 1; x <= 6; ++x) {
      const std::vector<double> law = current_law_exact(x, t, kP);
      EXPECT_EQ(static_cast<int>(law.size()), x + 1);
      EXPECT_NEAR(std::accumulate(law.begin(), law.end(), 0.0), 1.0, 1e-12);
      for (double v : law) EXPECT_GE(v, -1e-15);
    }
  }
}

TEST(MomentExact, FirstStepClosedForm) {
  EXPECT_NEAR(moment_exact({1, 1, 1}, kP), 1.0 - kP.b1() + kP.b2(), 1e-14);
  EXPECT_NEAR(moment_exact({1, 1, 0}, kP), kP.tau(), 1e-14);
}

TEST(MomentExact, DecreasesInXAndL) {
  for (int t = 1; t <= 3; ++t) {
    for (int x = 1; x < 6; ++x) {
      EXPECT_GT(moment_exact({1, x, t}, kP), moment_exact({1, x + 1, t}, kP));
      EXPECT_GT(moment_exact({1, x, t}, kP), moment_exact({2, x, t}, kP));
    }
  }
}

TEST(MomentContour, MatchesExact) {
  for (int L = 1; L <= 3; ++L) {
    for (int x = 1; x <= 3; ++x) {
      for (int t = 1; t <= 3; ++t) {
        const ContourEstimate c = moment_contour({L, x, t}, kP);
        EXPECT_NEAR(c.value, moment_exact({L, x, t}, kP), 1e-7) << L << x << t;
        EXPECT_NEAR(c.imag, 0.0, 1e-9);
      }
    }
  }
}

TEST(MomentContour, TooManyContours) {
  EXPECT_EQ(code_of([] { moment_contour({4, 1, 1}, kP); }), Errc::TooLarge);
}

TEST(NestedContours, DefaultsAreFeasible) {
  for (int L = 1; L <= 3; ++L) {
    EXPECT_NO_THROW(check_nested_contours(default_nested_contours(L, kP), kP));
  }
}

TEST(NestedContours, InfeasibleFamilies) {
  NestedContours c = default_nested_contours(2, kP);
  c.zero_radius[0] = 5.0;  // overlaps the loop around -tau
  EXPECT_EQ(code_of([&] { check_nested_contours(c, kP); }), Errc::ContourFamilyInfeasible);
  c = default_nested_contours(2, kP);
  c.zero_radius[0] = c.zero_radius[1];  // tau u_1 lands inside the contour of u_0
  c.pole_radius[0] = c.pole_radius[1];
  EXPECT_EQ(code_of([&] { check_nested_contours(c, kP); }), Errc::ContourFamilyInfeasible);
}

TEST(MuK, NestedEqualsPartition) {
  for (int k = 1; k <= 3; ++k) {
    const MuK m = mu_k_nested(k, 2, 2, kP);
    EXPECT_LT(m.difference, 1e-9);
    EXPECT_NEAR(m.partition, moment_exact({k, 2, 2}, kP), 1e-8);
  }
}

TEST(MomentMc, AgreesWithExact) {
  const MomentSpec s{1, 2, 2};
  const McEstimate e = moment_mc(s, kP, 20000, 7);
  EXPECT_EQ(e.samples, 20000);
  EXPECT_LT(std::fabs(e.mean - moment_exact(s, kP)), 5.0 * e.std_error);
}

TEST(MomentMc, IndependentOfThreadCount) {
  const MomentSpec s{2, 3, 3};
  const McEstimate a = moment_mc(s, kP, 2000, 11, 1);
  const McEstimate b = moment_mc(s, kP, 2000, 11, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}
