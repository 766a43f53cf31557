#include <gtest/gtest.h>

#include <cmath>

#include "stovex/errors.hpp"
#include "stovex/model.hpp"

using namespace stovex;

namespace {

const ModelParams kP = ModelParams::validate(0.6, 0.2);

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(ModelParams, DerivedRatios) {
  EXPECT_NEAR(kP.tau(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(kP.kappa(), 0.5, 1e-15);
}

TEST(ModelParams, Validation) {
  EXPECT_EQ(code_of([] { validate_params(0.2, 0.6); }), Errc::Degenerate);
  EXPECT_EQ(code_of([] { validate_params(0.5, 0.5); }), Errc::Degenerate);
  EXPECT_EQ(code_of([] { validate_params(1.0, 0.2); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { validate_params(0.6, 0.0); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { validate_params(NAN, 0.1); }), Errc::OutOfRange);
}

TEST(LimitShape, CentralValue) {
  // (sqrt(0.4) - sqrt(0.8))^2 / 0.4 by hand.
  EXPECT_NEAR(limit_shape_height(1.0, 1.0, kP), 0.17157287525380990, 1e-14);
  EXPECT_NEAR(current_lln(1.0, kP), 0.17157287525380990, 1e-14);
}

TEST(LimitShape, FrozenSectorsAndBoundaries) {
  EXPECT_EQ(limit_shape_height(0.25, 1.0, kP), 0.0);
  EXPECT_EQ(limit_shape_height(3.0, 1.0, kP), 2.0);
  EXPECT_EQ(limit_shape_height(0.5, 1.0, kP), 0.0);
  EXPECT_EQ(limit_shape_height(2.0, 1.0, kP), 1.0);
  for (int i = 1; i <= 100; ++i) {
    const double y = 0.05 * i;
    for (double r : {kP.kappa(), 1.0 / kP.kappa()}) {
      const double x = r * y;
      const double inside = limit_shape_height(x * (r < 1 ? 1 + 1e-13 : 1 - 1e-13), y, kP);
      EXPECT_NEAR(inside, limit_shape_height(x, y, kP), 1e-12 * (1.0 + x));
    }
  }
}

TEST(LimitShape, BoundsAndMonotonicity) {
  for (int i = 1; i <= 40; ++i) {
    for (int j = 1; j <= 40; ++j) {
      const double x = 0.1 * i, y = 0.1 * j;
      const double h = limit_shape_height(x, y, kP);
      EXPECT_GE(h, 0.0);
      EXPECT_GE(h, x - y - 1e-15);
      EXPECT_GE(limit_shape_height(x + 0.1, y, kP), h - 1e-15);
      EXPECT_LE(limit_shape_height(x, y + 0.1, kP), h + 1e-15);
    }
  }
}

TEST(LimitShape, AgreesWithCurrent) {
  for (int i = 1; i < 100; ++i) {
    const double nu = kP.kappa() + (1.0 / kP.kappa() - kP.kappa()) * i / 100.0;
    EXPECT_NEAR(limit_shape_height(nu, 1.0, kP), current_lln(nu, kP), 1e-12);
    EXPECT_NEAR(fluctuation_scale_xy(nu, 1.0, kP), current_scale(nu, kP), 1e-12);
  }
}

TEST(FluctuationScale, Symmetric) {
  const ModelParams p = validate_params(0.7, 0.4);
  for (double x : {0.8, 1.0, 1.3}) {
    for (double y : {0.9, 1.0, 1.2}) {
      if (!in_liquid_region(x / y, p)) continue;
      EXPECT_NEAR(fluctuation_scale_xy(x, y, p), fluctuation_scale_xy(y, x, p), 1e-12);
    }
  }
}

TEST(FluctuationScale, CentralValue) {
  // Frozen from (G'''(rho)/2)^{1/3} rho, evaluated independently.
  EXPECT_NEAR(fluctuation_scale_xy(1.0, 1.0, kP), 0.34658046932877750, 1e-12);
}

TEST(FluctuationScale, RejectsFrozenAndBoundaryRays) {
  EXPECT_EQ(code_of([] { fluctuation_scale_xy(0.5, 1.0, kP); }), Errc::OutsideLiquidRegion);
  EXPECT_EQ(code_of([] { current_scale(2.0, kP); }), Errc::OutsideLiquidRegion);
  EXPECT_EQ(code_of([] { current_lln(2.5, kP); }), Errc::OutsideLiquidRegion);
  EXPECT_NEAR(current_lln(2.0, kP), 1.0, 1e-15);
  EXPECT_EQ(current_lln(0.5, kP), 0.0);
}
