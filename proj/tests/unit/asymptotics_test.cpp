#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stovex/asymptotics.hpp"
#include "stovex/errors.hpp"
#include "stovex/model.hpp"
#include "stovex/tracy_widom.hpp"

using namespace stovex;

namespace {

const ModelParams kP = ModelParams::validate(0.6, 0.2);

}  // namespace

TEST(GFunction, BranchCut) {
  for (double z : {0.0, -0.5, -3.0}) {
    try {
      g_function(z, 1.0, kP);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::OnBranchCut);
    }
  }
}

TEST(GFunction, RealOnPositiveAxis) {
  for (double z : {0.01, 0.5, 2.0, 40.0}) EXPECT_EQ(g_function(z, 1.2, kP).imag(), 0.0);
}

TEST(GFunction, LogarithmicSlopeAtInfinity) {
  const double nu = 1.3;
  const double slope =
      (g_function(1e5, nu, kP).real() - g_function(1e4, nu, kP).real()) / std::log(10.0);
  EXPECT_NEAR(slope, 1.0 - nu + current_lln(nu, kP), 1e-4);
}

TEST(CriticalPoint, DiagonalValues) {
  const CriticalData c = critical_point(1.0, kP);
  EXPECT_NEAR(c.rho, 0.471404521, 1e-9);
  EXPECT_LT(std::fabs(c.g1), 1e-9);
  EXPECT_LT(std::fabs(c.g2), 1e-9);
  EXPECT_NEAR(c.g3, c.sigma_check, 1e-9);
  EXPECT_GT(c.g3, 0.0);
}

TEST(CriticalPoint, RandomParameters) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double b1 = 0.1 + 0.85 * u(gen);
    const double b2 = b1 * (0.05 + 0.9 * u(gen));
    const ModelParams p = ModelParams::validate(b1, b2);
    const double k = p.kappa();
    const double nu = k + (1.0 / k - k) * (0.1 + 0.8 * u(gen));
    const CriticalData c = critical_point(nu, p);
    EXPECT_GT(c.rho, 0.0) << b1 << " " << b2 << " " << nu;
    EXPECT_NEAR(c.g3, c.sigma_check, 1e-9 * (1.0 + c.sigma_check));
  }
}

TEST(CriticalPoint, ScanAcrossTheLiquidRegion) {
  const double k = kP.kappa();
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double nu = k + (1.0 / k - k) * i / 51.0;
    const CriticalData c = critical_point(nu, kP);
    EXPECT_TRUE(std::isfinite(c.rho) && c.rho > 0.0);
    if (i > 1) {
      EXPECT_NE(c.rho, prev);
    }
    prev = c.rho;
  }
}

TEST(CriticalPoint, OutsideLiquidRegion) {
  for (double nu : {0.5, 0.3, 2.0, 4.0}) {
    try {
      critical_point(nu, kP);
      FAIL() << nu;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::OutsideLiquidRegion);
    }
  }
}

TEST(LlnExperiment, SmallSystemNearTheLimit) {
  const LlnResult r = lln_experiment(kP, 200, {{1.0, 1.0}, {0.25, 1.0}, {3.0, 1.0}}, 4, 5);
  ASSERT_EQ(r.points.size(), 3u);
  EXPECT_NEAR(r.points[0].limit, 0.171572875, 1e-8);
  EXPECT_LT(std::fabs(r.points[0].deviation()), 0.03);
  EXPECT_LT(std::fabs(r.points[1].deviation()), 3.0 / 200);
  EXPECT_LT(std::fabs(r.points[2].deviation()), 3.0 / 200);
}

TEST(LlnExperiment, IndependentOfThreads) {
  const auto grid = std::vector<std::pair<double, double>>{{1.0, 1.0}};
  const LlnResult a = lln_experiment(kP, 60, grid, 3, 8, 1);
  const LlnResult b = lln_experiment(kP, 60, grid, 3, 8, 2);
  EXPECT_EQ(a.points[0].mean, b.points[0].mean);
  EXPECT_EQ(a.points[0].stddev, b.points[0].stddev);
}

TEST(FluctuationSamples, PrefixConsistency) {
  const auto all = fluctuation_samples(kP, 1.0, 80, 6, 21);
  const auto tail = fluctuation_samples(kP, 1.0, 80, 3, 21, 1, 3);
  ASSERT_EQ(all.size(), 6u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(all[3 + i], tail[i]);
  EXPECT_THROW(fluctuation_samples(kP, 2.5, 80, 2, 1), Error);
}

TEST(SummarizeFluctuations, TracyWidomSamplesHaveSmallKs) {
  const TwTable tw = tw_table(-10.0, 6.0, 401);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FluctuationResult r;
  for (int i = 0; i < 4000; ++i) {
    const double v = u(gen);
    const auto it = std::lower_bound(tw.F.begin(), tw.F.end(), v);
    const std::size_t j = std::clamp<std::size_t>(it - tw.F.begin(), 1, tw.F.size() - 1);
    const double w = (v - tw.F[j - 1]) / (tw.F[j] - tw.F[j - 1]);
    r.xi.push_back(tw.s[j - 1] + w * (tw.s[j] - tw.s[j - 1]));
  }
  summarize_fluctuations(r, tw);
  EXPECT_LT(r.ks, 0.04);
  EXPECT_NEAR(r.mean, tw.mean(), 0.05);
  EXPECT_NEAR(r.variance / tw.variance(), 1.0, 0.1);
  EXPECT_EQ(r.grid.size(), 400u);
  EXPECT_TRUE(std::is_sorted(r.ecdf.begin(), r.ecdf.end()));
}

TEST(SummarizeFluctuations, ShiftedSamplesAreDetected) {
  const TwTable tw = tw_table(-10.0, 6.0, 401);
  FluctuationResult r;
  for (int i = 0; i < 1000; ++i) r.xi.push_back(2.0 + 0.001 * i);
  summarize_fluctuations(r, tw);
  EXPECT_GT(r.ks, 0.9);
}
