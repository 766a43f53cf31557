#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

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

TEST(FredholmDet, RankOneKernel) {
  // K(w, w') = c / w' on a circle around 0 gives det(I + K) = 1 + c.
  const cplx c(0.7, -0.2);
  double hadamard = 0.0;
  const cplx d = fredholm_det([&](cplx, cplx wp) { return c / wp; },
                              circle_contour(0.0, 1.3, 40), &hadamard);
  EXPECT_NEAR(std::abs(d - (1.0 + c)), 0.0, 1e-13);
  EXPECT_GE(hadamard, std::abs(d) * (1.0 - 1e-12));
}

TEST(FredholmDet, ZeroKernel) {
  const cplx d = fredholm_det([](cplx, cplx) { return cplx(0.0); }, circle_contour(0.0, 1.0, 16));
  EXPECT_EQ(d, cplx(1.0));
}

TEST(QLaplaceKernel, LineMatchesResidueSeries) {
  const double r = 0.5;
  const ContourSpec line{VerticalLine{0.5, 20.0}, 400};
  for (const cplx zeta : {cplx(-0.3), cplx(0.2, 0.4), cplx(-0.5, -0.5)}) {
    for (double a : {0.3, 1.7, 3.0}) {
      const cplx w = std::polar(r, a), wp = std::polar(r, 2.0 - a);
      const cplx k1 = qlaplace_kernel(w, wp, 2, 3, zeta, kP, line);
      const cplx k2 = qlaplace_kernel_series(w, wp, 2, 3, zeta, kP);
      EXPECT_LT(std::abs(k1 - k2), 1e-10 * (1.0 + std::abs(k2))) << zeta << " " << a;
    }
  }
}

TEST(QLaplaceKernel, SeriesNeedsSmallZeta) {
  EXPECT_EQ(code_of([] { qlaplace_kernel_series(0.5, 0.5, 1, 1, cplx(-1.5), kP); }),
            Errc::OutOfDomain);
}

TEST(QLaplaceFredholm, MatchesExactLaw) {
  for (const cplx zeta : {cplx(-1.0), cplx(-0.1), cplx(0.0, 0.1), cplx(-3.0, 1.0)}) {
    for (const auto& [x, t] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{4, 4}}) {
      const MomentSpec s{1, x, t, zeta};
      const FredholmResult f = qlaplace_fredholm(s, kP);
      EXPECT_LT(std::abs(f.det - qlaplace_exact(s, kP)), 1e-9) << zeta << " " << x << "," << t;
      EXPECT_LE(f.doubling, 1e-8);
      EXPECT_GE(f.hadamard, std::abs(f.det) * (1.0 - 1e-12));
    }
  }
}

TEST(QLaplaceFredholm, ConjugateSymmetry) {
  const cplx zeta(-0.8, 0.6);
  const cplx a = qlaplace_fredholm({1, 2, 3, zeta}, kP).det;
  const cplx b = qlaplace_fredholm({1, 2, 3, std::conj(zeta)}, kP).det;
  EXPECT_LT(std::abs(a - std::conj(b)), 1e-12);
}

TEST(QLaplaceFredholm, SmallZetaAgreesWithMomentSeries) {
  const MomentSpec s{1, 2, 2, cplx(-0.05)};
  EXPECT_LT(std::abs(qlaplace_fredholm(s, kP).det - qlaplace_series(s, kP, 12)), 1e-9);
}

TEST(QLaplaceFredholm, DomainErrors) {
  EXPECT_EQ(code_of([] { qlaplace_fredholm({1, 1, 1, cplx(0.5)}, kP); }), Errc::ZetaOnCut);
  EXPECT_EQ(code_of([] { qlaplace_fredholm({1, 1, 1, cplx(0.0)}, kP); }), Errc::ZetaOnCut);
  FredholmOptions o;
  o.radius = 0.2;  // inside tau
  EXPECT_EQ(code_of([&] { qlaplace_fredholm({1, 1, 1, cplx(-1.0)}, kP, o); }), Errc::OutOfDomain);
  o.radius = 0.9;  // outside tau / kappa
  EXPECT_EQ(code_of([&] { qlaplace_fredholm({1, 1, 1, cplx(-1.0)}, kP, o); }), Errc::OutOfDomain);
}

TEST(QLaplaceFredholm, UnderResolvedDoublingIsReported) {
  FredholmOptions o;
  o.circle_nodes = 2;
  o.line_nodes = 4;
  EXPECT_EQ(code_of([&] { qlaplace_fredholm({1, 4, 4, cplx(-1.0)}, kP, o); }),
            Errc::QuadratureNotConverged);
}

TEST(MomentFromFredholm, MatchesExact) {
  for (int L = 1; L <= 3; ++L) {
    EXPECT_NEAR(moment_from_fredholm(L, 2, 3, kP), moment_exact({L, 2, 3}, kP), 1e-8) << L;
  }
}
