#include <gtest/gtest.h>

#include <cmath>

#include "stovex/errors.hpp"
#include "stovex/qseries.hpp"

using namespace stovex;

TEST(QPochhammer, SmallCases) {
  EXPECT_EQ(q_pochhammer(0.3, 0.5, 0), cplx(1.0));
  EXPECT_NEAR(std::abs(q_pochhammer(0.3, 0.5, 2) - 0.7 * 0.85), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q_pochhammer(2.0, 0.5, 3)), 0.0, 1e-15);
  EXPECT_THROW(q_pochhammer(0.3, 0.5, -1), Error);
}

TEST(QPochhammer, InfiniteProductLimit) {
  const cplx q(0.3, 0.4), x(-1.2, 0.5);
  EXPECT_LT(std::abs(q_pochhammer_inf(x, q) - q_pochhammer(x, q, 200)), 1e-13);
}

TEST(QPochhammer, EulerSeries) {
  const cplx q(0.6, 0.1), x(0.8, -0.3);
  cplx sum(0.0), term(1.0);
  for (int k = 0; k < 400; ++k) {
    sum += term;
    term *= -x * std::pow(q, k) / (1.0 - std::pow(q, k + 1));
  }
  EXPECT_LT(std::abs(q_pochhammer_inf(x, q) - sum), 1e-12);
}

TEST(QPochhammer, DivergentParameter) {
  try {
    q_pochhammer_inf(0.5, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivergentParameter);
  }
}

TEST(QBinomial, KnownPolynomial) {
  const double q = 0.37;
  EXPECT_NEAR(q_binomial(4, 2, q).real(), 1 + q + 2 * q * q + q * q * q + q * q * q * q, 1e-14);
  EXPECT_NEAR(q_binomial(5, 0, q).real(), 1.0, 1e-15);
  EXPECT_NEAR(q_binomial(5, 5, q).real(), 1.0, 1e-15);
  EXPECT_THROW(q_binomial(3, 4, q), Error);
}

TEST(QBinomial, PascalRecurrence) {
  const cplx q(0.4, -0.7);
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k < n; ++k) {
      const cplx lhs = q_binomial(n, k, q);
      const cplx rhs = q_binomial(n - 1, k - 1, q) + std::pow(q, k) * q_binomial(n - 1, k, q);
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST(QBinomial, FiniteBinomialTheorem) {
  const cplx q(0.9, 0.2), x(-0.4, 1.1);
  for (int n = 0; n <= 12; ++n) {
    cplx sum(0.0);
    for (int k = 0; k <= n; ++k) sum += std::pow(q, k * (k - 1) / 2) * q_binomial(n, k, q) * std::pow(x, k);
    const cplx prod = q_pochhammer(-x, q, n);
    EXPECT_LT(std::abs(sum - prod), 1e-11 * (1.0 + std::abs(prod))) << n;
  }
}

TEST(IdentitySuite, AllResidualsSmall) {
  const auto r = identity_suite(12345, 60);
  EXPECT_GE(r.size(), 5u);
  for (const IdentityResidual& i : r) {
    EXPECT_EQ(i.points, 60) << i.name;
    EXPECT_LE(i.max_residual, 1e-9) << i.name;
  }
}

TEST(IdentitySuite, Reproducible) {
  const auto a = identity_suite(3, 10), b = identity_suite(3, 10);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].max_residual, b[i].max_residual);
}
