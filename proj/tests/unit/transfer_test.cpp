#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stovex/errors.hpp"
#include "stovex/rng.hpp"
#include "stovex/transfer.hpp"

using namespace stovex;

namespace {

const WeightSet kW = WeightSet::stochastic(0.6, 0.2);

std::vector<cplx> random_z(KeyedStream& s, std::uint64_t& n, int count) {
  std::vector<cplx> z;
  for (int i = 0; i < count; ++i) {
    z.push_back(std::polar(0.3 + 1.5 * s.uniform(n, 0), 2.0 * std::numbers::pi * s.uniform(n, 1)));
    ++n;
  }
  return z;
}

}  // namespace

TEST(Weights, StochasticLine) {
  EXPECT_TRUE(kW.is_stochastic());
  EXPECT_TRUE(kW.on_gs_line());
  WeightSet w = kW;
  w.a2 = 1.5;
  EXPECT_FALSE(w.is_stochastic());
}

TEST(RowConfiguration, SingleParticle) {
  const std::vector<int> x{2}, y{4};
  const auto row = build_row_configuration(x, y);
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ(row->at(2), VertexType::C1);
  EXPECT_EQ(row->at(3), VertexType::B2);
  EXPECT_EQ(row->at(4), VertexType::C2);
  // Weight (1-b1) * b2 * (1-b2).
  EXPECT_NEAR(transfer_weight(x, y, kW), 0.4 * 0.2 * 0.8, 1e-15);
  EXPECT_NEAR(transfer_weight(x, x, kW), 0.6, 1e-15);
}

TEST(RowConfiguration, InterlacingRequired) {
  EXPECT_FALSE(build_row_configuration(std::vector<int>{1, 3}, std::vector<int>{4, 5}).has_value());
  EXPECT_FALSE(build_row_configuration(std::vector<int>{2}, std::vector<int>{1}).has_value());
  EXPECT_EQ(transfer_weight(std::vector<int>{1, 3}, std::vector<int>{4, 5}, kW), 0.0);
}

TEST(RowConfiguration, PushThroughSharedColumn) {
  // Path 1 ends where path 2 starts: column 3 carries A2.
  const std::vector<int> x{1, 3}, y{3, 5};
  const auto row = build_row_configuration(x, y);
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ(row->at(3), VertexType::A2);
  EXPECT_NEAR(transfer_weight(x, y, kW), 0.4 * 0.2 * 1.0 * 0.2 * 0.8, 1e-15);
}

TEST(Transfer, RowsSumToOne) {
  for (int a = 1; a <= 6; ++a) {
    EXPECT_NEAR(row_sum(std::vector<int>{a}, kW), 1.0, 1e-12);
    for (int b = a + 1; b <= 7; ++b) EXPECT_NEAR(row_sum(std::vector<int>{a, b}, kW), 1.0, 1e-12);
  }
}

TEST(Transfer, DependsOnCOnlyThroughProduct) {
  WeightSet w = kW;
  w.c1 *= 2.0;
  w.c2 /= 2.0;
  for (const auto& [x, y] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{1, 3}, {2, 5}}, {{1, 2}, {2, 4}}, {{2, 5}, {4, 6}}, {{1, 4, 6}, {3, 5, 9}}}) {
    EXPECT_NEAR(transfer_weight(x, y, w), transfer_weight(x, y, kW), 1e-15);
  }
}

TEST(Transfer, NormalizeWeights) {
  WeightSet w{1.0, 2.0, 1.2, 0.2, 0.8, 0.8};
  ASSERT_TRUE(w.on_gs_line());
  const NormalizedWeights n = normalize_weights(w);
  EXPECT_NEAR(n.per_particle_constant, 2.0, 1e-15);
  EXPECT_TRUE(n.weights.is_stochastic());
  const std::vector<int> x{1, 3}, y{2, 5};
  EXPECT_NEAR(transfer_weight(x, y, w), 4.0 * transfer_weight(x, y, n.weights), 1e-14);
  EXPECT_THROW(normalize_weights(WeightSet{1.0, 1.0, 0.5, 0.5, 0.1, 0.1}), Error);
}

TEST(Transfer, ApplyTracksEscapedMass) {
  const BoxDistribution d = transfer_apply({{{1, 2}, 1.0}}, kW, 3, 1, 8);
  double in_box = 0.0;
  for (const auto& [x, m] : d.mass) in_box += m;
  EXPECT_NEAR(in_box + d.escaped, 1.0, 1e-12);
  EXPECT_GT(d.escaped, 0.0);
  EXPECT_THROW(transfer_apply({{{1}, 1.0}}, kW, 6, 1, 5), Error);
  EXPECT_THROW(transfer_apply({{{1, 2, 3, 4}, 1.0}}, kW, 1, 1, 9), Error);
}

TEST(Bethe, EigenrelationsAtRandomPoints) {
  KeyedStream s(4, StreamDomain::Test);
  std::uint64_t n = 0;
  for (int k = 0; k < 30; ++k) {
    for (int N = 1; N <= 3; ++N) {
      const auto z = random_z(s, n, N);
      std::vector<int> y;
      for (int i = 0; i < N; ++i) y.push_back(2 * i + 1);
      EXPECT_LE(bethe_check_transposed(z, kW, y).residual, 1e-9);
      if (N <= 2) {
        EXPECT_LE(bethe_check_forward(z, kW, y, 60).residual, 1e-9);
      }
    }
  }
}

TEST(Bethe, ForwardTailBoundShrinksWithK) {
  const std::vector<cplx> z{{0.9, 0.4}, {-1.1, 0.3}};
  const std::vector<int> x{1, 2};
  const double small = bethe_check_forward(z, kW, x, 10).tail_bound;
  const double large = bethe_check_forward(z, kW, x, 40).tail_bound;
  EXPECT_LT(large, small * 1e-10);
}

TEST(Bethe, DomainErrors) {
  const std::vector<cplx> z{{6.0, 0.0}};
  EXPECT_THROW(bethe_check_forward(z, kW, std::vector<int>{1}, 10), Error);
  EXPECT_THROW(bethe_check_transposed(std::vector<cplx>{{0.5, 0.0}}, kW, std::vector<int>{1, 2}),
               Error);
}

TEST(Bethe, EigenvalueSingleParticle) {
  // One row acting on z^x: b1 + sum_k (1-b1)(1-b2) b2^{k-1} z^k, summed.
  const cplx z(0.7, 0.2);
  cplx direct(0.6);
  for (int k = 1; k < 200; ++k) direct += 0.4 * 0.8 * std::pow(0.2, k - 1) * std::pow(z, k);
  EXPECT_NEAR(std::abs(bethe_eigenvalue(std::vector<cplx>{z}, kW) - direct), 0.0, 1e-14);
}
