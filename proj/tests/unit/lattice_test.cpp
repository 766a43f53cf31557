#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "stovex/errors.hpp"
#include "stovex/lattice.hpp"
#include "stovex/observables.hpp"
#include "stovex/rng.hpp"

using namespace stovex;

namespace {

const ModelParams kP = ModelParams::validate(0.6, 0.2);
constexpr VertexType kAll[] = {VertexType::A1, VertexType::A2, VertexType::B1,
                               VertexType::B2, VertexType::C1, VertexType::C2};

}  // namespace

TEST(Vertex, LabelsAndEdgesRoundTrip) {
  for (VertexType v : kAll) {
    EXPECT_EQ(vertex_from_label(label(v)), v);
    EXPECT_EQ(vertex_from_edges(edges(v)), v);
    const EdgeOccupancy e = edges(v);
    EXPECT_EQ(e.south + e.west, e.north + e.east) << label(v);
  }
  EXPECT_FALSE(vertex_from_label("d1").has_value());
  EXPECT_FALSE(vertex_from_edges({true, true, false, false}).has_value());
  EXPECT_TRUE(counts_toward_height(VertexType::A2));
  EXPECT_TRUE(counts_toward_height(VertexType::B1));
  EXPECT_TRUE(counts_toward_height(VertexType::C1));
  EXPECT_FALSE(counts_toward_height(VertexType::C2));
}

TEST(Sampler, ValidAndOrderIndependent) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const LatticeConfig a = sample_configuration(kP, 40, 30, s, SamplingOrder::AntiDiagonal);
    const LatticeConfig b = sample_configuration(kP, 40, 30, s, SamplingOrder::RowMajor);
    const ValidationReport rep = validate_configuration(a);
    EXPECT_TRUE(rep.ok) << rep.first_violation;
    for (int y = 1; y <= 30; ++y) {
      for (int x = 1; x <= 40; ++x) ASSERT_EQ(a.at(x, y), b.at(x, y));
    }
  }
}

TEST(Sampler, ValidatorRejectsBrokenIceRule) {
  LatticeConfig c = sample_configuration(kP, 10, 10, 3);
  c.set(5, 5, c.at(5, 5) == VertexType::A1 ? VertexType::A2 : VertexType::A1);
  EXPECT_FALSE(validate_configuration(c).ok);
}

TEST(Height, BoundaryValues) {
  const LatticeConfig c = sample_configuration(kP, 15, 12, 11);
  for (int x = 0; x <= 15; ++x) EXPECT_EQ(height_function(c, x, 0), x);
  EXPECT_EQ(height_function(c, 2.5, 0), 2);
  for (int y = 0; y <= 12; ++y) EXPECT_EQ(height_function(c, 0, y), 0);
  EXPECT_THROW(height_function(c, 16, 3), Error);
  EXPECT_THROW(height_function(c, 3, 13), Error);
}

TEST(Height, IncrementsAndLowerBound) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const LatticeConfig c = sample_configuration(kP, 50, 40, derive_seed(5, s));
    for (int y = 0; y <= 40; ++y) {
      for (int x = 0; x <= 50; ++x) {
        const int h = height_function(c, x, y);
        EXPECT_GE(h, x - y - 2);
        if (x < 50) {
          const int d = height_function(c, x + 1, y) - h;
          ASSERT_TRUE(d == 0 || d == 1) << x << "," << y;
        }
        if (y < 40) {
          const int d = height_function(c, x, y + 1) - h;
          ASSERT_TRUE(d == 0 || d == -1) << x << "," << y;
        }
      }
    }
  }
}

TEST(Height, RowTurnCounts) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const LatticeConfig c = sample_configuration(kP, 30, 30, derive_seed(6, s));
    for (int y = 1; y <= 30; ++y) {
      int c1 = 0, c2 = 0;
      for (int x = 1; x <= 30; ++x) {
        c1 += c.at(x, y) == VertexType::C1;
        c2 += c.at(x, y) == VertexType::C2;
      }
      EXPECT_TRUE(c1 - c2 == 0 || c1 - c2 == 1) << "row " << y;
    }
  }
}

TEST(Cut, LawMatchesExactCurrent) {
  // Empirical law of N_x(t) on the lattice cut against the particle DP.
  constexpr int x = 3, t = 3, n = 40000;
  std::map<int, int> hist;
  for (int s = 0; s < n; ++s) {
    const LatticeConfig c = sample_configuration(kP, x, t, derive_seed(77, s));
    ++hist[static_cast<int>(particles_at_cut(c, t).size())];
  }
  const auto law = current_law_exact(x, t, kP);
  for (std::size_t k = 0; k < law.size(); ++k) {
    const double sd = std::sqrt(law[k] * (1.0 - law[k]) / n);
    EXPECT_NEAR(hist[static_cast<int>(k)] / double(n), law[k], 5.0 * sd + 1e-12) << k;
  }
}

TEST(Cut, StepInitialCondition) {
  const LatticeConfig c = sample_configuration(kP, 8, 3, 1);
  const auto p0 = particles_at_cut(c, 0);
  ASSERT_EQ(p0.size(), 8u);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(p0[static_cast<std::size_t>(i)], i + 1);
}
