#include "stovex/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stovex/errors.hpp"
#include "stovex/rng.hpp"

namespace stovex {

namespace {

constexpr std::string_view kLabels[] = {"a1", "a2", "b1", "b2", "c1", "c2"};

inline VertexType choose(bool south, bool west, double b1, double b2, const KeyedStream& rng,
                         int x, int y) {
  if (south == west) return south ? VertexType::A2 : VertexType::A1;
  const double u = rng.uniform(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
  if (south) return u < b1 ? VertexType::B1 : VertexType::C1;
  return u < b2 ? VertexType::B2 : VertexType::C2;
}

std::string site(int x, int y) {
  std::ostringstream os;
  os << "(" << x << "," << y << ")";
  return os.str();
}

}  // namespace

std::string_view label(VertexType v) noexcept { return kLabels[static_cast<int>(v)]; }

std::optional<VertexType> vertex_from_label(std::string_view s) noexcept {
  for (int i = 0; i < 6; ++i) {
    if (kLabels[i] == s) return static_cast<VertexType>(i);
  }
  return std::nullopt;
}

std::optional<VertexType> vertex_from_edges(EdgeOccupancy e) noexcept {
  for (int i = 0; i < 6; ++i) {
    const EdgeOccupancy f = edges(static_cast<VertexType>(i));
    if (f.south == e.south && f.west == e.west && f.north == e.north && f.east == e.east) {
      return static_cast<VertexType>(i);
    }
  }
  return std::nullopt;
}

LatticeConfig::LatticeConfig(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) fail(Errc::OutOfDomain, "lattice dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                static_cast<std::uint8_t>(VertexType::A1));
}

LatticeConfig sample_configuration(const ModelParams& p, int X, int Y, std::uint64_t seed,
                                   SamplingOrder order) {
  LatticeConfig c(X, Y);
  const KeyedStream rng(seed, StreamDomain::Lattice);
  const double b1 = p.b1();
  const double b2 = p.b2();
  auto visit = [&](int x, int y) {
    const bool south = y == 1 || edges(c.at(x, y - 1)).north;
    const bool west = x > 1 && edges(c.at(x - 1, y)).east;
    c.set(x, y, choose(south, west, b1, b2, rng, x, y));
  };
  if (order == SamplingOrder::AntiDiagonal) {
    for (int d = 2; d <= X + Y; ++d) {
      const int lo = std::max(1, d - Y);
      const int hi = std::min(X, d - 1);
      for (int x = lo; x <= hi; ++x) visit(x, d - x);
    }
  } else {
    for (int y = 1; y <= Y; ++y) {
      for (int x = 1; x <= X; ++x) visit(x, y);
    }
  }
  return c;
}

int height_function(const LatticeConfig& c, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || x > c.width() || y > c.height()) {
    std::ostringstream os;
    os << "height_function at (" << x << "," << y << ") outside [0," << c.width() << "]x[0,"
       << c.height() << "]";
    fail(Errc::OutOfDomain, os.str());
  }
  const int cols = static_cast<int>(std::floor(x));
  if (y == 0.0) return cols;
  const int row = static_cast<int>(std::ceil(y));
  int h = 0;
  for (int i = 1; i <= cols; ++i) h += counts_toward_height(c.at(i, row)) ? 1 : 0;
  return h;
}

ValidationReport validate_configuration(const LatticeConfig& c) {
  ValidationReport r;
  auto bad = [&](std::string msg) {
    r.ok = false;
    r.first_violation = std::move(msg);
    return r;
  };
  for (int y = 1; y <= c.height(); ++y) {
    for (int x = 1; x <= c.width(); ++x) {
      const EdgeOccupancy e = edges(c.at(x, y));
      if (y == 1 && !e.south) return bad("bottom boundary: south edge empty at " + site(x, y));
      if (x == 1 && e.west) return bad("left boundary: west edge bold at " + site(x, y));
      if (x < c.width() && e.east != edges(c.at(x + 1, y)).west) {
        return bad("horizontal mismatch between " + site(x, y) + " and " + site(x + 1, y));
      }
      if (y < c.height() && e.north != edges(c.at(x, y + 1)).south) {
        return bad("vertical mismatch between " + site(x, y) + " and " + site(x, y + 1));
      }
    }
  }
  return r;
}

std::vector<int> particles_at_cut(const LatticeConfig& c, int t) {
  if (t < 0 || t > c.height()) fail(Errc::OutOfDomain, "cut outside the sampled rows");
  std::vector<int> out;
  for (int x = 1; x <= c.width(); ++x) {
    if (t == 0 || edges(c.at(x, t)).north) out.push_back(x);
  }
  return out;
}

}  // namespace stovex
