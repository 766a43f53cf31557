#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stovex/model.hpp"

namespace stovex {

enum class VertexType : std::uint8_t { A1 = 0, A2, B1, B2, C1, C2 };

struct EdgeOccupancy {
  bool south;
  bool west;
  bool north;
  bool east;
};

constexpr EdgeOccupancy edges(VertexType v) noexcept {
  switch (v) {
    case VertexType::A1: return {false, false, false, false};
    case VertexType::A2: return {true, true, true, true};
    case VertexType::B1: return {true, false, true, false};
    case VertexType::B2: return {false, true, false, true};
    case VertexType::C1: return {true, false, false, true};
    case VertexType::C2: return {false, true, true, false};
  }
  return {false, false, false, false};
}

std::string_view label(VertexType v) noexcept;
std::optional<VertexType> vertex_from_label(std::string_view s) noexcept;
std::optional<VertexType> vertex_from_edges(EdgeOccupancy e) noexcept;

// Types A2, B1, C1 are exactly those with a bold south edge.
constexpr bool counts_toward_height(VertexType v) noexcept { return edges(v).south; }

// X-by-Y corner of the quadrant; columns and rows are 1-based.
class LatticeConfig {
 public:
  LatticeConfig(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  VertexType at(int x, int y) const noexcept {
    return static_cast<VertexType>(cells_[index(x, y)]);
  }
  void set(int x, int y, VertexType v) noexcept { cells_[index(x, y)] = static_cast<std::uint8_t>(v); }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y - 1) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x - 1);
  }
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

enum class SamplingOrder { AntiDiagonal, RowMajor };

// Each undetermined site (x, y) consumes the keyed uniform u(seed; x, y), so
// every order that visits south and west neighbours first yields the same
// configuration.
LatticeConfig sample_configuration(const ModelParams& p, int X, int Y, std::uint64_t seed,
                                   SamplingOrder order = SamplingOrder::AntiDiagonal);

int height_function(const LatticeConfig& c, double x, double y);

struct ValidationReport {
  bool ok = true;
  std::string first_violation;
  explicit operator bool() const noexcept { return ok; }
};

ValidationReport validate_configuration(const LatticeConfig& c);

// Particle positions on the cut y = t + 1/2, restricted to columns 1..X.
std::vector<int> particles_at_cut(const LatticeConfig& c, int t);

}  // namespace stovex
