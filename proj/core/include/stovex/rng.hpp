#pragma once

#include <array>
#include <cstdint>

namespace stovex {

// Philox4x32-10 (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

enum class StreamDomain : std::uint32_t {
  Lattice = 1,   // (x, y) site draws, shared with site-keyed particle updates
  Particle = 2,  // (particle index, time) draws
  Sample = 3,    // per-sample seed derivation
  Test = 4,
};

// Stateless uniform source: every value is a pure function of
// (seed, domain, a, b), so draw order and threading never affect results.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, StreamDomain domain) noexcept;

  std::uint64_t bits(std::uint64_t a, std::uint64_t b) const noexcept;
  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t a, std::uint64_t b) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  StreamDomain domain() const noexcept { return domain_; }

 private:
  std::uint64_t seed_;
  StreamDomain domain_;
  PhiloxKey key_;
};

// Seed for the s-th independent replica of an experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

inline constexpr std::uint64_t kDefaultSeed = 20160112;

}  // namespace stovex
