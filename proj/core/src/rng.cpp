#include "stovex/rng.hpp"

namespace stovex {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

KeyedStream::KeyedStream(std::uint64_t seed, StreamDomain domain) noexcept
    : seed_(seed),
      domain_(domain),
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

std::uint64_t KeyedStream::bits(std::uint64_t a, std::uint64_t b) const noexcept {
  const PhiloxCounter out = philox4x32_10(
      {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
       static_cast<std::uint32_t>(a >> 32),
       static_cast<std::uint32_t>(b >> 32) ^ (static_cast<std::uint32_t>(domain_) << 28)},
      key_);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double KeyedStream::uniform(std::uint64_t a, std::uint64_t b) const noexcept {
  return static_cast<double>(bits(a, b) >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return KeyedStream(seed, StreamDomain::Sample).bits(index, 0x5eed);
}

}  // namespace stovex
