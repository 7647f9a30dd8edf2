#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace remotegate {

// splitmix64 finalizer; also used to fold tag paths into stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic, platform-independent generator. Every random choice in a
// run flows from the scenario seed through derive_seed so reruns are
// byte-identical.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n must be positive. Rejection sampling keeps the
  // distribution exact and implementation-defined-free.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  bool coin() { return (next() & 1ULL) != 0; }

  std::array<std::uint8_t, 16> bytes16() {
    std::array<std::uint8_t, 16> out{};
    const std::uint64_t a = next();
    const std::uint64_t b = next();
    for (int i = 0; i < 8; ++i) {
      out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(a >> (8 * i));
      out[static_cast<std::size_t>(8 + i)] = static_cast<std::uint8_t>(b >> (8 * i));
    }
    return out;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed from a root seed and a tag path,
// e.g. derive_seed(seed, {kStreamDatasets, round}).
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(root ^ 0x243f6a8885a308d3ULL);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p));
  return h;
}

}  // namespace remotegate
