#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace red {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64 generator. Every randomized component in this library owns one
// instance per derived stream, so results never depend on evaluation order.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // uniform in [0, 1), 53 random mantissa bits
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, n); n must be positive
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // standard normal via Box-Muller; consumes two draws
  double next_gaussian() {
    double u = next_unit();
    double v = next_unit();
    if (u <= 0.0) u = 0x1.0p-53;  // keep log finite
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }

 private:
  std::uint64_t state_;
};

// Seed for the stream owned by one coordinate tuple, e.g.
// (sentence_index, word_index) for noise or (sentence, token, sample) for
// posterior sampling. Each coordinate is folded through mix64 so streams for
// distinct tuples are uncorrelated.
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> coords) {
  std::uint64_t s = mix64(seed + kGoldenGamma);
  for (std::uint64_t c : coords) {
    s = mix64(s ^ (c + kGoldenGamma));
  }
  return s;
}

}  // namespace red
