#pragma once

#include <cmath>
#include <cstdint>

namespace fbounds {

// Small deterministic generator (splitmix64). All randomized operations in
// the library take explicit seeds and draw through this, so results do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exp(1) via inversion.
  double next_exponential() { return -std::log1p(-next_unit()); }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Uniform index in [0, n), unbiased via rejection.
  std::size_t next_index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % bound);
  }

 private:
  std::uint64_t state_;
};

// Independent stream for (seed, index) pairs, e.g. one per bootstrap
// replicate. Any evaluation order of the streams yields the same draws.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng mix(seed ^ (0xd1342543de82ef95ULL * (stream + 1)));
  return mix.next_u64();
}

}  // namespace fbounds
