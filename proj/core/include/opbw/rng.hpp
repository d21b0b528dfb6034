#ifndef OPBW_RNG_HPP
#define OPBW_RNG_HPP

#include <cmath>
#include <cstdint>

namespace opbw {

/// SplitMix64 finalizer. Used both as a counter-based hash (edge
/// environment, seed derivation) and as the mixer of the sequential
/// stream below.
inline constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Map a 64-bit word to a double in [0, 1) with 53-bit resolution.
inline double to_unit_double(uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Derives an independent stream seed from a master seed and an index,
/// e.g. one seed per replicate or per sweep cell. Pure function, so
/// replicates can be generated in any order and in parallel.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  uint64_t h = splitmix64(master ^ 0x6f4a91b2c83d5e07ULL);
  h = splitmix64(h ^ splitmix64(index));
  return h;
}

/// Minimal sequential PRNG for simulations that draw in a fixed order
/// (coalescing Brownian motions, coalescing walks). Deterministic across
/// platforms; one instance per replicate.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_ += 0x9e3779b97f4a7c15ULL); }
  double next_unit() { return to_unit_double(next_u64()); }

  /// Uniform in (-1, 1), never exactly 0 by construction of the retry.
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  bool next_bit() { return (next_u64() & 1u) != 0; }

 private:
  uint64_t state_;
};

/// Standard normal variates via the polar (Marsaglia) method on top of a
/// SplitMix64 stream. Avoids std::normal_distribution, whose draw
/// sequence is implementation defined.
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : u_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double a, b, s;
    do {
      a = u_.next_symmetric();
      b = u_.next_symmetric();
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * f;
    have_spare_ = true;
    return a * f;
  }

 private:
  SplitMix64 u_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace opbw

#endif  // OPBW_RNG_HPP
