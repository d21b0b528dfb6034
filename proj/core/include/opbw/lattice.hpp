#ifndef OPBW_LATTICE_HPP
#define OPBW_LATTICE_HPP

#include <cassert>
#include <cstdint>
#include <utility>

#include "opbw/rng.hpp"

namespace opbw {

// Space-time lattice: sites (x, i) with x + i even, oriented edges from
// (x, i) to (x - 1, i + 1) and (x + 1, i + 1). Time runs upward.

struct Site {
  int64_t x = 0;  // spatial coordinate
  int64_t i = 0;  // time coordinate

  bool valid() const { return ((x + i) & 1) == 0; }
  friend bool operator==(const Site&, const Site&) = default;
};

enum class Dir : uint8_t { Left = 0, Right = 1 };

struct Edge {
  Site from;
  Dir dir = Dir::Right;

  Site to() const {
    return {from.x + (dir == Dir::Right ? 1 : -1), from.i + 1};
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline Site left_child(Site z) { return {z.x - 1, z.i + 1}; }
inline Site right_child(Site z) { return {z.x + 1, z.i + 1}; }
inline std::pair<Site, Site> children(Site z) {
  return {left_child(z), right_child(z)};
}
inline std::pair<Site, Site> parents(Site z) {
  return {Site{z.x - 1, z.i - 1}, Site{z.x + 1, z.i - 1}};
}

// Coordinates are kept well inside int64 so packed 31-bit-per-axis keys
// (hashing, caches) never wrap. Anything near this bound indicates a
// runaway computation, not a legitimate workload.
inline constexpr int64_t kCoordLimit = int64_t(1) << 29;

inline bool coord_in_range(Site z) {
  return z.x > -kCoordLimit && z.x < kCoordLimit && z.i > -kCoordLimit &&
         z.i < kCoordLimit;
}

/// Packs a site into a 62-bit key (31 bits per axis, biased).
inline uint64_t site_key(Site z) {
  assert(coord_in_range(z));
  const uint64_t ux = static_cast<uint64_t>(z.x + (int64_t(1) << 30));
  const uint64_t ui = static_cast<uint64_t>(z.i + (int64_t(1) << 30));
  return (ui << 31) | ux;
}

/// Packs an oriented edge into a 63-bit key.
inline uint64_t edge_key(Site from, Dir d) {
  return (site_key(from) << 1) | static_cast<uint64_t>(d);
}

/// Deterministic Bernoulli(p) environment on the oriented edges.
///
/// Each edge's openness bit is a counter-based hash of (seed, edge), so
/// edges can be sampled lazily in any order, any number of times, without
/// shared state. Immutable after construction and safe to evaluate from
/// any number of threads.
class EdgeField {
 public:
  EdgeField(double p, uint64_t seed) : p_(p), seed_(seed) {
    assert(p >= 0.0 && p <= 1.0);
  }

  double p() const { return p_; }
  uint64_t seed() const { return seed_; }

  bool is_open(Site from, Dir d) const {
    uint64_t h = splitmix64(seed_ ^ 0x243f6a8885a308d3ULL);
    h = splitmix64(h ^ static_cast<uint64_t>(from.x));
    h = splitmix64(h ^ static_cast<uint64_t>(from.i));
    h = splitmix64(h ^ static_cast<uint64_t>(d));
    return to_unit_double(h) < p_;
  }

  bool is_open(const Edge& e) const { return is_open(e.from, e.dir); }

 private:
  double p_;
  uint64_t seed_;
};

}  // namespace opbw

#endif  // OPBW_LATTICE_HPP
