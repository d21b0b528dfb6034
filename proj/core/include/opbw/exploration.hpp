#ifndef OPBW_EXPLORATION_HPP
#define OPBW_EXPLORATION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "opbw/lattice.hpp"
#include "opbw/path.hpp"
#include "opbw/paths.hpp"
#include "opbw/reach.hpp"

namespace opbw {

// Exploration cluster of a half-line initial condition. The cluster is
// the set of edges one must examine to identify the rightmost open path
// from (-inf, z.x] x {z.i} to the target level: the full (dead) clusters
// of the starts right of the first surviving one, plus the right-first
// search tree of the survivor. Its left boundary is that rightmost path;
// its right boundary is the right edge, the rightmost site reachable
// from the half-line at each time.

struct ExplorationCluster {
  Site root;
  int64_t level = 0;       // absolute horizon
  int64_t left_start = 0;  // start of the surviving rightmost path
  LatticePath left;        // rightmost open path, unit steps
  LatticePath right;       // right edge; steps bounded above by +1
  uint64_t examined_count = 0;
  std::vector<uint64_t> examined_keys;  // packed edges, iff recorded
};

struct ExploreOptions {
  int64_t max_starts = int64_t(1) << 14;  // left search budget
  bool record_edges = false;
};

ExplorationCluster explore(const EdgeField& field, Site z, int64_t level,
                           const ExploreOptions& options = {});
ExplorationCluster explore(const EdgeField& field, Site z, int64_t level,
                           const ExploreOptions& options, ReachCache& cache);

/// Default adaptive window width for right-edge computations at horizon
/// of `steps` levels.
inline int64_t default_window(int64_t steps) {
  int64_t w = 16;
  while (w * w < 16 * steps) ++w;  // ~ 4 sqrt(steps)
  return w + 16;
}

/// Right edge of the half-line (-inf, z.x] x {z.i} up to `level`,
/// computed by direct level-by-level propagation of the reachable set
/// inside a window of the given width. Independent of explore() and used
/// to cross-check it. Returns nullopt when the unknown left frontier
/// could have influenced the result (window touched).
std::optional<LatticePath> right_edge_window(const EdgeField& field, Site z,
                                             int64_t level, int64_t width);

/// right_edge_window with doubling on window-touched until it succeeds.
LatticePath right_edge_direct(const EdgeField& field, Site z, int64_t level,
                              int64_t initial_width = -1);

/// First time the right edges of the half-lines at z1 and z2 agree, or
/// nullopt if they have not met by `level`. Meeting is absorbing (the
/// processes coalesce), so this is their coalescence time.
std::optional<int64_t> right_edge_coalescence(const EdgeField& field, Site z1,
                                              Site z2, int64_t level);

/// First integer time in [max(start times), up_to] where the two
/// trajectories are equal.
std::optional<int64_t> first_meeting(const LatticePath& a,
                                     const LatticePath& b, int64_t up_to);

/// Minimal-start labels at a target level. label_at(x) is the smallest
/// even start y in [y_lo, y_hi] whose half-line reaches (x, level); the
/// site is reachable from (-inf, y] x {t0} iff label_at(x) <= y. One
/// joint propagation answers right-edge queries for a whole range of
/// starts; exact by construction (per-level windows contain every path
/// from the start range to the cell range).
struct StartLabels {
  static constexpr int64_t kNoLabel = INT64_MAX;
  int64_t t0 = 0;
  int64_t level = 0;
  int64_t x_lo = 0;  // parity-aligned with level
  std::vector<int64_t> labels;  // step 2 in x

  int64_t label_at(int64_t x) const {
    if (x < x_lo) return kNoLabel;
    const auto idx = static_cast<size_t>((x - x_lo) / 2);
    return idx < labels.size() ? labels[idx] : kNoLabel;
  }
};

StartLabels reach_start_labels(const EdgeField& field, int64_t t0,
                               int64_t y_lo, int64_t y_hi, int64_t level,
                               int64_t x_lo, int64_t x_hi);

}  // namespace opbw

#endif  // OPBW_EXPLORATION_HPP
