#ifndef OPBW_PATHS_HPP
#define OPBW_PATHS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "opbw/lattice.hpp"
#include "opbw/path.hpp"
#include "opbw/reach.hpp"

namespace opbw {

/// Breadth-first level sets of the open cluster of a site, truncated at
/// an absolute time level.
struct ClusterSummary {
  Site root;
  int64_t level = 0;
  std::vector<std::vector<int32_t>> levels;  // reached sites per time step
  bool survived = false;

  uint64_t size() const {
    uint64_t total = 0;
    for (const auto& l : levels) total += l.size();
    return total;
  }
};

ClusterSummary cluster(const EdgeField& field, Site z, int64_t level);

/// Does the open cluster of z reach the given absolute time level?
/// Finite-horizon surrogate for "z is a percolation point".
bool survives(const EdgeField& field, Site z, int64_t level);
bool survives(const EdgeField& field, Site z, ReachCache& cache);

/// Rightmost open path from z to the cache's target level, or nullopt if
/// the cluster of z dies first. The returned path dominates every open
/// path from z pointwise.
std::optional<LatticePath> rightmost_path(const EdgeField& field, Site z,
                                          int64_t level);
std::optional<LatticePath> rightmost_path(const EdgeField& field, Site z,
                                          ReachCache& cache);

/// Rightmost open path to `level` from the half-line (-inf, z.x] x {z.i},
/// searching at most `search_starts` starts leftward from z.x.
/// Throws NoSurvivorError when no start in the window reaches the level.
LatticePath halfline_rightmost_path(const EdgeField& field, Site z,
                                    int64_t level, int64_t search_starts);
LatticePath halfline_rightmost_path(const EdgeField& field, Site z,
                                    ReachCache& cache, int64_t search_starts);

/// Search width for half-line queries so that the probability of finding
/// no survivor is about `delta`: ceil(log(1/delta) / theta_hat).
int64_t recommended_search_width(double theta_hat, double delta);

/// Monte Carlo estimate of the survival rate P(cluster of the origin
/// reaches `steps` levels) at parameter p, used to size search windows.
double estimate_survival_rate(double p, int64_t steps, uint64_t probes,
                              uint64_t seed);

}  // namespace opbw

#endif  // OPBW_PATHS_HPP
