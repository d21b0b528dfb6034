#include "opbw/paths.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "opbw/errors.hpp"

namespace opbw {

ClusterSummary cluster(const EdgeField& field, Site z, int64_t level) {
  assert(z.valid());
  if (level < z.i) throw ConfigError("cluster: level before root time");
  if (!coord_in_range({z.x - (level - z.i), z.i}) ||
      !coord_in_range({z.x + (level - z.i), level})) {
    throw WindowOverflowError("cluster: cone exceeds coordinate window");
  }
  ClusterSummary out;
  out.root = z;
  out.level = level;
  out.levels.reserve(static_cast<size_t>(level - z.i + 1));
  out.levels.push_back({static_cast<int32_t>(z.x)});
  std::vector<int32_t> next;
  for (int64_t j = z.i; j < level && !out.levels.back().empty(); ++j) {
    next.clear();
    for (const int32_t x : out.levels.back()) {
      const Site s{x, j};
      if (field.is_open(s, Dir::Left)) {
        next.push_back(static_cast<int32_t>(x - 1));
      }
      if (field.is_open(s, Dir::Right)) {
        next.push_back(static_cast<int32_t>(x + 1));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.levels.push_back(next);
  }
  out.survived = out.levels.size() ==
                     static_cast<size_t>(level - z.i + 1) &&
                 !out.levels.back().empty();
  return out;
}

bool survives(const EdgeField& field, Site z, ReachCache& cache) {
  return reaches_level(field, z, cache);
}

bool survives(const EdgeField& field, Site z, int64_t level) {
  ReachCache cache(level);
  return reaches_level(field, z, cache);
}

namespace {

/// Walks the rightmost open path from a site already known to reach the
/// cache's target level, reading memoized verdicts left behind by the
/// reachability search.
LatticePath extract_rightmost(const EdgeField& field, Site from,
                              ReachCache& cache) {
  const int64_t level = cache.target_level();
  LatticePath path;
  path.start_time = from.i;
  path.positions.reserve(static_cast<size_t>(level - from.i + 1));
  path.positions.push_back(static_cast<int32_t>(from.x));
  Site s = from;
  while (s.i < level) {
    const Site rc = right_child(s);
    bool go_right = false;
    if (field.is_open(s, Dir::Right)) {
      go_right = rc.i == level || cache.lookup(rc) == kVerdictAlive;
    }
    if (go_right) {
      s = rc;
    } else {
      assert(field.is_open(s, Dir::Left));
      s = left_child(s);
      assert(s.i == level || cache.lookup(s) == kVerdictAlive);
    }
    path.positions.push_back(static_cast<int32_t>(s.x));
  }
  return path;
}

}  // namespace

std::optional<LatticePath> rightmost_path(const EdgeField& field, Site z,
                                          ReachCache& cache) {
  assert(z.valid());
  if (cache.target_level() < z.i + 1) {
    throw ConfigError("rightmost_path: level must be past the root");
  }
  if (!reaches_level(field, z, cache)) return std::nullopt;
  return extract_rightmost(field, z, cache);
}

std::optional<LatticePath> rightmost_path(const EdgeField& field, Site z,
                                          int64_t level) {
  ReachCache cache(level);
  return rightmost_path(field, z, cache);
}

LatticePath halfline_rightmost_path(const EdgeField& field, Site z,
                                    ReachCache& cache,
                                    int64_t search_starts) {
  assert(z.valid());
  Site start = z;
  for (int64_t k = 0; k < search_starts; ++k, start.x -= 2) {
    if (reaches_level(field, start, cache)) {
      return extract_rightmost(field, start, cache);
    }
  }
  throw NoSurvivorError(
      "halfline_rightmost_path: no surviving start within " +
      std::to_string(search_starts) + " sites left of x=" +
      std::to_string(z.x));
}

LatticePath halfline_rightmost_path(const EdgeField& field, Site z,
                                    int64_t level, int64_t search_starts) {
  ReachCache cache(level);
  return halfline_rightmost_path(field, z, cache, search_starts);
}

int64_t recommended_search_width(double theta_hat, double delta) {
  if (theta_hat <= 0.0) return 1 << 16;
  const double w = std::ceil(std::log(1.0 / delta) / theta_hat);
  return std::clamp<int64_t>(static_cast<int64_t>(w), 8, 1 << 16);
}

double estimate_survival_rate(double p, int64_t steps, uint64_t probes,
                              uint64_t seed) {
  uint64_t alive = 0;
  ReachCache cache(steps);
  for (uint64_t k = 0; k < probes; ++k) {
    const EdgeField field(p, derive_seed(seed, k));
    cache.reset(steps);
    if (reaches_level(field, {0, 0}, cache)) ++alive;
  }
  return static_cast<double>(alive) / static_cast<double>(probes);
}

}  // namespace opbw
