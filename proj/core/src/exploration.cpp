#include "opbw/exploration.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "opbw/errors.hpp"

namespace opbw {

ExplorationCluster explore(const EdgeField& field, Site z, int64_t level,
                           const ExploreOptions& options, ReachCache& cache) {
  assert(z.valid());
  if (level < z.i) throw ConfigError("explore: level before root time");
  assert(cache.target_level() == level);

  ExplorationCluster out;
  out.root = z;
  out.level = level;

  Envelope envelope(z.i, level);
  ExamRecorder recorder(options.record_edges);

  // Try starts right to left. Dead starts get their whole cluster
  // explored (the death certificate); the first survivor contributes the
  // right-first search tree and the rightmost path itself.
  Site start = z;
  bool found = false;
  for (int64_t k = 0; k < options.max_starts; ++k, start.x -= 2) {
    if (reaches_level(field, start, cache, &envelope, &recorder)) {
      found = true;
      break;
    }
  }
  if (!found) {
    throw WindowOverflowError(
        "explore: no surviving start within " +
        std::to_string(options.max_starts) + " starts left of x=" +
        std::to_string(z.x) + " (grow the window)");
  }
  out.left_start = start.x;

  if (level == z.i) {
    out.left.start_time = z.i;
    out.left.positions = {static_cast<int32_t>(start.x)};
  } else {
    auto left = rightmost_path(field, start, cache);
    assert(left.has_value());
    out.left = std::move(*left);
  }

  out.right.start_time = z.i;
  out.right.positions.reserve(static_cast<size_t>(level - z.i + 1));
  const auto& best = envelope.levels();
  for (size_t j = 0; j < best.size(); ++j) {
    // Every level holds at least the rightmost-path site.
    assert(best[j] != Envelope::kNone);
    assert(best[j] >= out.left.positions[j]);
    out.right.positions.push_back(best[j]);
  }

  out.examined_count = recorder.count();
  if (options.record_edges) {
    out.examined_keys = recorder.take_keys();
    std::sort(out.examined_keys.begin(), out.examined_keys.end());
    out.examined_keys.erase(
        std::unique(out.examined_keys.begin(), out.examined_keys.end()),
        out.examined_keys.end());
  }
  return out;
}

ExplorationCluster explore(const EdgeField& field, Site z, int64_t level,
                           const ExploreOptions& options) {
  ReachCache cache(level);
  return explore(field, z, level, options, cache);
}

std::optional<LatticePath> right_edge_window(const EdgeField& field, Site z,
                                             int64_t level, int64_t width) {
  assert(z.valid());
  if (level < z.i) throw ConfigError("right_edge_window: bad level");
  if (width < 2) throw ConfigError("right_edge_window: width too small");

  // Occupancy of the window [z.x - width, z.x + steps]. Sites left of
  // the window are occupied at time z.i too; their influence spreads
  // right at speed one, so cells strictly above the moving frontier
  // lo + (j - z.i) are exact. The computed maximum is the true right
  // edge as long as it stays strictly above the frontier.
  const int64_t steps = level - z.i;
  const int64_t lo = z.x - width;
  const int64_t hi = z.x + steps;
  const auto cells = static_cast<size_t>(hi - lo + 1);
  std::vector<uint8_t> cur(cells, 0), nxt(cells, 0);
  for (int64_t x = lo; x <= z.x; ++x) {
    if (((x + z.i) & 1) == 0) cur[static_cast<size_t>(x - lo)] = 1;
  }

  LatticePath path;
  path.start_time = z.i;
  path.positions.reserve(static_cast<size_t>(steps + 1));
  path.positions.push_back(static_cast<int32_t>(z.x));

  int64_t rightmost = z.x;
  for (int64_t j = z.i; j < level; ++j) {
    std::fill(nxt.begin(), nxt.end(), uint8_t{0});
    int64_t next_rightmost = INT64_MIN;
    // No occupied cell can sit right of `rightmost`, so scan up to it.
    for (int64_t x = lo + ((lo + j) & 1 ? 1 : 0); x <= rightmost; x += 2) {
      if (!cur[static_cast<size_t>(x - lo)]) continue;
      const Site s{x, j};
      if (field.is_open(s, Dir::Right)) {
        nxt[static_cast<size_t>(x + 1 - lo)] = 1;
        if (x + 1 > next_rightmost) next_rightmost = x + 1;
      }
      if (field.is_open(s, Dir::Left) && x - 1 >= lo) {
        nxt[static_cast<size_t>(x - 1 - lo)] = 1;
        if (x - 1 > next_rightmost) next_rightmost = x - 1;
      }
    }
    const int64_t frontier = lo + (j + 1 - z.i);
    if (next_rightmost <= frontier) return std::nullopt;  // window touched
    rightmost = next_rightmost;
    path.positions.push_back(static_cast<int32_t>(rightmost));
    cur.swap(nxt);
  }
  return path;
}

LatticePath right_edge_direct(const EdgeField& field, Site z, int64_t level,
                              int64_t initial_width) {
  int64_t width =
      initial_width > 0 ? initial_width : default_window(level - z.i);
  while (width < kCoordLimit / 2) {
    auto path = right_edge_window(field, z, level, width);
    if (path.has_value()) return std::move(*path);
    width *= 2;
  }
  throw WindowOverflowError(
      "right_edge_direct: window exhausted; half-line process died out "
      "inside every window (p too small?)");
}

std::optional<int64_t> first_meeting(const LatticePath& a,
                                     const LatticePath& b, int64_t up_to) {
  const int64_t t0 = std::max(a.start_time, b.start_time);
  const int64_t t1 = std::min({a.end_time(), b.end_time(), up_to});
  for (int64_t t = t0; t <= t1; ++t) {
    if (a.at(t) == b.at(t)) return t;
  }
  return std::nullopt;
}

std::optional<int64_t> right_edge_coalescence(const EdgeField& field, Site z1,
                                              Site z2, int64_t level) {
  if (z1.i != z2.i) throw ConfigError("right_edge_coalescence: z1.i != z2.i");
  if (z1.x == z2.x) return z1.i;  // identical half-lines
  if (z1.x > z2.x) throw ConfigError("right_edge_coalescence: need z1 <= z2");
  const auto c1 = explore(field, z1, level);
  const auto c2 = explore(field, z2, level);
  return first_meeting(c1.right, c2.right, level);
}

StartLabels reach_start_labels(const EdgeField& field, int64_t t0,
                               int64_t y_lo, int64_t y_hi, int64_t level,
                               int64_t x_lo, int64_t x_hi) {
  if (((y_lo + t0) & 1) != 0) ++y_lo;
  if (((y_hi + t0) & 1) != 0) --y_hi;
  if (((x_lo + level) & 1) != 0) ++x_lo;
  if (((x_hi + level) & 1) != 0) --x_hi;
  if (y_lo > y_hi || x_lo > x_hi || level <= t0) {
    throw ConfigError("reach_start_labels: empty ranges");
  }
  const int64_t steps = level - t0;

  // Any oriented path from a start in [y_lo, y_hi] to a cell in
  // [x_lo, x_hi] stays within both cones, so per-level windows
  //   [max(y_lo - s, x_lo - (steps - s)), min(y_hi + s, x_hi + steps - s)]
  // (s = level offset) contain everything relevant. Labels are exact.
  constexpr int64_t kNoLabel = StartLabels::kNoLabel;

  auto window_lo = [&](int64_t s) {
    int64_t w = std::max(y_lo - s, x_lo - (steps - s));
    if (((w + t0 + s) & 1) != 0) ++w;
    return w;
  };
  auto window_hi = [&](int64_t s) {
    int64_t w = std::min(y_hi + s, x_hi + (steps - s));
    if (((w + t0 + s) & 1) != 0) --w;
    return w;
  };

  StartLabels unreachable;
  unreachable.t0 = t0;
  unreachable.level = level;
  unreachable.x_lo = x_lo;
  unreachable.labels.assign(static_cast<size_t>((x_hi - x_lo) / 2 + 1),
                            kNoLabel);

  std::vector<int64_t> cur, nxt;
  {
    const int64_t lo = window_lo(0), hi = window_hi(0);
    if (lo > hi) return unreachable;
    cur.assign(static_cast<size_t>((hi - lo) / 2 + 1), kNoLabel);
    for (int64_t x = lo; x <= hi; x += 2) {
      cur[static_cast<size_t>((x - lo) / 2)] = x;  // each start labels itself
    }
  }

  for (int64_t s = 0; s < steps; ++s) {
    const int64_t lo = window_lo(s), hi = window_hi(s);
    const int64_t nlo = window_lo(s + 1), nhi = window_hi(s + 1);
    if (nlo > nhi) return unreachable;
    nxt.assign(static_cast<size_t>((nhi - nlo) / 2 + 1), kNoLabel);
    for (int64_t x = lo; x <= hi; x += 2) {
      const int64_t lab = cur[static_cast<size_t>((x - lo) / 2)];
      if (lab == kNoLabel) continue;
      const Site site{x, t0 + s};
      if (x + 1 >= nlo && x + 1 <= nhi && field.is_open(site, Dir::Right)) {
        auto& slot = nxt[static_cast<size_t>((x + 1 - nlo) / 2)];
        if (lab < slot) slot = lab;
      }
      if (x - 1 >= nlo && x - 1 <= nhi && field.is_open(site, Dir::Left)) {
        auto& slot = nxt[static_cast<size_t>((x - 1 - nlo) / 2)];
        if (lab < slot) slot = lab;
      }
    }
    cur.swap(nxt);
  }

  StartLabels out;
  out.t0 = t0;
  out.level = level;
  out.x_lo = x_lo;
  const int64_t lo = window_lo(steps);
  out.labels.assign(static_cast<size_t>((x_hi - x_lo) / 2 + 1), kNoLabel);
  for (int64_t x = x_lo; x <= x_hi; x += 2) {
    const int64_t idx = (x - lo) / 2;
    if (idx >= 0 && idx < static_cast<int64_t>(cur.size())) {
      out.labels[static_cast<size_t>((x - x_lo) / 2)] =
          cur[static_cast<size_t>(idx)];
    }
  }
  return out;
}

}  // namespace opbw
