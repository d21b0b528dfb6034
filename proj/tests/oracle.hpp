// Test-only oracles: exhaustive enumeration over finite edge boxes with
// brute-force reachability, kept independent of the library's search
// algorithms. Probabilities come out exact (up to float rounding), so
// Monte Carlo estimates can be checked against them.

#ifndef OPBW_TESTS_ORACLE_HPP
#define OPBW_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "opbw/lattice.hpp"
#include "opbw/path.hpp"

namespace oracle {

/// All oriented edges whose source lies in the cone closure of
/// [x_lo, x_hi] x {t0} up to (excluding) level t1: at level t0 + d the
/// sources span [x_lo - d, x_hi + d], parity filtered.
struct EdgeBox {
  int64_t t0 = 0;
  int64_t t1 = 1;
  int64_t x_lo = 0;
  int64_t x_hi = 0;
  std::vector<opbw::Edge> edges;
  std::unordered_map<uint64_t, size_t> index;

  static EdgeBox make(int64_t x_lo, int64_t x_hi, int64_t t0, int64_t t1) {
    EdgeBox box;
    box.t0 = t0;
    box.t1 = t1;
    box.x_lo = x_lo;
    box.x_hi = x_hi;
    for (int64_t j = t0; j < t1; ++j) {
      const int64_t d = j - t0;
      for (int64_t x = x_lo - d; x <= x_hi + d; ++x) {
        if (((x + j) & 1) != 0) continue;
        for (const auto dir : {opbw::Dir::Left, opbw::Dir::Right}) {
          box.index[opbw::edge_key({x, j}, dir)] = box.edges.size();
          box.edges.push_back({{x, j}, dir});
        }
      }
    }
    return box;
  }
};

/// One openness assignment for the box; edges outside the box are closed.
struct Assignment {
  const EdgeBox* box = nullptr;
  uint64_t bits = 0;

  bool is_open(opbw::Site from, opbw::Dir dir) const {
    const auto it = box->index.find(opbw::edge_key(from, dir));
    if (it == box->index.end()) return false;
    return (bits >> it->second) & 1u;
  }
};

/// Level sets reachable from the given sources by open oriented edges.
inline std::vector<std::set<int64_t>> reach_sets(
    const Assignment& a, const std::vector<int64_t>& sources, int64_t t0,
    int64_t t1) {
  std::vector<std::set<int64_t>> levels;
  levels.emplace_back(sources.begin(), sources.end());
  for (int64_t j = t0; j < t1; ++j) {
    std::set<int64_t> next;
    for (const int64_t x : levels.back()) {
      if (a.is_open({x, j}, opbw::Dir::Left)) next.insert(x - 1);
      if (a.is_open({x, j}, opbw::Dir::Right)) next.insert(x + 1);
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

/// Pointwise maximum of all open paths from z to the given level, by
/// enumerating every +-1 step sequence. Nullopt when no open path exists.
template <class Openness>
std::optional<std::vector<int64_t>> brute_rightmost(const Openness& field,
                                                    opbw::Site z,
                                                    int64_t level) {
  const int64_t steps = level - z.i;
  std::optional<std::vector<int64_t>> best;
  for (uint64_t mask = 0; mask < (uint64_t(1) << steps); ++mask) {
    std::vector<int64_t> path{z.x};
    opbw::Site s = z;
    bool open = true;
    for (int64_t k = 0; k < steps; ++k) {
      const auto dir =
          ((mask >> k) & 1u) ? opbw::Dir::Right : opbw::Dir::Left;
      if (!field.is_open(s, dir)) {
        open = false;
        break;
      }
      s = dir == opbw::Dir::Right ? opbw::right_child(s)
                                  : opbw::left_child(s);
      path.push_back(s.x);
    }
    if (!open) continue;
    if (!best) {
      best = path;
    } else {
      for (size_t k = 0; k < path.size(); ++k) {
        (*best)[k] = std::max((*best)[k], path[k]);
      }
    }
  }
  return best;
}

/// Exact probability of an event under independent Bernoulli(p) edges.
inline double exact_probability(
    const EdgeBox& box, double p,
    const std::function<bool(const Assignment&)>& event) {
  const size_t m = box.edges.size();
  std::vector<double> pow_open(m + 1, 1.0), pow_closed(m + 1, 1.0);
  for (size_t k = 1; k <= m; ++k) {
    pow_open[k] = pow_open[k - 1] * p;
    pow_closed[k] = pow_closed[k - 1] * (1.0 - p);
  }
  double total = 0.0;
  for (uint64_t bits = 0; bits < (uint64_t(1) << m); ++bits) {
    const Assignment a{&box, bits};
    if (!event(a)) continue;
    const auto open = static_cast<size_t>(__builtin_popcountll(bits));
    total += pow_open[open] * pow_closed[m - open];
  }
  return total;
}

/// Exact P(the right edges of the half-lines at (0,0) and (2,0) have not
/// met by time n), via the difference cloud of sites reachable from
/// (2, 0) but not from the lower half-line: the right edges differ at
/// time j exactly when that cloud is non-empty.
inline std::vector<int64_t> halfline_sources(int64_t n) {
  // Starts below -2n cannot influence any event inside the cone of
  // (2, 0) within n levels.
  std::vector<int64_t> sources;
  for (int64_t x = -2 * n; x <= 0; x += 2) sources.push_back(x);
  return sources;
}

inline double exact_right_edge_pair_noncoalescence(double p, int64_t n) {
  const auto box = EdgeBox::make(-2 * n, 2, 0, n);
  return exact_probability(box, p, [n](const Assignment& a) {
    auto lower_sources = halfline_sources(n);
    auto upper_sources = lower_sources;
    upper_sources.push_back(2);
    const auto lower = reach_sets(a, lower_sources, 0, n);
    const auto upper = reach_sets(a, upper_sources, 0, n);
    for (int64_t j = 1; j <= n; ++j) {
      std::set<int64_t> cloud;
      std::set_difference(upper[j].begin(), upper[j].end(), lower[j].begin(),
                          lower[j].end(),
                          std::inserter(cloud, cloud.begin()));
      if (cloud.empty()) return false;
    }
    return true;
  });
}

/// Exact P(the rightmost paths from the half-lines at (0,0) and (2,0),
/// at survival horizon n, have not coalesced by time n). Non-coalescence
/// requires (2,0) to reach level n on its own and the lower half-line to
/// miss every site of the rightmost path from (2, 0).
inline double exact_rightmost_pair_noncoalescence(double p, int64_t n) {
  const auto box = EdgeBox::make(-2 * n, 2, 0, n);
  return exact_probability(box, p, [n](const Assignment& a) {
    const auto gamma2 = brute_rightmost(a, {2, 0}, n);
    if (!gamma2) return false;  // paths share a start: coalesced at 0
    const auto lower = reach_sets(a, halfline_sources(n), 0, n);
    for (int64_t j = 1; j <= n; ++j) {
      if (lower[j].count((*gamma2)[static_cast<size_t>(j)]) > 0) {
        return false;
      }
    }
    return true;
  });
}

}  // namespace oracle

#endif  // OPBW_TESTS_ORACLE_HPP
