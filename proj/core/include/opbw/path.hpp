#ifndef OPBW_PATH_HPP
#define OPBW_PATH_HPP

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace opbw {

/// Integer-time trajectory on the lattice: one position per time step,
/// linearly interpolated between integer times. Holds open paths
/// (unit steps) and right-edge trajectories (steps bounded above by +1,
/// unbounded below).
struct LatticePath {
  int64_t start_time = 0;
  std::vector<int32_t> positions;

  int64_t end_time() const {
    return start_time + static_cast<int64_t>(positions.size()) - 1;
  }

  int64_t at(int64_t t) const {
    assert(t >= start_time && t <= end_time());
    return positions[static_cast<size_t>(t - start_time)];
  }

  /// Linear interpolation between integer times.
  double interpolate(double t) const {
    assert(t >= static_cast<double>(start_time) - 1e-9);
    assert(t <= static_cast<double>(end_time()) + 1e-9);
    const double rel = t - static_cast<double>(start_time);
    const auto lo = static_cast<size_t>(std::floor(rel));
    if (lo + 1 >= positions.size()) return positions.back();
    const double frac = rel - static_cast<double>(lo);
    return positions[lo] + frac * (positions[lo + 1] - positions[lo]);
  }

  /// True for open paths: every step is +-1.
  bool unit_steps() const {
    for (size_t k = 1; k < positions.size(); ++k) {
      const int32_t d = positions[k] - positions[k - 1];
      if (d != 1 && d != -1) return false;
    }
    return true;
  }

  friend bool operator==(const LatticePath&, const LatticePath&) = default;
};

/// Real-valued trajectory sampled on a uniform time grid, linearly
/// interpolated. Produced by the diffusive scaling map and by the
/// coalescing Brownian motion simulator.
struct PiecewisePath {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  double start_time() const { return t0; }
  double end_time() const {
    return t0 + dt * static_cast<double>(values.size() - 1);
  }

  double at(double t) const {
    assert(!values.empty());
    const double rel = (t - t0) / dt;
    assert(rel >= -1e-9);
    if (rel <= 0.0) return values.front();
    const auto lo = static_cast<size_t>(rel);
    if (lo + 1 >= values.size()) {
      assert(rel <= static_cast<double>(values.size()) - 1.0 + 1e-6);
      return values.back();
    }
    const double frac = rel - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
  }
};

}  // namespace opbw

#endif  // OPBW_PATH_HPP
