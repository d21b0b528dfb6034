#ifndef OPBW_SCALING_HPP
#define OPBW_SCALING_HPP

#include <cstdint>

#include "opbw/path.hpp"

namespace opbw {

/// Parameters of the shearing and diffusive scaling map
/// (x, t) -> (sqrt(eps) (x - alpha t) / sigma, eps t).
struct ScalingParams {
  double alpha = 0.0;  // drift, lattice units of space per time step
  double sigma = 1.0;  // diffusivity, lattice units per sqrt(time)
  double eps = 1.0;    // scale parameter in (0, 1]
};

PiecewisePath apply_scaling(const LatticePath& path, const ScalingParams& sp);
PiecewisePath apply_scaling(const PiecewisePath& path,
                            const ScalingParams& sp);

struct DriftEstimateParams {
  double p = 0.8;
  int64_t horizon = 8192;       // levels explored per replicate
  uint64_t replicates = 1000;
  uint64_t seed = 1;
  uint64_t min_regenerations = 100;
  int threads = 0;              // 0 = auto
};

struct DriftDiffusivity {
  double alpha = 0.0;
  double sigma = 0.0;
  double alpha_se = 0.0;
  double sigma_se = 0.0;
  uint64_t regenerations = 0;
  double mean_spacing = 0.0;  // mean time between regeneration points
};

/// Estimates the asymptotic speed alpha and diffusivity sigma of the
/// rightmost path from regeneration increments.
///
/// A time j is a regeneration point when the rightmost reachable site of
/// the half-line exploration lies on the rightmost open path itself
/// (equivalently, that site survives to the horizon). Between successive
/// regeneration points the (space, time) increments of the path are
/// treated as i.i.d.; only points in the first half of the horizon are
/// used so the survival surrogate has a wide margin. Standard errors are
/// replicate-level batch means. All accumulators are integers, so the
/// result does not depend on the reduction order.
DriftDiffusivity estimate_drift_diffusivity(const DriftEstimateParams& params);

}  // namespace opbw

#endif  // OPBW_SCALING_HPP
