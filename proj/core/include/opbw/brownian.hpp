#ifndef OPBW_BROWNIAN_HPP
#define OPBW_BROWNIAN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "opbw/statistics.hpp"

namespace opbw {

// Continuum and exactly-solvable discrete oracles: finite skeletons of
// coalescing Brownian motions, coalescing +-1 walks, and the closed-form
// counting expectations they are compared against.

/// Expected number of distinct points in (a, b) hit at time t by the
/// system of coalescing Brownian paths started from everywhere at an
/// earlier time: (b - a) / sqrt(pi t).
double brownian_web_interval_count_mean(double t, double a, double b);

/// Intensity of the time-1 point set of that system: 1 / sqrt(pi).
double brownian_web_point_intensity();

struct CoalescingBmParams {
  std::vector<double> starts;  // strictly increasing, all at time 0
  double t_end = 1.0;
  double dt = 0.01;
  uint64_t seed = 1;
  int refine_depth = 6;  // crossing bisection resolution dt / 2^depth
};

/// Euler-discretized coalescing Brownian motions. A pair coalesces at the
/// first step where their order would reverse; the crossing is refined by
/// bridge bisection before the merged path continues. Coalesced paths
/// share values exactly, so distinct-point counters are well defined.
PathSet simulate_coalescing_bm(const CoalescingBmParams& params);

/// Final positions only (one value per surviving group, increasing).
std::vector<double> coalescing_bm_endpoints(const CoalescingBmParams& params);

/// Runs the system at resolution dt and dt/2 on shared Brownian
/// increments (common random numbers), so the difference of derived
/// estimates isolates the discretization effect. Returns
/// {endpoints at dt, endpoints at dt/2}.
std::pair<std::vector<double>, std::vector<double>>
coalescing_bm_endpoints_two_scale(const CoalescingBmParams& params);

/// Coalescing +-1 walks from even starts at time 0; walkers merge when
/// they meet. One path per start, coalesced paths share values.
PathSet simulate_coalescing_walks(const std::vector<int64_t>& starts,
                                  int64_t n, uint64_t seed);

/// Probability that two independent +-1 walks started 2d apart meet
/// within n steps, by dynamic programming on the difference walk
/// (steps -1/0/+1 with probabilities 1/4, 1/2, 1/4, absorbed at 0).
double exact_pair_meeting_probability(int64_t d, int64_t n);

}  // namespace opbw

#endif  // OPBW_BROWNIAN_HPP
