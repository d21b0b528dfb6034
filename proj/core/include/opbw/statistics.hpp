#ifndef OPBW_STATISTICS_HPP
#define OPBW_STATISTICS_HPP

#include <cstdint>
#include <vector>

#include "opbw/path.hpp"

namespace opbw {

/// Finite ensemble of trajectories with the truncation operators used by
/// the counting statistics: restriction by start time and by time axis.
class PathSet {
 public:
  PathSet() = default;
  explicit PathSet(std::vector<PiecewisePath> paths)
      : paths_(std::move(paths)) {}

  static PathSet from_lattice(const std::vector<LatticePath>& paths);

  const std::vector<PiecewisePath>& paths() const { return paths_; }
  std::vector<PiecewisePath>& paths() { return paths_; }
  size_t size() const { return paths_.size(); }

  PathSet starting_at(double s) const;   // paths with start time == s
  PathSet starting_by(double s) const;   // paths with start time <= s
  PathSet from_time(double t) const;     // paths restricted to [t, inf)
  std::vector<double> positions_at(double s) const;  // of paths started by s

 private:
  std::vector<PiecewisePath> paths_;
};

/// Number of distinct positions at time t0 + t among paths that started
/// by t0 and pass through the closed window [a, b] at time t0.
int distinct_points_from_window(const PathSet& set, double t0, double t,
                                double a, double b);

/// Number of distinct positions falling in the open interval (a, b) at
/// time t0 + t among paths that started by t0 (no condition at t0).
int distinct_points_in_interval(const PathSet& set, double t0, double t,
                                double a, double b);

struct DensityEstimate {
  int64_t n = 0;
  double p_hat = 0.0;
  double se = 0.0;
  uint64_t replicates = 0;
  uint64_t failures = 0;
};

struct PairDensityParams {
  double p = 0.8;
  int64_t n = 256;
  uint64_t replicates = 10000;
  uint64_t seed = 1;
  int64_t horizon = -1;        // rightmost-path survival horizon; -1 -> 2n
  int64_t search_starts = -1;  // left search width; -1 -> auto from theta
  double max_failure_rate = 1e-3;
  int threads = 0;
};

/// P(the rightmost paths from the half-lines at (0,0) and (2,0) have not
/// coalesced by time n). By translation invariance this equals the point
/// density P(0 in Gamma_0(n)).
DensityEstimate rightmost_path_density(const PairDensityParams& params);

/// Same probability for the right-edge processes; no survival horizon is
/// involved. Equals P(0 in R_0(n)).
DensityEstimate right_edge_density(const PairDensityParams& params);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_se = 0.0;
  double rhs_se = 0.0;
  double combined_se = 0.0;
  double se_mult = 3.0;
  bool pass = false;  // lhs <= rhs + se_mult * combined_se
};

/// Empirical test of P(i, j in R_0(n)) <= P(i in R_0(n)) P(j in R_0(n)).
InequalityCheck negative_correlation_check(double p, int64_t n, int64_t i,
                                           int64_t j, uint64_t replicates,
                                           uint64_t seed, double se_mult = 3.0,
                                           int threads = 0);

struct DisjointOccurrenceCheck {
  InequalityCheck ineq;
  int64_t L = 0;         // number of starts, ceil(sqrt(n))
  double d_n_hat = 0.0;  // P(extreme pair not coalesced by n)
  double mean_size = 0.0;
  double mean_size_se = 0.0;
};

/// Empirical test of P(|R^0_0(n)| >= 2k) <= P(D_n)^k, with R^0_0 built
/// from the L = ceil(sqrt(n)) starts (2x, 0), 0 <= x < L, and D_n the
/// event that the right edges from (0,0) and (2L-2,0) have not coalesced
/// by time n.
DisjointOccurrenceCheck disjoint_occurrence_check(double p, int64_t n,
                                                  int64_t k,
                                                  uint64_t replicates,
                                                  uint64_t seed,
                                                  double se_mult = 3.0,
                                                  int threads = 0);

}  // namespace opbw

#endif  // OPBW_STATISTICS_HPP
