#ifndef OPBW_EXPERIMENT_HPP
#define OPBW_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "opbw/csv.hpp"

namespace opbw {

enum class ExperimentKind {
  Density,          // rightmost-path pair non-coalescence
  RightEdgeDensity, // right-edge pair non-coalescence
  NegCor,           // negative correlation of right-edge membership
  Disjoint,         // disjoint-occurrence bound on |R^0_0(n)|
  Clt,              // KS shape of the standardized displacement
  EtaHatBw,         // coalescing-BM interval counter vs closed form
  CoalescenceTail,  // scaled pair coalescence times, n vs 4n
  Drift,            // alpha / sigma estimation
};

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);
std::vector<ExperimentKind> all_experiments();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Density;
  double p = 0.8;
  int64_t n = 256;
  int64_t horizon = -1;    // -1: experiment-specific default
  uint64_t replicates = 10000;
  int64_t window = -1;     // -1: adaptive default
  uint64_t seed = 1;
  double se_mult = 3.0;
  double sigma = 0.0;      // prior sigma for density normalization (0: none)
  double dt = 0.0;         // coalescing-BM step override (0: default)
  int threads = 0;         // 0: OPBW_THREADS or hardware
  std::string out;         // output path; empty: stdout

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

struct RunResult {
  std::vector<ResultRow> rows;
  bool any_fail = false;
  std::vector<std::string> warnings;
};

/// Executes the experiment; pure compute, no file IO.
RunResult run_experiment(const ExperimentConfig& config);

/// Executes and writes CSV (config.out or stdout) plus a JSON sidecar
/// (<out>.json) with the full config, versions and timing.
/// Exit status: 0 ok, 2 a statistical check failed, 1 error.
int run_experiment_to_files(const ExperimentConfig& config);

struct SweepSpec {
  ExperimentConfig base;
  // Cartesian grid: parameter name -> values. Cell seeds derive from the
  // cell's parameter assignment, not its position, so permuting the grid
  // leaves every row unchanged.
  std::vector<std::pair<std::string, std::vector<std::string>>> grid;
};

SweepSpec sweep_from_json(const std::string& text);
RunResult run_sweep(const SweepSpec& spec);
int run_sweep_to_files(const SweepSpec& spec, const std::string& out);

/// Threshold below which experiment drivers warn that supercritical
/// asymptotics are not expected (approximate criticality from the
/// literature, not a claim of this library).
inline constexpr double kSupercriticalWarnBelow = 0.65;

/// Tolerance of the normalized-density check at desk scale.
inline constexpr double kDensityTolerance = 0.15;

}  // namespace opbw

#endif  // OPBW_EXPERIMENT_HPP
