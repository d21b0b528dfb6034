#include "opbw/scaling.hpp"

#include <cassert>
#include <cmath>

#include "opbw/errors.hpp"
#include "opbw/exploration.hpp"
#include "opbw/parallel.hpp"

namespace opbw {

namespace {

void check(const ScalingParams& sp) {
  if (sp.sigma <= 0.0) throw ConfigError("scaling: sigma must be positive");
  if (sp.eps <= 0.0) throw ConfigError("scaling: eps must be positive");
}

}  // namespace

PiecewisePath apply_scaling(const LatticePath& path, const ScalingParams& sp) {
  check(sp);
  const double root_eps = std::sqrt(sp.eps);
  PiecewisePath out;
  out.t0 = sp.eps * static_cast<double>(path.start_time);
  out.dt = sp.eps;
  out.values.reserve(path.positions.size());
  for (size_t k = 0; k < path.positions.size(); ++k) {
    const double t = static_cast<double>(path.start_time) +
                     static_cast<double>(k);
    out.values.push_back(root_eps * (path.positions[k] - sp.alpha * t) /
                         sp.sigma);
  }
  return out;
}

PiecewisePath apply_scaling(const PiecewisePath& path,
                            const ScalingParams& sp) {
  check(sp);
  const double root_eps = std::sqrt(sp.eps);
  PiecewisePath out;
  out.t0 = sp.eps * path.t0;
  out.dt = sp.eps * path.dt;
  out.values.reserve(path.values.size());
  for (size_t k = 0; k < path.values.size(); ++k) {
    const double t = path.t0 + path.dt * static_cast<double>(k);
    out.values.push_back(root_eps * (path.values[k] - sp.alpha * t) /
                         sp.sigma);
  }
  return out;
}

namespace {

struct RegenSums {
  int64_t dx = 0;
  int64_t dt = 0;
  int64_t dxx = 0;
  int64_t dxt = 0;
  int64_t dtt = 0;
  int64_t count = 0;
};

}  // namespace

DriftDiffusivity estimate_drift_diffusivity(const DriftEstimateParams& params) {
  if (params.p <= 0.0 || params.p > 1.0) {
    throw ConfigError("drift estimate: need p in (0, 1]");
  }
  if (params.horizon < 4) throw ConfigError("drift estimate: horizon < 4");
  if (params.replicates < 2) {
    throw ConfigError("drift estimate: need at least 2 replicates");
  }

  const int64_t horizon = params.horizon;
  const int64_t cutoff = horizon / 2;  // survival margin for regenerations
  std::vector<RegenSums> per_rep(params.replicates);

  parallel_replicates(
      params.replicates, params.threads,
      [&] { return ReachCache(horizon); },
      [&](ReachCache& cache, uint64_t rep) {
        const EdgeField field(params.p, derive_seed(params.seed, rep));
        cache.reset(horizon);
        const auto cl = explore(field, {0, 0}, horizon, {}, cache);
        RegenSums& sums = per_rep[rep];
        int64_t prev = -1;
        for (int64_t j = 0; j <= cutoff; ++j) {
          if (cl.left.at(j) != cl.right.at(j)) continue;
          if (prev >= 0) {
            const int64_t dt = j - prev;
            const int64_t dx = cl.left.at(j) - cl.left.at(prev);
            sums.dx += dx;
            sums.dt += dt;
            sums.dxx += dx * dx;
            sums.dxt += dx * dt;
            sums.dtt += dt * dt;
            ++sums.count;
          }
          prev = j;
        }
      });

  RegenSums total;
  for (const auto& s : per_rep) {
    total.dx += s.dx;
    total.dt += s.dt;
    total.dxx += s.dxx;
    total.dxt += s.dxt;
    total.dtt += s.dtt;
    total.count += s.count;
  }
  if (total.count < static_cast<int64_t>(params.min_regenerations) ||
      total.dt <= 0) {
    throw InsufficientDataError(
        "drift estimate: only " + std::to_string(total.count) +
        " regeneration increments observed; increase horizon or replicates");
  }

  const double T = static_cast<double>(total.dt);
  const double alpha = static_cast<double>(total.dx) / T;
  const double resid = static_cast<double>(total.dxx) -
                       2.0 * alpha * static_cast<double>(total.dxt) +
                       alpha * alpha * static_cast<double>(total.dtt);
  const double sigma_sq = std::max(0.0, resid / T);
  const double sigma = std::sqrt(sigma_sq);

  // Replicate-level batch means for the two ratio estimators.
  const auto reps = static_cast<double>(params.replicates);
  const double t_bar = T / reps;
  double su = 0.0, sv = 0.0;
  for (const auto& s : per_rep) {
    const double u = static_cast<double>(s.dx) - alpha * s.dt;
    const double resid_r = static_cast<double>(s.dxx) -
                           2.0 * alpha * static_cast<double>(s.dxt) +
                           alpha * alpha * static_cast<double>(s.dtt);
    const double v = resid_r - sigma_sq * s.dt;
    su += u * u;
    sv += v * v;
  }
  DriftDiffusivity out;
  out.alpha = alpha;
  out.sigma = sigma;
  out.alpha_se = std::sqrt(su / (reps - 1.0) / reps) / t_bar;
  const double sigma_sq_se = std::sqrt(sv / (reps - 1.0) / reps) / t_bar;
  out.sigma_se = sigma > 0.0 ? sigma_sq_se / (2.0 * sigma) : 0.0;
  out.regenerations = static_cast<uint64_t>(total.count);
  out.mean_spacing = T / static_cast<double>(total.count);
  return out;
}

}  // namespace opbw
