#include "opbw/statistics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "opbw/errors.hpp"
#include "opbw/exploration.hpp"
#include "opbw/parallel.hpp"
#include "opbw/paths.hpp"

namespace opbw {

PathSet PathSet::from_lattice(const std::vector<LatticePath>& paths) {
  std::vector<PiecewisePath> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    PiecewisePath q;
    q.t0 = static_cast<double>(p.start_time);
    q.dt = 1.0;
    q.values.assign(p.positions.begin(), p.positions.end());
    out.push_back(std::move(q));
  }
  return PathSet(std::move(out));
}

PathSet PathSet::starting_at(double s) const {
  std::vector<PiecewisePath> out;
  for (const auto& p : paths_) {
    if (p.t0 == s) out.push_back(p);
  }
  return PathSet(std::move(out));
}

PathSet PathSet::starting_by(double s) const {
  std::vector<PiecewisePath> out;
  for (const auto& p : paths_) {
    if (p.t0 <= s) out.push_back(p);
  }
  return PathSet(std::move(out));
}

PathSet PathSet::from_time(double t) const {
  std::vector<PiecewisePath> out;
  for (const auto& p : paths_) {
    if (p.t0 >= t) {
      out.push_back(p);
      continue;
    }
    // Drop grid points before t; the new start is the first grid point
    // at or after t.
    const auto k0 = static_cast<size_t>(
        std::ceil((t - p.t0) / p.dt - 1e-12));
    if (k0 >= p.values.size()) continue;
    PiecewisePath q;
    q.t0 = p.t0 + p.dt * static_cast<double>(k0);
    q.dt = p.dt;
    q.values.assign(p.values.begin() + static_cast<ptrdiff_t>(k0),
                    p.values.end());
    out.push_back(std::move(q));
  }
  return PathSet(std::move(out));
}

std::vector<double> PathSet::positions_at(double s) const {
  std::vector<double> out;
  for (const auto& p : paths_) {
    if (p.t0 <= s && s <= p.end_time() + 1e-12) out.push_back(p.at(s));
  }
  return out;
}

namespace {

int count_distinct(std::vector<double>& values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  int distinct = 1;
  for (size_t k = 1; k < values.size(); ++k) {
    if (values[k] != values[k - 1]) ++distinct;
  }
  return distinct;
}

}  // namespace

int distinct_points_from_window(const PathSet& set, double t0, double t,
                                double a, double b) {
  if (t <= 0.0) throw ConfigError("counter: need t > 0");
  if (a >= b) throw ConfigError("counter: need a < b");
  std::vector<double> touched;
  for (const auto& p : set.paths()) {
    if (p.t0 > t0) continue;
    const double at_t0 = p.at(t0);
    if (at_t0 < a || at_t0 > b) continue;  // closed window [a, b]
    touched.push_back(p.at(t0 + t));
  }
  return count_distinct(touched);
}

int distinct_points_in_interval(const PathSet& set, double t0, double t,
                                double a, double b) {
  if (t <= 0.0) throw ConfigError("counter: need t > 0");
  if (a >= b) throw ConfigError("counter: need a < b");
  std::vector<double> touched;
  for (const auto& p : set.paths()) {
    if (p.t0 > t0) continue;
    const double v = p.at(t0 + t);
    if (v > a && v < b) touched.push_back(v);  // open interval (a, b)
  }
  return count_distinct(touched);
}

namespace {

double binomial_se(double p_hat, uint64_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) /
                   static_cast<double>(n));
}

void validate_pair_params(const PairDensityParams& params) {
  if (params.p < 0.0 || params.p > 1.0) throw ConfigError("density: bad p");
  if (params.p == 0.0) {
    throw ConfigError("density: p = 0 leaves the processes undefined");
  }
  if (params.n < 1) throw ConfigError("density: need n >= 1");
  if ((params.n & 1) != 0) throw ConfigError("density: need even n");
  if (params.replicates == 0) throw ConfigError("density: no replicates");
}

int64_t resolve_search_starts(const PairDensityParams& params,
                              int64_t horizon) {
  if (params.search_starts > 0) return params.search_starts;
  // Size the left search so a no-survivor failure has probability about
  // 1e-6 per query.
  const double theta =
      estimate_survival_rate(params.p, horizon, 512,
                             derive_seed(params.seed, 0x7e7aull));
  return recommended_search_width(theta, 1e-6);
}

}  // namespace

DensityEstimate rightmost_path_density(const PairDensityParams& params) {
  validate_pair_params(params);
  const int64_t horizon = params.horizon > 0 ? params.horizon : 2 * params.n;
  if (horizon < params.n) {
    throw ConfigError("density: horizon must be >= n");
  }
  const int64_t search = resolve_search_starts(params, horizon);

  std::vector<uint8_t> apart(params.replicates, 0);
  std::vector<uint8_t> failed(params.replicates, 0);

  parallel_replicates(
      params.replicates, params.threads,
      [&] { return ReachCache(horizon); },
      [&](ReachCache& cache, uint64_t rep) {
        const EdgeField field(params.p, derive_seed(params.seed, rep));
        cache.reset(horizon);
        // Rightmost path from (-inf, 2]: if (2, 0) does not survive, it
        // starts at or left of 0 and the two paths are identical.
        if (!reaches_level(field, {2, 0}, cache)) return;
        try {
          const auto upper = rightmost_path(field, {2, 0}, cache);
          const auto lower =
              halfline_rightmost_path(field, {0, 0}, cache, search);
          if (lower.at(params.n) != upper->at(params.n)) apart[rep] = 1;
        } catch (const NoSurvivorError&) {
          failed[rep] = 1;
        }
      });

  DensityEstimate out;
  out.n = params.n;
  out.replicates = params.replicates;
  for (uint64_t r = 0; r < params.replicates; ++r) {
    out.failures += failed[r];
  }
  const uint64_t used = params.replicates - out.failures;
  if (used == 0 ||
      static_cast<double>(out.failures) >
          params.max_failure_rate * static_cast<double>(params.replicates)) {
    throw NoSurvivorError(
        "density: left-search failure budget exceeded (" +
        std::to_string(out.failures) + " of " +
        std::to_string(params.replicates) + " replicates)");
  }
  uint64_t count = 0;
  for (uint64_t r = 0; r < params.replicates; ++r) {
    if (!failed[r]) count += apart[r];
  }
  out.p_hat = static_cast<double>(count) / static_cast<double>(used);
  out.se = binomial_se(out.p_hat, used);
  return out;
}

DensityEstimate right_edge_density(const PairDensityParams& params) {
  validate_pair_params(params);
  std::vector<uint8_t> apart(params.replicates, 0);

  parallel_replicates(
      params.replicates, params.threads,
      [&] { return ReachCache(params.n); },
      [&](ReachCache& cache, uint64_t rep) {
        const EdgeField field(params.p, derive_seed(params.seed, rep));
        cache.reset(params.n);
        const auto c1 = explore(field, {0, 0}, params.n, {}, cache);
        cache.reset(params.n);
        const auto c2 = explore(field, {2, 0}, params.n, {}, cache);
        if (c1.right.at(params.n) != c2.right.at(params.n)) apart[rep] = 1;
      });

  DensityEstimate out;
  out.n = params.n;
  out.replicates = params.replicates;
  uint64_t count = 0;
  for (uint64_t r = 0; r < params.replicates; ++r) count += apart[r];
  out.p_hat = static_cast<double>(count) / static_cast<double>(params.replicates);
  out.se = binomial_se(out.p_hat, params.replicates);
  return out;
}

namespace {

/// Is x a value of the right-edge family at this level? x belongs to
/// R_0(level) iff some half-line start y has its right edge exactly at x,
/// which by the monotone non-crossing structure reduces to: x is
/// reachable (label lambda), and no cell right of x is reachable from a
/// start <= lambda.
bool right_edge_membership(const StartLabels& labels, int64_t x,
                           int64_t scan_hi) {
  const int64_t lambda = labels.label_at(x);
  if (lambda == StartLabels::kNoLabel) return false;
  for (int64_t w = x + 2; w <= scan_hi; w += 2) {
    if (labels.label_at(w) <= lambda) return false;
  }
  return true;
}

}  // namespace

InequalityCheck negative_correlation_check(double p, int64_t n, int64_t i,
                                           int64_t j, uint64_t replicates,
                                           uint64_t seed, double se_mult,
                                           int threads) {
  if (p <= 0.0 || p > 1.0) {
    throw ConfigError("negcor: need p in (0, 1]");
  }
  if (i >= j) throw ConfigError("negcor: need i < j");
  if (((i + n) & 1) != 0 || ((j + n) & 1) != 0) {
    throw ConfigError("negcor: (i, n) and (j, n) must be lattice sites");
  }
  if (replicates < 2) throw ConfigError("negcor: too few replicates");

  // Windows that make the membership scan exact: labels can only reach
  // lambda <= x + n, so candidate cells right of a target extend at most
  // 2n past it and relevant starts lie within n of the cells.
  const int64_t y_lo = i - n;
  const int64_t y_hi = j + n;
  const int64_t x_hi = j + 2 * n;

  std::vector<uint8_t> in_i(replicates, 0), in_j(replicates, 0);

  parallel_replicates(
      replicates, threads, [] { return 0; },
      [&](int&, uint64_t rep) {
        const EdgeField field(p, derive_seed(seed, rep));
        const auto labels =
            reach_start_labels(field, 0, y_lo, y_hi, n, i, x_hi);
        if (right_edge_membership(labels, i, x_hi)) in_i[rep] = 1;
        if (right_edge_membership(labels, j, x_hi)) in_j[rep] = 1;
      });

  uint64_t ci = 0, cj = 0, cij = 0;
  for (uint64_t r = 0; r < replicates; ++r) {
    ci += in_i[r];
    cj += in_j[r];
    cij += static_cast<uint64_t>(in_i[r] & in_j[r]);
  }
  const double reps = static_cast<double>(replicates);
  const double pi = static_cast<double>(ci) / reps;
  const double pj = static_cast<double>(cj) / reps;

  InequalityCheck out;
  out.lhs = static_cast<double>(cij) / reps;
  out.rhs = pi * pj;
  out.lhs_se = binomial_se(out.lhs, replicates);
  const double se_i = binomial_se(pi, replicates);
  const double se_j = binomial_se(pj, replicates);
  out.rhs_se = std::sqrt(pj * pj * se_i * se_i + pi * pi * se_j * se_j);
  out.combined_se = std::sqrt(out.lhs_se * out.lhs_se +
                              out.rhs_se * out.rhs_se);
  out.se_mult = se_mult;
  out.pass = out.lhs <= out.rhs + se_mult * out.combined_se;
  return out;
}

DisjointOccurrenceCheck disjoint_occurrence_check(double p, int64_t n,
                                                  int64_t k,
                                                  uint64_t replicates,
                                                  uint64_t seed,
                                                  double se_mult,
                                                  int threads) {
  if (p <= 0.0 || p > 1.0) throw ConfigError("disjoint: need p in (0, 1]");
  if (n < 4 || (n & 1) != 0) throw ConfigError("disjoint: need even n >= 4");
  if (k < 0) throw ConfigError("disjoint: need k >= 0");
  if (replicates < 2) throw ConfigError("disjoint: too few replicates");

  int64_t L = 0;
  while (L * L < n) ++L;  // ceil(sqrt(n))
  const int64_t top_start = 2 * (L - 1);

  // Exact windows for right-edge values of starts in [0, top_start]:
  // values live in [-n, top_start + n] and their minimal labels come
  // from starts in [-2n, top_start].
  const int64_t x_lo = -n;
  const int64_t x_hi = top_start + n;
  const int64_t y_lo = -2 * n;
  const int64_t y_hi = top_start;

  std::vector<int32_t> sizes(replicates, 0);
  std::vector<uint8_t> dn(replicates, 0);

  parallel_replicates(
      replicates, threads, [] { return 0; },
      [&](int&, uint64_t rep) {
        const EdgeField field(p, derive_seed(seed, rep));
        const auto labels =
            reach_start_labels(field, 0, y_lo, y_hi, n, x_lo, x_hi);
        // r(y) = max{x : label(x) <= y}: sweep cells downward once while
        // walking the queried starts downward too.
        int64_t x = x_hi;
        if (((x + n) & 1) != 0) --x;
        int64_t previous = INT64_MAX;
        int32_t distinct = 0;
        int64_t r_top = INT64_MIN, r_bottom = INT64_MIN;
        for (int64_t y = top_start; y >= 0; y -= 2) {
          while (x >= x_lo && labels.label_at(x) > y) x -= 2;
          if (x < x_lo) {
            throw WindowOverflowError(
                "disjoint: right edge fell below the exact window");
          }
          if (y == top_start) r_top = x;
          if (y == 0) r_bottom = x;
          if (x != previous) {
            ++distinct;
            previous = x;
          }
        }
        sizes[rep] = distinct;
        dn[rep] = r_bottom != r_top ? 1 : 0;
      });

  uint64_t big = 0, dsum = 0;
  int64_t size_sum = 0;
  for (uint64_t r = 0; r < replicates; ++r) {
    if (sizes[r] >= 2 * k) ++big;
    dsum += dn[r];
    size_sum += sizes[r];
  }
  const double reps = static_cast<double>(replicates);
  const double d_hat = static_cast<double>(dsum) / reps;
  const double lhs = static_cast<double>(big) / reps;

  DisjointOccurrenceCheck out;
  out.L = L;
  out.d_n_hat = d_hat;
  out.mean_size = static_cast<double>(size_sum) / reps;
  {
    double ss = 0.0;
    for (uint64_t r = 0; r < replicates; ++r) {
      const double d = sizes[r] - out.mean_size;
      ss += d * d;
    }
    out.mean_size_se = std::sqrt(ss / (reps - 1.0) / reps);
  }
  out.ineq.lhs = lhs;
  out.ineq.rhs = std::pow(d_hat, static_cast<double>(k));
  out.ineq.lhs_se = binomial_se(lhs, replicates);
  const double d_se = binomial_se(d_hat, replicates);
  out.ineq.rhs_se =
      k == 0 ? 0.0
             : static_cast<double>(k) *
                   std::pow(d_hat, static_cast<double>(k - 1)) * d_se;
  out.ineq.combined_se = std::sqrt(out.ineq.lhs_se * out.ineq.lhs_se +
                                   out.ineq.rhs_se * out.ineq.rhs_se);
  out.ineq.se_mult = se_mult;
  out.ineq.pass =
      out.ineq.lhs <= out.ineq.rhs + se_mult * out.ineq.combined_se;
  return out;
}

}  // namespace opbw
