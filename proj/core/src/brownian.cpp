#include "opbw/brownian.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>

#include "opbw/errors.hpp"
#include "opbw/rng.hpp"

namespace opbw {

double brownian_web_interval_count_mean(double t, double a, double b) {
  if (t <= 0.0) throw ConfigError("interval count mean: need t > 0");
  if (a >= b) throw ConfigError("interval count mean: need a < b");
  return (b - a) / std::sqrt(M_PI * t);
}

double brownian_web_point_intensity() { return 1.0 / std::sqrt(M_PI); }

namespace {

/// Counter-based standard normal: a pure function of (seed, k1, k2, k3).
/// Keying draws by (step, group leader) instead of using one sequential
/// stream lets two discretizations of the same system share increments.
double counter_gaussian(uint64_t seed, uint64_t k1, uint64_t k2,
                        uint64_t k3) {
  uint64_t h = splitmix64(seed ^ 0x9d2c5680cafef00dULL);
  h = splitmix64(h ^ k1);
  h = splitmix64(h ^ k2);
  h = splitmix64(h ^ k3);
  for (uint64_t retry = 0;; ++retry) {
    const uint64_t w1 = splitmix64(h ^ (2 * retry));
    const uint64_t w2 = splitmix64(h ^ (2 * retry + 1));
    const double u = 2.0 * to_unit_double(w1) - 1.0;
    const double v = 2.0 * to_unit_double(w2) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

struct BmGroup {
  double pos = 0.0;   // value at the start of the current step
  double prop = 0.0;  // proposed value at the end of the step
  int first = 0;      // leftmost original path index
  int last = 0;
  int lead = 0;       // index of the path the group currently continues;
                      // keys its increment stream
};

/// Which member a merging pair continues: an unbiased coin keyed only by
/// the pair's identity, so both paired resolutions make the same choice
/// and neither side is systematically favored.
bool continue_right(uint64_t seed, int lead_a, int lead_b) {
  const uint64_t h = splitmix64(
      splitmix64(seed ^ 0x51ed2701b4cfull ^ static_cast<uint64_t>(lead_a)) ^
      static_cast<uint64_t>(lead_b));
  return (h & 1u) != 0;
}

constexpr uint64_t kRefineTag = uint64_t(1) << 62;

/// Bridge bisection over a step for an adjacent pair, ordered at the
/// step start. Finds order reversals at resolution step/2^depth,
/// including double-crossings that leave the step-end order intact (the
/// step-end check alone misses those, an O(sqrt(dt)) effect on
/// coalescence counts). Sub-intervals where the difference bridge has
/// hitting probability below ~2e-9 are pruned, so almost all pairs cost
/// one multiply per step.
///
/// Midpoint samples are keyed by (fine step, path, dyadic position), so
/// a path's bridge is sampled consistently across the pair tests of one
/// step, and paired runs at two resolutions consume identical noise for
/// identical sub-bridges.
struct BridgeDetector {
  uint64_t seed;
  uint64_t fine_step;
  uint64_t a_key;
  uint64_t b_key;

  double midpoint(uint64_t path_key, int level, uint64_t idx, double lo,
                  double hi, double h) const {
    const uint64_t dyadic =
        (static_cast<uint64_t>(level) << 48) | (2 * idx + 1);
    return 0.5 * (lo + hi) +
           std::sqrt(h / 4.0) *
               counter_gaussian(seed, kRefineTag | fine_step, path_key,
                                dyadic);
  }

  // invariant: a_lo < b_lo. True when the pair's order reverses inside
  // the dyadic interval [idx, idx+1] / 2^level of this fine step.
  bool crossed(double a_lo, double a_hi, double b_lo, double b_hi, double h,
               int level, uint64_t idx, int depth) const {
    if (a_hi >= b_hi) return true;
    if (depth == 0) return false;
    // P(difference bridge from g0 to g1 hits 0) = exp(-g0 g1 / h)
    if ((b_lo - a_lo) * (b_hi - a_hi) >= 20.0 * h) return false;
    const double am = midpoint(a_key, level, idx, a_lo, a_hi, h);
    const double bm = midpoint(b_key, level, idx, b_lo, b_hi, h);
    if (am >= bm) return true;
    return crossed(a_lo, am, b_lo, bm, h / 2, level + 1, 2 * idx,
                   depth - 1) ||
           crossed(am, a_hi, bm, b_hi, h / 2, level + 1, 2 * idx + 1,
                   depth - 1);
  }
};

/// Advances the system over n_fine * dt_fine of time in engine steps of
/// `substeps` fine increments each. The recorder, if any, is called after
/// every engine step with the live groups.
template <class Recorder>
void run_cbm(std::vector<BmGroup>& groups, uint64_t seed, int64_t n_fine,
             double dt_fine, int substeps, int refine_depth,
             Recorder&& record) {
  const double sqrt_dt = std::sqrt(dt_fine);
  const double step_dt = dt_fine * substeps;
  for (int64_t step = 0; step * substeps < n_fine; ++step) {
    const uint64_t base = static_cast<uint64_t>(step * substeps);
    for (auto& g : groups) {
      double inc = 0.0;
      for (int u = 0; u < substeps; ++u) {
        inc += counter_gaussian(seed, base + static_cast<uint64_t>(u),
                                static_cast<uint64_t>(g.lead), 0);
      }
      g.prop = g.pos + sqrt_dt * inc;
    }
    // Detect crossings for every adjacent pair on the original proposals
    // first (merging eagerly would erase evidence of simultaneous
    // crossings along a run), then union crossed runs into one group.
    // Any ordering broken by a merged continuation is repaired by
    // merging again.
    if (groups.size() > 1) {
      std::vector<BmGroup> merged;
      merged.reserve(groups.size());
      size_t run_begin = 0;
      for (size_t i = 0; i + 1 <= groups.size(); ++i) {
        bool crossed = false;
        if (i + 1 < groups.size()) {
          const auto& a = groups[i];
          const auto& b = groups[i + 1];
          if (a.prop >= b.prop) {
            crossed = true;
          } else if ((b.pos - a.pos) * (b.prop - a.prop) <
                     20.0 * step_dt) {
            const uint64_t ka = static_cast<uint64_t>(a.lead);
            const uint64_t kb = static_cast<uint64_t>(b.lead);
            if (substeps == 1) {
              const BridgeDetector det{seed, base, ka, kb};
              crossed = det.crossed(a.pos, a.prop, b.pos, b.prop, dt_fine,
                                    0, 0, refine_depth);
            } else {
              // The coarse step's first bisection midpoint is the real
              // half-step value from the shared increment stream.
              const double am =
                  a.pos + sqrt_dt * counter_gaussian(seed, base, ka, 0);
              const double bm =
                  b.pos + sqrt_dt * counter_gaussian(seed, base, kb, 0);
              if (am >= bm) {
                crossed = true;
              } else {
                const BridgeDetector lo{seed, base, ka, kb};
                const BridgeDetector hi{seed, base + 1, ka, kb};
                crossed = lo.crossed(a.pos, am, b.pos, bm, dt_fine, 0, 0,
                                     refine_depth - 1) ||
                          hi.crossed(am, a.prop, bm, b.prop, dt_fine, 0, 0,
                                     refine_depth - 1);
              }
            }
          }
        }
        if (!crossed) {
          // Fold the crossed run pairwise: each merge continues one
          // member's own proposal (a proper Brownian continuation,
          // identical to what a finer paired run produces when it makes
          // the same merge in sub-steps).
          BmGroup g = groups[run_begin];
          for (size_t k = run_begin + 1; k <= i; ++k) {
            if (continue_right(seed, g.lead, groups[k].lead)) {
              g.lead = groups[k].lead;
              g.prop = groups[k].prop;
            }
          }
          g.last = groups[i].last;
          merged.push_back(g);
          run_begin = i + 1;
        }
      }
      groups.swap(merged);
      // repair pass: a merged continuation can land past a neighbor
      size_t i = 0;
      while (i + 1 < groups.size()) {
        if (groups[i].prop >= groups[i + 1].prop) {
          if (continue_right(seed, groups[i].lead, groups[i + 1].lead)) {
            groups[i].lead = groups[i + 1].lead;
            groups[i].prop = groups[i + 1].prop;
          }
          groups[i].last = groups[i + 1].last;
          groups.erase(groups.begin() + static_cast<ptrdiff_t>(i) + 1);
          if (i > 0) --i;
        } else {
          ++i;
        }
      }
    }
    for (auto& g : groups) g.pos = g.prop;
    record(groups);
  }
}

std::vector<BmGroup> make_groups(const std::vector<double>& starts) {
  if (starts.empty()) throw ConfigError("coalescing BM: no starts");
  std::vector<BmGroup> groups(starts.size());
  for (size_t k = 0; k < starts.size(); ++k) {
    if (k > 0 && starts[k] <= starts[k - 1]) {
      throw ConfigError("coalescing BM: starts must be strictly increasing");
    }
    groups[k] = {starts[k], starts[k], static_cast<int>(k),
                 static_cast<int>(k), static_cast<int>(k)};
  }
  return groups;
}

int64_t check_steps(const CoalescingBmParams& params) {
  if (params.dt <= 0.0 || params.t_end <= 0.0) {
    throw ConfigError("coalescing BM: need positive dt and t_end");
  }
  if (params.dt > params.t_end / 100.0 + 1e-15) {
    throw ConfigError("coalescing BM: need dt <= t_end / 100");
  }
  const double ratio = params.t_end / params.dt;
  const auto steps = static_cast<int64_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9) {
    throw ConfigError("coalescing BM: t_end must be a multiple of dt");
  }
  return steps;
}

std::vector<double> endpoints_of(const std::vector<BmGroup>& groups) {
  std::vector<double> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(g.pos);
  return out;
}

}  // namespace

PathSet simulate_coalescing_bm(const CoalescingBmParams& params) {
  const int64_t steps = check_steps(params);
  auto groups = make_groups(params.starts);

  std::vector<PiecewisePath> paths(params.starts.size());
  for (size_t k = 0; k < params.starts.size(); ++k) {
    paths[k].t0 = 0.0;
    paths[k].dt = params.dt;
    paths[k].values.reserve(static_cast<size_t>(steps) + 1);
    paths[k].values.push_back(params.starts[k]);
  }
  run_cbm(groups, params.seed, steps, params.dt, 1, params.refine_depth,
          [&](const std::vector<BmGroup>& gs) {
            for (const auto& g : gs) {
              for (int k = g.first; k <= g.last; ++k) {
                paths[static_cast<size_t>(k)].values.push_back(g.pos);
              }
            }
          });
  return PathSet(std::move(paths));
}

std::vector<double> coalescing_bm_endpoints(const CoalescingBmParams& params) {
  const int64_t steps = check_steps(params);
  auto groups = make_groups(params.starts);
  run_cbm(groups, params.seed, steps, params.dt, 1, params.refine_depth,
          [](const std::vector<BmGroup>&) {});
  return endpoints_of(groups);
}

std::pair<std::vector<double>, std::vector<double>>
coalescing_bm_endpoints_two_scale(const CoalescingBmParams& params) {
  const int64_t coarse_steps = check_steps(params);
  const int64_t fine_steps = 2 * coarse_steps;
  const double dt_fine = params.dt / 2.0;

  auto coarse = make_groups(params.starts);
  run_cbm(coarse, params.seed, fine_steps, dt_fine, 2, params.refine_depth,
          [](const std::vector<BmGroup>&) {});
  auto fine = make_groups(params.starts);
  run_cbm(fine, params.seed, fine_steps, dt_fine, 1, params.refine_depth,
          [](const std::vector<BmGroup>&) {});
  return {endpoints_of(coarse), endpoints_of(fine)};
}

PathSet simulate_coalescing_walks(const std::vector<int64_t>& starts,
                                  int64_t n, uint64_t seed) {
  if (starts.empty()) throw ConfigError("coalescing walks: no starts");
  if (n < 0) throw ConfigError("coalescing walks: need n >= 0");
  struct WalkGroup {
    int64_t pos;
    int first, last;
  };
  std::vector<WalkGroup> groups(starts.size());
  for (size_t k = 0; k < starts.size(); ++k) {
    if ((starts[k] & 1) != 0) {
      throw ConfigError("coalescing walks: starts must be even");
    }
    if (k > 0 && starts[k] <= starts[k - 1]) {
      throw ConfigError("coalescing walks: starts must be increasing");
    }
    groups[k] = {starts[k], static_cast<int>(k), static_cast<int>(k)};
  }

  std::vector<PiecewisePath> paths(starts.size());
  for (size_t k = 0; k < starts.size(); ++k) {
    paths[k].t0 = 0.0;
    paths[k].dt = 1.0;
    paths[k].values.reserve(static_cast<size_t>(n) + 1);
    paths[k].values.push_back(static_cast<double>(starts[k]));
  }

  for (int64_t step = 0; step < n; ++step) {
    for (auto& g : groups) {
      const uint64_t h =
          splitmix64(splitmix64(seed ^ static_cast<uint64_t>(step)) ^
                     static_cast<uint64_t>(g.first));
      g.pos += (h & 1) ? 1 : -1;
    }
    size_t i = 0;
    while (i + 1 < groups.size()) {
      if (groups[i].pos == groups[i + 1].pos) {
        groups[i].last = groups[i + 1].last;
        groups.erase(groups.begin() + static_cast<ptrdiff_t>(i) + 1);
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
    for (const auto& g : groups) {
      for (int k = g.first; k <= g.last; ++k) {
        paths[static_cast<size_t>(k)].values.push_back(
            static_cast<double>(g.pos));
      }
    }
  }
  return PathSet(std::move(paths));
}

double exact_pair_meeting_probability(int64_t d, int64_t n) {
  if (d < 0) throw ConfigError("pair meeting: need d >= 0");
  if (n < 0) throw ConfigError("pair meeting: need n >= 0");
  if (d == 0) return 1.0;
  // Difference walk on {0, 1, ...} started at d, absorbed at 0.
  std::vector<double> f(static_cast<size_t>(d + n + 2), 0.0);
  std::vector<double> g(f.size(), 0.0);
  f[static_cast<size_t>(d)] = 1.0;
  for (int64_t step = 0; step < n; ++step) {
    const int64_t hi = d + step + 1;
    g.assign(f.size(), 0.0);
    g[0] = f[0] + 0.25 * f[1];
    for (int64_t k = 1; k <= hi; ++k) {
      const auto ks = static_cast<size_t>(k);
      double v = 0.5 * f[ks] + 0.25 * f[ks + 1];
      if (k >= 2) v += 0.25 * f[ks - 1];
      g[ks] = v;
    }
    f.swap(g);
  }
  return f[0];
}

}  // namespace opbw
