#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opbw/errors.hpp"
#include "opbw/exploration.hpp"
#include "opbw/ks.hpp"
#include "opbw/scaling.hpp"

using namespace opbw;

namespace {

LatticePath make_path(int64_t t0, std::vector<int32_t> xs) {
  LatticePath p;
  p.start_time = t0;
  p.positions = std::move(xs);
  return p;
}

}  // namespace

TEST_CASE("scaling map: identity and the worked example") {
  const auto path = make_path(0, {0, 1, 0, 1});
  const auto same = apply_scaling(path, {0.0, 1.0, 1.0});
  CHECK(same.t0 == 0.0);
  CHECK(same.dt == 1.0);
  for (size_t k = 0; k < path.positions.size(); ++k) {
    CHECK(same.values[k] == path.positions[k]);
  }

  // (x, t) = (10, 4) with alpha = 2, sigma = 1, eps = 0.25 -> (1, 1)
  const auto one = make_path(4, {10});
  const auto mapped = apply_scaling(one, {2.0, 1.0, 0.25});
  CHECK(mapped.values[0] == doctest::Approx(1.0));
  CHECK(mapped.t0 == doctest::Approx(1.0));
}

TEST_CASE("scaling commutes with linear interpolation") {
  const auto path = make_path(2, {4, 5, 4, 3, 4});
  const ScalingParams sp{0.4, 1.7, 0.3};
  const auto mapped = apply_scaling(path, sp);
  for (double t = 2.0; t <= 6.0; t += 0.25) {
    const double direct =
        std::sqrt(sp.eps) * (path.interpolate(t) - sp.alpha * t) / sp.sigma;
    CHECK(mapped.at(sp.eps * t) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("scaling is equivariant under time translation plus shear") {
  const auto path = make_path(0, {0, -1, 0, 1, 2});
  const ScalingParams sp{0.6, 1.2, 0.04};
  const int64_t shift = 5;

  // Shift the path by (alpha-consistent shear in x is implicit: compare
  // the mapped values after shifting time and re-shearing).
  LatticePath shifted = path;
  shifted.start_time += shift;
  const auto mapped_shifted = apply_scaling(shifted, sp);
  const auto mapped = apply_scaling(path, sp);
  for (size_t k = 0; k < path.positions.size(); ++k) {
    const double expect =
        mapped.values[k] -
        std::sqrt(sp.eps) * sp.alpha * static_cast<double>(shift) / sp.sigma;
    CHECK(mapped_shifted.values[k] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(mapped_shifted.t0 ==
          doctest::Approx(mapped.t0 + sp.eps * shift).epsilon(1e-12));
  }
}

TEST_CASE("scaling rejects degenerate parameters") {
  const auto path = make_path(0, {0});
  CHECK_THROWS_AS(apply_scaling(path, {0.0, 0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(apply_scaling(path, {0.0, 1.0, 0.0}), ConfigError);
}

TEST_CASE("drift estimate at p = 1 is exact") {
  DriftEstimateParams params;
  params.p = 1.0;
  params.horizon = 64;
  params.replicates = 8;
  params.seed = 5;
  const auto d = estimate_drift_diffusivity(params);
  CHECK(d.alpha == 1.0);
  CHECK(d.sigma == 0.0);
  CHECK(d.alpha_se == 0.0);
  CHECK(d.mean_spacing == doctest::Approx(1.0));
}

TEST_CASE("drift estimates are reproducible across independent seeds") {
  DriftEstimateParams params;
  params.p = 0.8;
  params.horizon = 2048;
  params.replicates = 300;
  params.seed = 1;
  const auto a = estimate_drift_diffusivity(params);
  params.seed = 999;
  const auto b = estimate_drift_diffusivity(params);
  const double alpha_tol =
      3.0 * std::sqrt(a.alpha_se * a.alpha_se + b.alpha_se * b.alpha_se);
  const double sigma_tol =
      3.0 * std::sqrt(a.sigma_se * a.sigma_se + b.sigma_se * b.sigma_se);
  CHECK(std::abs(a.alpha - b.alpha) < alpha_tol);
  CHECK(std::abs(a.sigma - b.sigma) < sigma_tol);
  CHECK(a.sigma > 0.0);
}

TEST_CASE("reported alpha standard error matches realized dispersion") {
  DriftEstimateParams params;
  params.p = 0.8;
  params.horizon = 1024;
  params.replicates = 200;
  std::vector<double> alphas;
  double se_sum = 0.0;
  for (uint64_t s = 0; s < 12; ++s) {
    params.seed = derive_seed(616, s);
    const auto d = estimate_drift_diffusivity(params);
    alphas.push_back(d.alpha);
    se_sum += d.alpha_se;
  }
  const double se_reported = se_sum / 12.0;
  double mean = 0.0;
  for (const double a : alphas) mean += a;
  mean /= 12.0;
  double var = 0.0;
  for (const double a : alphas) var += (a - mean) * (a - mean);
  const double sd = std::sqrt(var / 11.0);
  // with 12 runs the sd estimate is crude; a factor-2 agreement already
  // rules out badly wrong error bars
  CHECK(sd < 2.0 * se_reported);
  CHECK(sd > se_reported / 3.0);
}

TEST_CASE("drift estimator reports insufficient data") {
  DriftEstimateParams params;
  params.p = 0.8;
  params.horizon = 16;
  params.replicates = 2;
  params.min_regenerations = 1'000'000;
  CHECK_THROWS_AS(estimate_drift_diffusivity(params), InsufficientDataError);
}

TEST_CASE("scaled coalescence-time law stabilizes between n and 4n") {
  // Two-sample KS on tau/n for the extreme pair of L = ceil(sqrt(n))
  // starts; the distributions at n and 4n should already be close.
  auto sample = [](int64_t n, uint64_t seed) {
    int64_t L = 0;
    while (L * L < n) ++L;
    std::vector<double> out;
    ReachCache cache(n);
    for (uint64_t r = 0; r < 2500; ++r) {
      const EdgeField field(0.8, derive_seed(seed, r));
      cache.reset(n);
      const auto c1 = explore(field, {0, 0}, n, {}, cache);
      cache.reset(n);
      const auto c2 = explore(field, {2 * (L - 1), 0}, n, {}, cache);
      const auto tau = first_meeting(c1.right, c2.right, n);
      out.push_back(tau ? static_cast<double>(*tau) / n : 2.0);
    }
    return out;
  };
  const auto small = sample(64, 11);
  const auto large = sample(256, 22);
  const double d = ks_two_sample_distance(small, large);
  CHECK(d < ks_two_sample_critical(0.01, 2500, 2500));
}
