#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opbw/brownian.hpp"
#include "opbw/errors.hpp"
#include "opbw/rng.hpp"
#include "opbw/statistics.hpp"

using namespace opbw;

TEST_CASE("closed forms: interval count mean and point intensity") {
  CHECK(brownian_web_point_intensity() ==
        doctest::Approx(0.5641895835477563).epsilon(1e-12));
  CHECK(brownian_web_interval_count_mean(1.0, 0.0, std::sqrt(M_PI)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // linear in (b - a), 1/sqrt(t) in time
  const double base = brownian_web_interval_count_mean(1.0, 0.0, 1.0);
  CHECK(brownian_web_interval_count_mean(1.0, 0.0, 2.0) ==
        doctest::Approx(2.0 * base));
  CHECK(brownian_web_interval_count_mean(4.0, 0.0, 1.0) ==
        doctest::Approx(base / 2.0));
  CHECK(base == doctest::Approx(brownian_web_point_intensity()));
  CHECK_THROWS_AS(brownian_web_interval_count_mean(0.0, 0.0, 1.0),
                  ConfigError);
}

TEST_CASE("single Brownian path has the right terminal variance") {
  const uint64_t reps = 20'000;
  double sum = 0.0, sum_sq = 0.0;
  for (uint64_t r = 0; r < reps; ++r) {
    CoalescingBmParams params;
    params.starts = {0.0};
    params.t_end = 1.0;
    params.dt = 0.01;
    params.seed = derive_seed(100, r);
    const double x = coalescing_bm_endpoints(params)[0];
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / reps;
  const double var = sum_sq / reps - mean * mean;
  // SE of a variance estimate from normal data: var * sqrt(2/n)
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(reps)));
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / reps));
}

TEST_CASE("two-path non-coalescence matches the reflection formula") {
  // Difference of two independent BMs is a BM with variance 2t, so
  // P(no meeting by t) = erf(d / (2 sqrt(t))). Order-reversal detection
  // misses some within-step excursions, an O(sqrt(dt)) effect, so the
  // estimate is Richardson-extrapolated in sqrt(dt) from a common-random-
  // numbers run at dt and dt/2.
  const double d = 1.0, t = 1.0;
  const double target = std::erf(d / (2.0 * std::sqrt(t)));
  const uint64_t reps = 20'000;
  const double r = 1.0 / std::sqrt(2.0);
  double sum = 0.0, sum_sq = 0.0;
  double raw_coarse = 0.0, raw_fine = 0.0;
  for (uint64_t rep = 0; rep < reps; ++rep) {
    CoalescingBmParams params;
    params.starts = {0.0, d};
    params.t_end = t;
    params.dt = 1.0 / 512.0;
    params.seed = derive_seed(200, rep);
    const auto [coarse, fine] = coalescing_bm_endpoints_two_scale(params);
    const double c = coarse.size() == 2 ? 1.0 : 0.0;
    const double f = fine.size() == 2 ? 1.0 : 0.0;
    const double extrapolated = (f - r * c) / (1.0 - r);
    sum += extrapolated;
    sum_sq += extrapolated * extrapolated;
    raw_coarse += c;
    raw_fine += f;
  }
  const double mean = sum / reps;
  const double se =
      std::sqrt((sum_sq / reps - mean * mean) / static_cast<double>(reps));
  CHECK(std::abs(mean - target) < 3 * se);
  // the bias indeed shrinks when dt is halved
  CHECK(raw_fine / reps - target < raw_coarse / reps - target);
}

TEST_CASE("coalescing BM paths preserve order and share values after merge") {
  for (uint64_t r = 0; r < 300; ++r) {
    CoalescingBmParams params;
    params.starts = {-1.0, -0.3, 0.2, 1.5};
    params.t_end = 1.0;
    params.dt = 1.0 / 128.0;
    params.seed = derive_seed(300, r);
    const auto set = simulate_coalescing_bm(params);
    REQUIRE(set.size() == 4);
    const auto& paths = set.paths();
    for (size_t step = 0; step < paths[0].values.size(); ++step) {
      for (size_t k = 1; k < 4; ++k) {
        CHECK(paths[k - 1].values[step] <= paths[k].values[step]);
      }
    }
    // once equal, identical forever
    for (size_t k = 1; k < 4; ++k) {
      bool met = false;
      for (size_t step = 0; step < paths[0].values.size(); ++step) {
        if (met) CHECK(paths[k - 1].values[step] == paths[k].values[step]);
        if (paths[k - 1].values[step] == paths[k].values[step]) met = true;
      }
    }
  }
}

TEST_CASE("two-scale runs share increments until discretization matters") {
  CoalescingBmParams params;
  params.starts = {0.0};
  params.t_end = 1.0;
  params.dt = 0.01;
  params.seed = 12345;
  const auto [coarse, fine] = coalescing_bm_endpoints_two_scale(params);
  REQUIRE(coarse.size() == 1);
  REQUIRE(fine.size() == 1);
  // a single path never coalesces: identical increments, identical result
  CHECK(coarse[0] == doctest::Approx(fine[0]).epsilon(1e-12));
}

TEST_CASE("grid-start density approaches the point intensity") {
  // eta_hat over a fine grid at t = 1 should be near (b-a)/sqrt(pi).
  const double a = 0.0, b = 1.0;
  std::vector<double> starts;
  for (double x = a - 5.0; x <= b + 5.0 + 1e-12; x += 0.02) {
    starts.push_back(x);
  }
  const uint64_t reps = 3000;
  int64_t total = 0;
  for (uint64_t r = 0; r < reps; ++r) {
    CoalescingBmParams params;
    params.starts = starts;
    params.t_end = 1.0;
    params.dt = 1.0 / 256.0;
    params.seed = derive_seed(400, r);
    for (const double x : coalescing_bm_endpoints(params)) {
      if (x > a && x < b) ++total;
    }
  }
  const double mean = static_cast<double>(total) / reps;
  const double target = brownian_web_interval_count_mean(1.0, a, b);
  CHECK(std::abs(mean - target) < 0.05);
}

TEST_CASE("coalescing walks: order, parity, and eta_hat vs exact pairs") {
  CHECK_THROWS_AS(simulate_coalescing_walks({1}, 4, 1), ConfigError);

  // d = 0 means already met
  CHECK(exact_pair_meeting_probability(0, 5) == 1.0);
  // one step: difference walk moves -2/0/+2 with prob 1/4,1/2,1/4
  CHECK(exact_pair_meeting_probability(1, 1) == doctest::Approx(0.25));

  const int64_t n = 64;
  const int64_t d = 2;
  const double exact = exact_pair_meeting_probability(d, n);
  uint64_t met = 0;
  const uint64_t reps = 40'000;
  for (uint64_t r = 0; r < reps; ++r) {
    const auto set =
        simulate_coalescing_walks({0, 2 * d}, n, derive_seed(500, r));
    met += distinct_points_in_interval(set, 0, n, -1e9, 1e9) == 1;
  }
  const double p_hat = static_cast<double>(met) / reps;
  const double se = std::sqrt(exact * (1 - exact) / reps);
  CHECK(std::abs(p_hat - exact) < 3 * se);
}

TEST_CASE("pair survival scales like 1/sqrt(n)") {
  const double s100 =
      (1.0 - exact_pair_meeting_probability(1, 100)) * std::sqrt(100.0);
  const double s1000 =
      (1.0 - exact_pair_meeting_probability(1, 1000)) * std::sqrt(1000.0);
  const double s10000 =
      (1.0 - exact_pair_meeting_probability(1, 10000)) * std::sqrt(10000.0);
  CHECK(std::abs(s1000 / s10000 - 1.0) < 0.05);
  CHECK(std::abs(s100 / s10000 - 1.0) < 0.15);
}

TEST_CASE("parameter validation for the BM simulator") {
  CoalescingBmParams params;
  params.starts = {0.0, -1.0};
  params.t_end = 1.0;
  params.dt = 0.005;
  CHECK_THROWS_AS(coalescing_bm_endpoints(params), ConfigError);
  params.starts = {0.0};
  params.dt = 0.5;  // violates dt <= t/100
  CHECK_THROWS_AS(coalescing_bm_endpoints(params), ConfigError);
}
