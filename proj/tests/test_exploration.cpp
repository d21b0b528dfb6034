#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "opbw/errors.hpp"
#include "opbw/exploration.hpp"
#include "oracle.hpp"

using namespace opbw;

TEST_CASE("explore at p = 1: boundaries collapse onto the straight path") {
  const EdgeField field(1.0, 4);
  const auto c = explore(field, {0, 0}, 10);
  CHECK(c.left_start == 0);
  for (int64_t j = 0; j <= 10; ++j) {
    CHECK(c.left.at(j) == j);
    CHECK(c.right.at(j) == j);
  }
}

TEST_CASE("first-step right edge offsets match their exact probabilities") {
  // P(r(1) = x+1) = p: the single edge from (0,0).
  // P(r(1) = x-1) = (1-p)(1-(1-p)^2): right edge closed, x-1 reached.
  for (const double p : {0.3, 0.8}) {
    const auto box = oracle::EdgeBox::make(-2, 0, 0, 1);
    const double up = oracle::exact_probability(
        box, p, [](const oracle::Assignment& a) {
          const auto r = oracle::reach_sets(a, {-2, 0}, 0, 1);
          return !r[1].empty() && *r[1].rbegin() == 1;
        });
    CHECK(up == doctest::Approx(p).epsilon(1e-12));
    const double down = oracle::exact_probability(
        box, p, [](const oracle::Assignment& a) {
          const auto r = oracle::reach_sets(a, {-2, 0}, 0, 1);
          return !r[1].empty() && *r[1].rbegin() == -1;
        });
    CHECK(down ==
          doctest::Approx((1 - p) * (1 - (1 - p) * (1 - p))).epsilon(1e-12));

    uint64_t mc_up = 0, mc_down = 0;
    const uint64_t reps = 100'000;
    for (uint64_t r = 0; r < reps; ++r) {
      const EdgeField field(p, derive_seed(606, r));
      const auto c = explore(field, {0, 0}, 1);
      mc_up += c.right.at(1) == 1;
      mc_down += c.right.at(1) == -1;
    }
    const double se = 3.0 / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(static_cast<double>(mc_up) / reps - up) < se);
    CHECK(std::abs(static_cast<double>(mc_down) / reps - down) < se);
  }
}

TEST_CASE("dual-algorithm right edge equality over random instances") {
  for (uint64_t r = 0; r < 3000; ++r) {
    const double p = r % 3 == 0 ? 0.7 : (r % 3 == 1 ? 0.8 : 0.95);
    const int64_t n = 4 + static_cast<int64_t>(splitmix64(r) % 61);
    const EdgeField field(p, derive_seed(1212, r));
    const auto c = explore(field, {0, 0}, n);
    const auto direct = right_edge_direct(field, {0, 0}, n);
    REQUIRE(c.right.positions.size() == direct.positions.size());
    CHECK(c.right.positions == direct.positions);
  }
}

TEST_CASE("right edge via start labels agrees with explore") {
  for (uint64_t r = 0; r < 1000; ++r) {
    const int64_t n = 32;
    const EdgeField field(0.8, derive_seed(333, r));
    const auto labels = reach_start_labels(field, 0, -2 * n, 4, n, -n, 4 + n);
    for (const int64_t y : {0L, 2L, 4L}) {
      const auto c = explore(field, {y, 0}, n);
      int64_t best = INT64_MIN;
      for (int64_t x = -n; x <= 4 + n; x += 2) {
        if (labels.label_at(x) <= y) best = std::max(best, x);
      }
      CHECK(best == c.right.at(n));
    }
  }
}

TEST_CASE("dual-algorithm equality just above criticality") {
  // Slightly supercritical: left searches dig deep and the propagation
  // window doubles; the two routes must still agree exactly.
  for (uint64_t r = 0; r < 300; ++r) {
    const EdgeField field(0.66, derive_seed(7171, r));
    const auto c = explore(field, {0, 0}, 32);
    const auto direct = right_edge_direct(field, {0, 0}, 32);
    CHECK(c.right.positions == direct.positions);
  }
}

TEST_CASE("right edge moves right by at most one and bounds the left path") {
  for (uint64_t r = 0; r < 1000; ++r) {
    const EdgeField field(0.7, derive_seed(88, r));
    const auto c = explore(field, {0, 0}, 40);
    CHECK(c.left.unit_steps());
    for (int64_t j = 0; j <= 40; ++j) {
      CHECK(c.left.at(j) <= c.right.at(j));
      if (j > 0) CHECK(c.right.at(j) <= c.right.at(j - 1) + 1);
    }
  }
}

TEST_CASE("window-touched propagation reports instead of truncating") {
  const EdgeField none(0.0, 5);
  CHECK_FALSE(right_edge_window(none, {0, 0}, 4, 8).has_value());
  CHECK_THROWS_AS(right_edge_direct(none, {0, 0}, 4), WindowOverflowError);
  // tiny window at moderate p is refused, wider window succeeds
  const EdgeField field(0.72, 97531);
  const auto narrow = right_edge_window(field, {0, 0}, 256, 2);
  const auto wide = right_edge_direct(field, {0, 0}, 256);
  if (narrow.has_value()) {
    CHECK(narrow->positions == wide.positions);
  }
  CHECK(wide.positions.size() == 257);
}

TEST_CASE("pair coalescence: trivial cases") {
  const EdgeField all(1.0, 6);
  // parallel straight paths never meet
  CHECK_FALSE(right_edge_coalescence(all, {0, 0}, {2, 0}, 64).has_value());
  // identical half-lines are coalesced from the start
  CHECK(right_edge_coalescence(all, {2, 0}, {2, 0}, 8) == 0);
  CHECK_THROWS_AS(right_edge_coalescence(all, {4, 0}, {2, 0}, 8),
                  ConfigError);
}

TEST_CASE("pair non-coalescence by n = 1 and n = 2 matches enumeration") {
  // n = 1 by hand: p + (1-p) p (1-p); n = 2 by the enumeration oracle.
  for (const double p : {0.3, 0.8}) {
    const double exact1 = p + (1 - p) * p * (1 - p);
    CHECK(oracle::exact_right_edge_pair_noncoalescence(p, 1) ==
          doctest::Approx(exact1).epsilon(1e-12));

    const double exact2 = oracle::exact_right_edge_pair_noncoalescence(p, 2);
    const uint64_t reps = 100'000;
    uint64_t sep1 = 0, sep2 = 0;
    for (uint64_t r = 0; r < reps; ++r) {
      const EdgeField field(p, derive_seed(140, r));
      const auto tau = right_edge_coalescence(field, {0, 0}, {2, 0}, 2);
      sep1 += !(tau.has_value() && *tau <= 1);
      sep2 += !tau.has_value();
    }
    const double se1 = std::sqrt(exact1 * (1 - exact1) / reps);
    const double se2 = std::sqrt(exact2 * (1 - exact2) / reps);
    CHECK(std::abs(static_cast<double>(sep1) / reps - exact1) < 3 * se1);
    CHECK(std::abs(static_cast<double>(sep2) / reps - exact2) < 3 * se2);
  }
}

TEST_CASE("coalescence of right edges is absorbing; clusters disjoint before") {
  const int64_t n = 48;
  int coalesced = 0;
  for (uint64_t r = 0; r < 1500; ++r) {
    const EdgeField field(0.8, derive_seed(55, r));
    const auto c1 = explore(field, {0, 0}, n);
    const auto c2 = explore(field, {4, 0}, n);
    const auto tau = first_meeting(c1.right, c2.right, n);
    for (int64_t j = 0; j <= n; ++j) {
      CHECK(c1.right.at(j) <= c2.right.at(j));  // non-crossing
      if (tau.has_value() && j >= *tau) {
        CHECK(c1.right.at(j) == c2.right.at(j));  // absorbing
      }
    }
    if (!tau.has_value()) continue;
    ++coalesced;
    if (*tau == 0) continue;
    // examined edges of the two explorations are disjoint before tau
    ExploreOptions record;
    record.record_edges = true;
    const auto e1 = explore(field, {0, 0}, *tau - 1, record);
    const auto e2 = explore(field, {4, 0}, *tau - 1, record);
    std::vector<uint64_t> common;
    std::set_intersection(e1.examined_keys.begin(), e1.examined_keys.end(),
                          e2.examined_keys.begin(), e2.examined_keys.end(),
                          std::back_inserter(common));
    CHECK(common.empty());
  }
  CHECK(coalesced > 900);
}

TEST_CASE("rightmost paths coalesce no later than right edges") {
  const int64_t n = 64;
  const int64_t horizon = 2 * n;
  for (uint64_t r = 0; r < 1500; ++r) {
    const EdgeField field(0.8, derive_seed(66, r));
    ReachCache cache(horizon);
    const auto g1 = halfline_rightmost_path(field, {0, 0}, cache, 512);
    const auto g2 = halfline_rightmost_path(field, {4, 0}, cache, 512);
    const auto tau_gamma = first_meeting(g1, g2, n);
    const auto tau_r = right_edge_coalescence(field, {0, 0}, {4, 0}, n);
    if (tau_r.has_value()) {
      REQUIRE(tau_gamma.has_value());
      CHECK(*tau_gamma <= *tau_r);
    }
  }
}

TEST_CASE("explore refuses to truncate the left search silently") {
  const EdgeField none(1e-9, 13);
  ExploreOptions opts;
  opts.max_starts = 4;
  CHECK_THROWS_AS(explore(none, {0, 0}, 16, opts), WindowOverflowError);
}
