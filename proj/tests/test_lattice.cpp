#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opbw/lattice.hpp"

using namespace opbw;

TEST_CASE("children and parents follow the oriented edges") {
  const auto [cl, cr] = children({0, 0});
  CHECK(cl == Site{-1, 1});
  CHECK(cr == Site{1, 1});
  const auto [pl, pr] = parents({1, 1});
  CHECK(pl == Site{0, 0});
  CHECK(pr == Site{2, 0});

  // Parity is preserved by every move.
  const Site z{4, 2};
  CHECK(z.valid());
  CHECK(left_child(z).valid());
  CHECK(right_child(z).valid());
  CHECK((Edge{z, Dir::Left}.to() == left_child(z)));
  CHECK((Edge{z, Dir::Right}.to() == right_child(z)));
}

TEST_CASE("degenerate probabilities decide every edge") {
  const EdgeField all(1.0, 123);
  const EdgeField none(0.0, 123);
  for (int64_t x = -40; x <= 40; x += 2) {
    CHECK(all.is_open({x, 0}, Dir::Left));
    CHECK(all.is_open({x, 0}, Dir::Right));
    CHECK_FALSE(none.is_open({x, 0}, Dir::Left));
    CHECK_FALSE(none.is_open({x, 0}, Dir::Right));
  }
}

TEST_CASE("evaluation is a pure function of (seed, edge)") {
  const EdgeField a(0.37, 999);
  const EdgeField b(0.37, 999);
  const EdgeField c(0.37, 1000);
  int differ = 0;
  for (int64_t k = 0; k < 2000; ++k) {
    const Site s{2 * k, 0};
    CHECK(a.is_open(s, Dir::Right) == b.is_open(s, Dir::Right));
    if (a.is_open(s, Dir::Right) != c.is_open(s, Dir::Right)) ++differ;
  }
  CHECK(differ > 0);  // different seeds give a different environment
}

TEST_CASE("open fraction over distinct edges matches p") {
  const double p = 0.8;
  const EdgeField field(p, 20240131);
  const int64_t trials = 1'000'000;
  int64_t open = 0;
  for (int64_t k = 0; k < trials; ++k) {
    const Site s{2 * (k % 1000) - 1000 + (k / 1000 % 2 ? 1 : 0),
                 k / 1000 % 2 ? 1 : 0};
    // march through time as well to get distinct edges
    const Site site{s.x, s.i + 2 * (k / 2000)};
    if (field.is_open(site, (k & 1) ? Dir::Left : Dir::Right)) ++open;
  }
  const double frac = static_cast<double>(open) / trials;
  const double tol = 3.0 * std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(frac - p) < tol);
}

TEST_CASE("per-edge frequency and pairwise correlation over seeds") {
  const double p = 0.6;
  const int64_t seeds = 100'000;
  const Edge e1{{0, 0}, Dir::Right};
  const Edge e2{{4, 2}, Dir::Left};
  int64_t n1 = 0, n2 = 0, n12 = 0;
  for (int64_t s = 0; s < seeds; ++s) {
    const EdgeField field(p, derive_seed(77, static_cast<uint64_t>(s)));
    const bool b1 = field.is_open(e1);
    const bool b2 = field.is_open(e2);
    n1 += b1;
    n2 += b2;
    n12 += b1 && b2;
  }
  const double f1 = static_cast<double>(n1) / seeds;
  const double f2 = static_cast<double>(n2) / seeds;
  const double f12 = static_cast<double>(n12) / seeds;
  const double se = std::sqrt(p * (1 - p) / seeds);
  CHECK(std::abs(f1 - p) < 3 * se);
  CHECK(std::abs(f2 - p) < 3 * se);
  // covariance of two indicators, each with variance p(1-p)
  const double cov = f12 - f1 * f2;
  const double cov_se = p * (1 - p) / std::sqrt(static_cast<double>(seeds));
  CHECK(std::abs(cov) < 3 * cov_se);
}

TEST_CASE("derive_seed decorrelates replicate streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  // same inputs, same stream
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
}
