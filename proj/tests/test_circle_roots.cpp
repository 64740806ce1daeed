#include <doctest.h>

#include <cmath>

#include "horseshoe/circle.hpp"
#include "horseshoe/roots.hpp"

using namespace horseshoe;

TEST_CASE("wrap01 basics") {
  CHECK(wrap01(0.0) == 0.0);
  CHECK(wrap01(1.0) == 0.0);
  CHECK(wrap01(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(wrap01(3.75) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(wrap01(-1e-18) < 1.0);  // never returns 1
  CHECK(wrap01(5.0) == 0.0);
}

TEST_CASE("circle_diff lands in (-1/2, 1/2]") {
  CHECK(circle_diff(0.1, 0.9) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(circle_diff(0.9, 0.1) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(circle_diff(0.75, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(circle_dist(0.95, 0.05) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("interval disjointness and gaps with wraparound") {
  std::vector<CircleInterval> ivs{{0.1, 0.3}, {0.5, 0.7}};
  CHECK(pairwise_disjoint(ivs));
  CHECK(largest_gap(ivs) == doctest::Approx(0.4).epsilon(1e-12));

  std::vector<CircleInterval> wrapped{{0.9, 1.2}, {0.4, 0.6}};  // first wraps through 0
  CHECK(pairwise_disjoint(wrapped));
  CHECK(largest_gap(wrapped) == doctest::Approx(0.3).epsilon(1e-12));

  std::vector<CircleInterval> overlap{{0.1, 0.4}, {0.3, 0.5}};
  CHECK(!pairwise_disjoint(overlap));
}

TEST_CASE("largest_gap of a full cover is zero") {
  std::vector<CircleInterval> full{{0.0, 0.6}, {0.6, 1.0}};
  CHECK(largest_gap(full) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("brent finds bracketed roots") {
  auto f = [](double x) { return x * x * x - 2.0; };
  auto r = brent(f, 1.0, 2.0);
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
  CHECK_THROWS(brent(f, 2.0, 3.0));
}

TEST_CASE("newton_safeguarded clamps into the bracket") {
  auto f_df = [](double x, double& f, double& df) {
    f = std::cos(2.0 * M_PI * x);
    df = -2.0 * M_PI * std::sin(2.0 * M_PI * x);
  };
  auto r = newton_safeguarded(f_df, 0.2, 0.0, 0.5);
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("expand_bracket grows until a sign change") {
  auto f = [](double x) { return x - 0.37; };
  auto b = expand_bracket(f, 0.3, 0.01, 1.0);
  REQUIRE(b.has_value());
  CHECK(b->first <= 0.37);
  CHECK(b->second >= 0.37);
  auto none = expand_bracket([](double) { return 1.0; }, 0.0, 0.01, 0.1);
  CHECK(!none.has_value());
}

TEST_CASE("scan_roots picks up every sign change") {
  auto f = [](double x) { return std::sin(2.0 * M_PI * x); };
  auto roots = scan_roots(f, 0.1, 1.1, 64);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-12));
}
