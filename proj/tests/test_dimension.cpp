#include <doctest.h>

#include <cmath>

#include "horseshoe/dimension.hpp"

using namespace horseshoe;

TEST_CASE("bowen_solve: printed roots of the two boundary cases") {
  // (1/16)^kappa + 2 (1/8)^kappa = (65/96)^kappa has its root near 0.5809,
  // and with total 71/96 near 0.5546.
  BowenSolution a = bowen_solve({1.0 / 16.0, 1.0 / 8.0, 1.0 / 8.0}, 65.0 / 96.0);
  CHECK(std::fabs(a.kappa - 0.5809) < 5e-4);
  CHECK(a.residual < 1e-12);

  BowenSolution b = bowen_solve({1.0 / 16.0, 1.0 / 8.0, 1.0 / 8.0}, 71.0 / 96.0);
  CHECK(std::fabs(b.kappa - 0.5546) < 5e-4);
  CHECK(b.residual < 1e-12);
}

TEST_CASE("bowen_solve: middle thirds and boundary behavior") {
  BowenSolution mt = bowen_solve({1.0 / 3.0, 1.0 / 3.0}, 1.0);
  CHECK(mt.kappa == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));

  // Two halves exhaust the total: kappa = 1 by convention.
  BowenSolution half = bowen_solve({0.35, 0.35}, 0.7);
  CHECK(half.kappa == 1.0);

  CHECK_THROWS_AS(bowen_solve({0.5, 0.4}, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(bowen_solve({-0.1, 0.2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bowen_solve({1.5}, 1.0), std::invalid_argument);
}

TEST_CASE("bowen_solve: scale invariance") {
  std::vector<double> base{0.0625, 0.125, 0.125};
  double total = 65.0 / 96.0;
  double ref = bowen_solve(base, total).kappa;
  for (double s : {1e-3, 1.0, 1e3}) {
    std::vector<double> scaled = base;
    for (auto& l : scaled) l *= s;
    CHECK(std::fabs(bowen_solve(scaled, total * s).kappa - ref) < 1e-12);
  }
}

TEST_CASE("bowen functional is strictly decreasing in kappa") {
  std::vector<double> ls{0.1, 0.2, 0.15};
  double L = 0.9;
  auto G = [&](double kappa) {
    double s = 0.0;
    for (double l : ls) s += std::pow(l / L, kappa);
    return s;
  };
  double prev = G(0.05);
  for (double kappa = 0.1; kappa <= 1.0; kappa += 0.05) {
    double cur = G(kappa);
    CHECK(cur < prev);
    prev = cur;
  }
  double root = bowen_solve(ls, L).kappa;
  CHECK(G(root - 1e-6) > 1.0);
  CHECK(G(root + 1e-6) < 1.0);
}

TEST_CASE("dimension_bracket: degenerate sandwich and synthetic oracle") {
  auto [part, branches] = make_middle_thirds();
  CantorApprox cov = refine_cantor(*branches, part, 3);

  DimensionBracket flat = dimension_bracket(cov, 0.0);
  CHECK(flat.lower == doctest::Approx(flat.upper).epsilon(1e-14));
  CHECK(flat.lower == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-10));

  const double dim = std::log(2.0) / std::log(3.0);
  for (int level = 1; level <= 6; ++level) {
    CantorApprox c = refine_cantor(*branches, part, level);
    DimensionBracket b = dimension_bracket(c, 1e-6);
    CHECK(b.lower <= dim);
    CHECK(b.upper >= dim);
    if (level == 6) {
      CHECK(std::fabs(b.lower - dim) < 1e-3);
      CHECK(std::fabs(b.upper - dim) < 1e-3);
    }
  }
}

TEST_CASE("dimension_bracket: width bounded by sensitivity times twice the distortion") {
  auto [part, branches] = make_synthetic_partition({1.0 / 16.0, 1.0 / 8.0, 1.0 / 8.0}, 65.0 / 96.0);
  CantorApprox cov = refine_cantor(*branches, part, 2);
  double delta = 0.05;
  DimensionBracket b = dimension_bracket(cov, delta);

  // Finite-difference sensitivity of the Bowen root to a uniform log-scale.
  double eps = 1e-5;
  auto scaled_root = [&](double d) {
    std::vector<double> ls = cov.lengths();
    for (auto& l : ls) l *= std::exp(d);
    return bowen_solve(ls, cov.hull_length).kappa;
  };
  double sens = std::fabs(scaled_root(eps) - scaled_root(-eps)) / (2.0 * eps);
  CHECK(b.upper - b.lower <= sens * 2.0 * delta * (1.0 + 0.05));
}

TEST_CASE("synthetic injected lengths reproduce the boundary-case root at every level") {
  auto [part, branches] = make_synthetic_partition({1.0 / 16.0, 1.0 / 8.0, 1.0 / 8.0}, 65.0 / 96.0);
  for (int level = 0; level <= 3; ++level) {
    CantorApprox c = refine_cantor(*branches, part, level);
    double kappa = bowen_solve(c.lengths(), c.hull_length).kappa;
    CHECK(std::fabs(kappa - 0.5809) < 5e-4);
  }
}

TEST_CASE("slight_thickness: window endpoints and reduction") {
  ThicknessReport mid = slight_thickness(0.55, 0.55);
  CHECK(mid.slightly_thick);

  ThicknessReport low = slight_thickness(0.5, 0.5);
  CHECK(!low.sum_ok);
  CHECK(!low.slightly_thick);

  ThicknessReport high = slight_thickness(0.6, 0.6);
  CHECK(high.sum_ok);
  CHECK(!high.py_ok);
  CHECK(!high.slightly_thick);

  CHECK_THROWS_AS(slight_thickness(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(slight_thickness(0.5, 1.0), std::domain_error);

  // Sweep against the analytic reduction 0.5 < d < 0.6.
  for (int i = 0; i <= 200; ++i) {
    double d = 0.45 + 0.001 * i;
    bool expected = (d > 0.5) && (d < 0.6);
    CHECK(slight_thickness(d, d).slightly_thick == expected);
  }
}
