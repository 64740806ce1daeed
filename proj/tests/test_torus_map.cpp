#include <doctest.h>

#include <cmath>
#include <random>

#include "horseshoe/torus_map.hpp"

using namespace horseshoe;
using namespace horseshoe::stdmap;

TEST_CASE("apply: direct substitutions") {
  MapParams k1(1.0);
  TorusPoint a = apply(k1, {0.0, 0.0});
  CHECK(a.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.y == doctest::Approx(0.0).epsilon(1e-15));

  TorusPoint b = apply(k1, {0.25, 0.0});
  CHECK(b.x == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(b.y == doctest::Approx(0.25).epsilon(1e-15));

  MapParams k2(2.0);
  TorusPoint c = apply(k2, {0.5, 0.5});
  CHECK(circle_dist(c.x, 0.5) < 1e-14);
  CHECK(c.y == doctest::Approx(0.5));
}

TEST_CASE("apply_inverse: substitution and roundtrip property") {
  MapParams k1(1.0);
  TorusPoint inv = apply_inverse(k1, {0.5, 0.25});
  CHECK(circle_dist(inv.x, 0.25) < 1e-14);
  CHECK(circle_dist(inv.y, 0.0) < 1e-14);

  MapParams k3(3.0);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    TorusPoint p{u(rng), u(rng)};
    TorusPoint q = apply_inverse(k3, apply(k3, p));
    worst = std::max(worst, p.dist(q));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("reversibility: inverse equals swap-conjugated forward") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double k : {1.0, 5.0, 100.0}) {
    MapParams p(k);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      TorusPoint q{u(rng), u(rng)};
      TorusPoint lhs = apply_inverse(p, q);
      TorusPoint fwd = apply(p, {q.y, q.x});
      TorusPoint rhs{fwd.y, fwd.x};
      worst = std::max(worst, lhs.dist(rhs));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("jacobian: closed form, unit determinant, eigenvalues") {
  MapParams k1(1.0);
  Jacobian2 J = jacobian(k1, {0.0, 0.0});
  CHECK(J.a11 == doctest::Approx(2.0 + kTwoPi).epsilon(1e-15));
  CHECK(J.a12 == -1.0);
  CHECK(J.a21 == 1.0);
  CHECK(J.a22 == 0.0);
  CHECK(std::fabs(J.det() - 1.0) < 1e-14);

  // Oracle: quadratic formula on trace 2 + 2 pi, product 1.
  double T = 2.0 + kTwoPi;
  double lam_plus = (T + std::sqrt(T * T - 4.0)) / 2.0;
  double lam_minus = (T - std::sqrt(T * T - 4.0)) / 2.0;
  auto [e1, e2] = J.eigenvalues();
  CHECK(e1.real() == doctest::Approx(lam_plus).epsilon(1e-12));
  CHECK(e2.real() == doctest::Approx(lam_minus).epsilon(1e-12));
  CHECK(e1.real() * e2.real() == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double k : {1.0, 5.0, 100.0}) {
    MapParams p(k);
    for (int i = 0; i < 1000; ++i) {
      CHECK(std::fabs(jacobian(p, {u(rng), u(rng)}).det() - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("critical points: residual, symmetry, asymptotics") {
  CHECK_THROWS_AS(critical_points(MapParams(0.2)), std::domain_error);

  MapParams k100(100.0);
  CriticalData c = critical_points(k100);
  CHECK(c.residual_plus < 1e-10);
  CHECK(c.residual_minus < 1e-10);
  // Oracle: nu_plus = 1/4 + asin(1/(pi k)) / (2 pi).
  double oracle = 0.25 + std::asin(1.0 / (M_PI * 100.0)) / kTwoPi;
  CHECK(c.nu_plus == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(circle_dist(wrap01(c.nu_minus), wrap01(-c.nu_plus)) < 1e-12);
  CHECK(c.strip_halfwidth == doctest::Approx(2.0 / std::cbrt(100.0)));

  // Scaling: (nu_plus - 1/4) * 2 pi^2 k tends to 1, within 1% by k = 400.
  double prev_gap = 1e9;
  for (double k : {50.0, 100.0, 200.0, 400.0}) {
    CriticalData ck = critical_points(MapParams(k));
    double gap = std::fabs(ck.asym_constant - 1.0);
    CHECK(gap < prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(std::fabs(critical_points(MapParams(400.0)).asym_constant - 1.0) < 0.01);
}

TEST_CASE("fixed points: anchors present with tight residuals") {
  MapParams k100(100.0);
  auto fps = fixed_points(k100);

  bool has_origin = false, has_companion = false, has_half = false;
  for (const auto& r : fps) {
    if (r.point.dist({0.0, 0.0}) < 1e-12) {
      has_origin = true;
      CHECK(r.stability == Stability::saddle);
      CHECK(r.residual < 1e-10);
    }
    if (r.point.dist({11.0 / 12.0, 11.0 / 12.0}) < 1e-10) {
      has_companion = true;
      CHECK(r.branch_integer == -50);
      CHECK(r.residual < 1e-10);
    }
    if (r.point.dist({0.5, 0.5}) < 1e-12) has_half = true;
    CHECK(r.point.x == doctest::Approx(r.point.y).epsilon(1e-15));
  }
  CHECK(has_origin);
  CHECK(has_companion);
  CHECK(has_half);

  FixedPointRecord pu = companion_saddle(k100);
  CHECK(pu.point.dist({11.0 / 12.0, 11.0 / 12.0}) < 1e-10);
  CHECK(pu.stability == Stability::saddle);
}

TEST_CASE("rho: support, poles, odd symmetry") {
  MapParams k1000(1000.0);
  CriticalData crit = critical_points(k1000);
  RhoSpec rho = default_rho(crit);

  SUBCASE("vanishes exactly outside the strips") {
    for (double x : {0.0, 0.01, 0.5, 0.49, 0.96}) {
      bool outside = circle_dist(x, 0.25) > crit.strip_halfwidth &&
                     circle_dist(x, 0.75) > crit.strip_halfwidth;
      if (outside) CHECK(rho.value(x) == 0.0);
    }
  }
  SUBCASE("diverges at the poles") {
    double prev = 0.0;
    for (double eps : {1e-3, 1e-5, 1e-7, 1e-9}) {
      double v = std::fabs(rho.value(crit.nu_plus + eps));
      CHECK(v > prev);
      prev = v;
    }
    CHECK(prev > 1e8);
  }
  SUBCASE("odd around zero") {
    for (double x : {0.1, 0.2, 0.3, 0.42}) {
      CHECK(rho.value(wrap01(-x)) == doctest::Approx(-rho.value(x)).epsilon(1e-12));
    }
  }
  SUBCASE("derivative consistency by finite differences") {
    for (double x : {0.15, 0.22, 0.30, 0.40}) {
      double h = 1e-6;
      double fd = (rho.value(x + h) - rho.value(x - h)) / (2.0 * h);
      CHECK(rho.deriv(x) == doctest::Approx(fd).epsilon(1e-5));
      double fd2 = (rho.deriv(x + h) - rho.deriv(x - h)) / (2.0 * h);
      CHECK(rho.deriv2(x) == doctest::Approx(fd2).epsilon(1e-4));
    }
  }
}

TEST_CASE("g_apply: agrees with apply off the strips, differs inside, poles throw") {
  MapParams k1000(1000.0);
  CriticalData crit = critical_points(k1000);
  RhoSpec rho = default_rho(crit);

  TorusPoint p0{0.0, 0.3};
  CHECK(g_apply(k1000, rho, p0).dist(apply(k1000, p0)) < 1e-15);

  double inside = wrap01(0.25 + 1.0 / std::cbrt(1000.0));
  TorusPoint p1{inside, 0.3};
  CHECK(circle_dist(g_apply(k1000, rho, p1).x, apply(k1000, p1).x) > 1e-8);

  CHECK_THROWS_AS(g_apply(k1000, rho, {crit.nu_plus, 0.0}), std::domain_error);
}

TEST_CASE("perturbed step stays expanding between the poles") {
  // The reinforcing pole signs keep |A| large across the strips.
  for (double k : {200.0, 1000.0}) {
    MapParams p(k);
    CriticalData crit = critical_points(p);
    RhoSpec rho = default_rho(crit);
    double min_abs = 1e300;
    for (int i = 0; i < 20000; ++i) {
      double x = (i + 0.5) / 20000.0;
      if (circle_dist(x, crit.nu_plus) < 1e-4 || circle_dist(x, wrap01(crit.nu_minus)) < 1e-4)
        continue;
      double a = deriv1(p, x) + rho.deriv(x);
      min_abs = std::min(min_abs, std::fabs(a));
    }
    CHECK(min_abs > 2.0);
  }
}

TEST_CASE("orbit: fixed point constancy, consistency, roundtrip") {
  MapParams k2(2.0);
  auto o = orbit(k2, {0.0, 0.0}, 5);
  CHECK(o.size() == 6);
  for (const auto& pt : o) CHECK(pt.dist({0.0, 0.0}) < 1e-15);

  auto one = orbit(k2, {0.3, 0.3}, 1);
  CHECK(one[1].dist(apply(k2, {0.3, 0.3})) == 0.0);

  TorusPoint p{0.3, 0.3};
  auto fwd = orbit(k2, p, 6);
  auto back = orbit(k2, fwd.back(), 6, Direction::backward);
  CHECK(back.back().dist(p) < 1e-9);

  CHECK_THROWS_AS(orbit(k2, p, -1), std::invalid_argument);
}

TEST_CASE("k_min_guard refuses small k unless overridden") {
  MapParams small(5.0);
  CHECK_THROWS_AS(small.require_large_k("op"), std::domain_error);
  MapParams overridden(5.0, 30.0, true);
  CHECK_NOTHROW(overridden.require_large_k("op"));
  MapParams big(100.0);
  CHECK_NOTHROW(big.require_large_k("op"));
}
