#include "horseshoe/torus_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horseshoe/roots.hpp"

namespace horseshoe {

void MapParams::require_large_k(const char* op) const {
  if (allow_small_k) return;
  if (std::fabs(k) < k_min_guard)
    throw std::domain_error(std::string(op) + ": |k| below k_min_guard (" +
                            std::to_string(k_min_guard) + "); set allow_small_k to override");
}

std::pair<std::complex<double>, std::complex<double>> Jacobian2::eigenvalues() const {
  double t = trace(), d = det();
  double disc = t * t - 4.0 * d;
  if (disc >= 0.0) {
    double s = std::sqrt(disc);
    return {std::complex<double>((t + s) / 2.0, 0.0), std::complex<double>((t - s) / 2.0, 0.0)};
  }
  double s = std::sqrt(-disc);
  return {std::complex<double>(t / 2.0, s / 2.0), std::complex<double>(t / 2.0, -s / 2.0)};
}

namespace stdmap {

TorusPoint apply(const MapParams& p, const TorusPoint& pt) {
  double u = -pt.y + 2.0 * pt.x + p.k * std::sin(kTwoPi * pt.x);
  return {u, pt.x};
}

TorusPoint apply_inverse(const MapParams& p, const TorusPoint& pt) {
  double y = -pt.x + 2.0 * pt.y + p.k * std::sin(kTwoPi * pt.y);
  return {pt.y, y};
}

Jacobian2 jacobian(const MapParams& p, const TorusPoint& pt) {
  return {deriv1(p, pt.x), -1.0, 1.0, 0.0};
}

CriticalData critical_points(const MapParams& p) {
  if (std::fabs(p.k) <= 1.0 / M_PI)
    throw std::domain_error("critical_points: no solution, |k| <= 1/pi");

  auto solve_near = [&](double seed) {
    auto f_df = [&](double x, double& f, double& df) {
      f = deriv1(p, x);
      df = deriv2(p, x);
    };
    auto r = newton_safeguarded(f_df, seed, seed - 0.25, seed + 0.25, 1e-15);
    return r.x;
  };

  CriticalData c;
  // cos(2 pi x) = -1/(pi k); root near 1/4 taken in [0, 1/2).
  double delta = std::asin(1.0 / (M_PI * p.k)) / kTwoPi;
  c.nu_plus = solve_near(0.25 + delta);
  c.nu_minus = -c.nu_plus;
  c.strip_halfwidth = 2.0 / std::cbrt(std::fabs(p.k));
  c.residual_plus = std::fabs(deriv1(p, c.nu_plus));
  c.residual_minus = std::fabs(deriv1(p, c.nu_minus));
  c.asym_constant = (c.nu_plus - 0.25) * 2.0 * M_PI * M_PI * p.k;
  return c;
}

namespace {

FixedPointRecord make_fixed_point(const MapParams& p, double x, int m) {
  FixedPointRecord r;
  // Newton polish of k sin(2 pi x) = m.
  for (int it = 0; it < 4; ++it) {
    double f = p.k * std::sin(kTwoPi * x) - m;
    double df = p.k * kTwoPi * std::cos(kTwoPi * x);
    if (df == 0.0) break;
    x -= f / df;
  }
  r.point = {x, x};
  r.branch_integer = m;
  r.residual = std::fabs(p.k * std::sin(kTwoPi * r.point.x) - m);
  Jacobian2 J = jacobian(p, r.point);
  double t = J.trace();
  if (std::fabs(t) > 2.0 + 1e-12)
    r.stability = Stability::saddle;
  else if (std::fabs(t) < 2.0 - 1e-12)
    r.stability = Stability::elliptic;
  else
    r.stability = Stability::parabolic;
  std::tie(r.eig1, r.eig2) = J.eigenvalues();
  return r;
}

}  // namespace

std::vector<FixedPointRecord> fixed_points(const MapParams& p) {
  std::vector<FixedPointRecord> out;
  double ak = std::fabs(p.k);
  int mmax = static_cast<int>(std::floor(ak));
  for (int m = -mmax; m <= mmax; ++m) {
    double s = static_cast<double>(m) / p.k;
    if (std::fabs(s) > 1.0) continue;
    double base = std::asin(s) / kTwoPi;
    double cands[2] = {base, 0.5 - base};
    for (double cx : cands) {
      auto rec = make_fixed_point(p, wrap01(cx), m);
      bool dup = false;
      for (const auto& e : out)
        if (circle_dist(e.point.x, rec.point.x) < 1e-8) dup = true;
      if (!dup) out.push_back(rec);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FixedPointRecord& a, const FixedPointRecord& b) {
              return a.point.x < b.point.x;
            });
  return out;
}

namespace {

// Smooth bump on (-1, 1): exp(1 - 1/(1 - t^2)), value 1 at 0, flat zero at the edges.
struct Bump {
  static double w(double t) {
    double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t2));
  }
  static double dw(double t) {
    double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    double om = 1.0 - t2;
    return w(t) * (-2.0 * t / (om * om));
  }
  static double d2w(double t) {
    double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    double om = 1.0 - t2;
    double sp = -2.0 * t / (om * om);
    double spp = -(2.0 + 6.0 * t2) / (om * om * om);
    return w(t) * (sp * sp + spp);
  }
};

}  // namespace

RhoSpec default_rho(const CriticalData& crit) {
  RhoSpec rho;
  rho.nu_plus = crit.nu_plus;
  rho.nu_minus = wrap01(crit.nu_minus);
  rho.support_halfwidth = crit.strip_halfwidth;

  const double h = crit.strip_halfwidth;
  const double nup = crit.nu_plus;
  const double num = rho.nu_minus;

  // One windowed reciprocal per strip. The sign at each pole reinforces the
  // base derivative 2 + 2 pi k cos(2 pi x), so the perturbed circle map stays
  // monotone between consecutive poles.
  auto term = [h](double x, double center, double pole, double sign, int order) {
    double t = circle_diff(x, center) / h;
    double d = circle_diff(x, pole);
    double ad = std::fabs(d);
    if (std::fabs(t) >= 1.0) return 0.0;
    double sd = (d >= 0.0) ? 1.0 : -1.0;
    switch (order) {
      case 0:
        return sign * Bump::w(t) / ad;
      case 1:
        return sign * (Bump::dw(t) / (h * ad) - Bump::w(t) * sd / (d * d));
      default:
        return sign * (Bump::d2w(t) / (h * h * ad) - 2.0 * Bump::dw(t) * sd / (h * d * d) +
                       2.0 * Bump::w(t) / (ad * ad * ad));
    }
  };
  rho.value = [=](double x) { return term(x, 0.25, nup, +1.0, 0) + term(x, 0.75, num, -1.0, 0); };
  rho.deriv = [=](double x) { return term(x, 0.25, nup, +1.0, 1) + term(x, 0.75, num, -1.0, 1); };
  rho.deriv2 = [=](double x) { return term(x, 0.25, nup, +1.0, 2) + term(x, 0.75, num, -1.0, 2); };
  return rho;
}

TorusPoint g_apply(const MapParams& p, const RhoSpec& rho, const TorusPoint& pt) {
  if (rho.at_pole(pt.x)) throw std::domain_error("g_apply: evaluation at a pole of rho");
  double u = -pt.y + 2.0 * pt.x + p.k * std::sin(kTwoPi * pt.x) + rho.value(pt.x);
  return {u, pt.x};
}

TorusPoint g_apply_inverse(const MapParams& p, const RhoSpec& rho, const TorusPoint& pt) {
  if (rho.at_pole(pt.y)) throw std::domain_error("g_apply_inverse: evaluation at a pole of rho");
  double y = -pt.x + 2.0 * pt.y + p.k * std::sin(kTwoPi * pt.y) + rho.value(pt.y);
  return {pt.y, y};
}

std::vector<TorusPoint> orbit(const MapParams& p, const TorusPoint& start, int n, Direction dir) {
  if (n < 0) throw std::invalid_argument("orbit: n must be nonnegative");
  std::vector<TorusPoint> out;
  out.reserve(n + 1);
  out.push_back(start);
  for (int i = 0; i < n; ++i)
    out.push_back(dir == Direction::forward ? apply(p, out.back()) : apply_inverse(p, out.back()));
  return out;
}

FixedPointRecord origin_saddle(const MapParams& p) { return make_fixed_point(p, 0.0, 0); }

FixedPointRecord companion_saddle(const MapParams& p) {
  double half = p.k / 2.0;
  if (std::fabs(half - std::round(half)) > 1e-12)
    throw std::domain_error("companion_saddle: requires even integer k");
  int m = static_cast<int>(std::llround(-half));
  // sin(2 pi x) = -1/2 at x = -1/12; the branch used throughout.
  return make_fixed_point(p, wrap01(-1.0 / 12.0), m);
}

}  // namespace stdmap
}  // namespace horseshoe
