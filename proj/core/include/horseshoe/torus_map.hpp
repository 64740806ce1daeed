#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "horseshoe/circle.hpp"

namespace horseshoe {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// A point of the two-torus, both coordinates reduced to [0, 1).
struct TorusPoint {
  double x = 0.0;
  double y = 0.0;

  TorusPoint() = default;
  TorusPoint(double xx, double yy) : x(wrap01(xx)), y(wrap01(yy)) {}

  double dist(const TorusPoint& o) const {
    double dx = circle_dist(x, o.x), dy = circle_dist(y, o.y);
    return std::sqrt(dx * dx + dy * dy);
  }
};

// Coupling strength plus the configurable threshold standing in for the
// large-parameter regime where the asymptotic bounds start to hold.
struct MapParams {
  double k = 0.0;
  double k_min_guard = 30.0;
  bool allow_small_k = false;

  explicit MapParams(double kk = 0.0) : k(kk) {}
  MapParams(double kk, double guard, bool allow = false)
      : k(kk), k_min_guard(guard), allow_small_k(allow) {}

  // Throws unless |k| clears the guard or the caller overrode it.
  void require_large_k(const char* op) const;
};

struct Jacobian2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  // Eigenvalues; complex pair lands on the unit circle for this family.
  std::pair<std::complex<double>, std::complex<double>> eigenvalues() const;
};

enum class Stability { saddle, elliptic, parabolic };

struct FixedPointRecord {
  TorusPoint point;
  int branch_integer = 0;  // m with k sin(2 pi x) = m
  Stability stability = Stability::saddle;
  std::complex<double> eig1, eig2;
  double residual = 0.0;
};

struct CriticalData {
  double nu_plus = 0.0;        // critical point near +1/4, fixed in [0, 1/2)
  double nu_minus = 0.0;       // mirror root, lift -nu_plus
  double strip_halfwidth = 0;  // 2 / k^{1/3}
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double asym_constant = 0.0;  // (nu_plus - 1/4) * 2 pi^2 k, tends to 1
};

// Singular profile added to the first component of the perturbed family.
// Contractual: simple poles at nu_plus / nu_minus, identically zero whenever
// the circle distance to +-1/4 exceeds the support halfwidth.
struct RhoSpec {
  double nu_plus = 0.0;
  double nu_minus = 0.0;
  double support_halfwidth = 0.0;
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> deriv2;

  double pole_eps = 1e-13;
  bool at_pole(double x) const {
    return circle_dist(x, nu_plus) < pole_eps || circle_dist(x, nu_minus) < pole_eps;
  }
};

namespace stdmap {

// d/dx of the lifted first component: 2 + 2 pi k cos(2 pi x).
inline double deriv1(const MapParams& p, double x) {
  return 2.0 + kTwoPi * p.k * std::cos(kTwoPi * x);
}
// Second derivative of the lift: -4 pi^2 k sin(2 pi x).
inline double deriv2(const MapParams& p, double x) {
  return -kTwoPi * kTwoPi * p.k * std::sin(kTwoPi * x);
}

TorusPoint apply(const MapParams& p, const TorusPoint& pt);
TorusPoint apply_inverse(const MapParams& p, const TorusPoint& pt);
Jacobian2 jacobian(const MapParams& p, const TorusPoint& pt);

// Both solutions of 2 + 2 pi k cos(2 pi x) = 0 nearest +-1/4.
// Requires |k| > 1/pi; throws std::domain_error otherwise.
CriticalData critical_points(const MapParams& p);

// All fixed points: x = y with k sin(2 pi x) = m for integer |m| <= |k|.
std::vector<FixedPointRecord> fixed_points(const MapParams& p);

RhoSpec default_rho(const CriticalData& crit);

// Perturbed family: rho added to the first component. Throws at the poles.
TorusPoint g_apply(const MapParams& p, const RhoSpec& rho, const TorusPoint& pt);
TorusPoint g_apply_inverse(const MapParams& p, const RhoSpec& rho, const TorusPoint& pt);

enum class Direction { forward, backward };
std::vector<TorusPoint> orbit(const MapParams& p, const TorusPoint& start, int n,
                              Direction dir = Direction::forward);

// Fixed points of the family that anchor the construction: the saddle at the
// origin and, for even k, the saddle at (-1/12, -1/12) mod 1.
FixedPointRecord origin_saddle(const MapParams& p);
FixedPointRecord companion_saddle(const MapParams& p);  // branch m = -k/2, k even

}  // namespace stdmap
}  // namespace horseshoe
