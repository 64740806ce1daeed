#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horseshoe/foliation.hpp"
#include "horseshoe/partition.hpp"

namespace horseshoe {

// Sampled graph of one of the two almost horizontal circles along which the
// stable field and the image of the unstable field coincide.
struct TangencyCircle {
  int sign = +1;  // +1: circle near nu_plus, -1: near nu_minus
  double nu = 0.0;
  std::vector<std::pair<double, double>> samples;  // (x, sigma(x))
  double amplitude = 0.0;                          // max |sigma(x) - nu|
  double max_slope = 0.0;                          // max |sigma'(x)|, local differences
  double amplitude_bound = 0.0;                    // 1 / (270 k^{5/3})
  double slope_bound = 0.0;                        // 1 / (12 k^{4/3})
  bool amplitude_ok = false;
  bool slope_ok = false;
  int failures = 0;  // grid points without a bracketed root
};

struct TangencyOptions {
  int grid_n = 256;
  SlopeOptions slopes;
  double root_tol = 1e-12;
};

// Height of the tangency circle over abscissa x (single-point solve).
double sigma_at(const FieldSystem& fields, int sign, double x, double root_tol = 1e-12);

TangencyCircle tangency_circle(const MapParams& p, const RhoSpec& rho, int sign,
                               TangencyOptions opt = {});

// Signed difference of leaf curvatures (stable minus image-unstable) at a
// point of the tangency circle, from second differences of traced leaves.
struct CurvatureResult {
  double gap = 0.0;
  double est_error = 0.0;  // step-halving estimate
  double h_used = 0.0;
};
CurvatureResult curvature_gap(const MapParams& p, const RhoSpec& rho, const TorusPoint& at,
                              double h = 1e-4);

struct UnfoldingSpeeds {
  double speed_s = 0.0;   // parameter speed of the stable-leaf footprint
  double speed_Gu = 0.0;  // parameter speed of the image-unstable footprint
  double dk = 0.0;
};
UnfoldingSpeeds unfolding_speed(const MapParams& p, double anchor_x, double dk = 1e-4);

// Projections of a Cantor cover onto the tangency circle: along the stable
// foliation, and along the image foliation through one dynamical step.
struct TangencyCantorSets {
  std::vector<double> Ksh;  // stable-side circle coordinates
  std::vector<double> Kuh;  // image-side circle coordinates
  int level = 0;
};
TangencyCantorSets tangency_cantor_sets(const MapParams& p, const RhoSpec& rho,
                                        const CantorApprox& cover);

// C1 closeness of the step-and-project transfer map to a rigid motion,
// sampled over the given labels: max |T(y) - (c - y)| and max |T' + 1|.
struct TransferRigidity {
  double c0 = 0.0;       // fitted constant of the reflected rotation
  double c0_dist = 0.0;  // sup deviation of values
  double c1_dist = 0.0;  // sup deviation of the derivative from -1
};
TransferRigidity transfer_rigidity(const MapParams& p, const RhoSpec& rho,
                                   const std::vector<double>& labels);

struct TangencyEvent {
  double r = 0.0;          // located parameter
  TorusPoint q;            // tangency point on the circle
  double curvature_gap = 0.0;
  double speed_s = 0.0;
  double speed_Gu = 0.0;
  double residual = 0.0;   // |offset(r)| at the root
  double matched_label = 0.0;  // circle class of the matched unstable leaf
  double window = 0.0;     // 4 / k^{1/3}
  int scan_points = 0;
};

struct FindTangencyOptions {
  int cover_level = 2;
  int scan_points_per_side = 100;   // resolution window/100
  double offset_tol = 1e-9;
  PsiMode partition_mode = PsiMode::raw;
};

// Scan the parameter window |r - k| < 4/k^{1/3} for a zero of the signed
// offset between the origin-saddle stable leaf footprint and the nearest
// image-side Cantor point on the tangency circle.
TangencyEvent find_heteroclinic_tangency(const MapParams& p, FindTangencyOptions opt = {});

// Least-squares slope of log(value) against log(k).
double loglog_slope(const std::vector<double>& ks, const std::vector<double>& values);

}  // namespace horseshoe
