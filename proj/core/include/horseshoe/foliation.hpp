#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horseshoe/torus_map.hpp"

namespace horseshoe {

// An approximate invariant direction at a point.  For the stable field the
// slope is alpha in the vector (alpha, 1); for the unstable field it is alpha
// in (1, alpha).  est_error is the change over the last doubling of depth.
struct DirectionSample {
  double slope = 0.0;
  int depth = 0;
  double est_error = 0.0;
  bool valid = false;  // orbit stayed clear of the critical strips
  bool ok = true;      // renormalization never degenerated
};

enum class LeafKind { stable, unstable, pushforward };

struct LeafTrace {
  std::vector<TorusPoint> points;
  LeafKind which = LeafKind::stable;
  double step_used = 0.0;
  bool valid = true;
};

struct ProjectionResult {
  double coord = 0.0;      // circle coordinate on the singular circle
  double est_error = 0.0;  // step-halving self-consistency estimate
  double step_used = 0.0;
  bool valid = true;
  std::string reason;
};

struct SlopeOptions {
  int depth_start = 12;
  int depth_cap = 200;
  double tol = 1e-12;
};

struct TraceOptions {
  double step = 1.0 / 128.0;
  double min_step = 1.0 / 32768.0;
  double tol = 1e-11;
};

// Direction fields of the standard family, or of its singular perturbation
// when a rho profile is attached.  All methods are pure.
class FieldSystem {
 public:
  static FieldSystem standard(const MapParams& p);
  static FieldSystem perturbed(const MapParams& p, const RhoSpec& rho);

  const MapParams& params() const { return params_; }
  bool is_perturbed() const { return rho_.has_value(); }
  const RhoSpec* rho() const { return rho_ ? &*rho_ : nullptr; }
  double strip_halfwidth() const { return strip_halfwidth_; }
  double validity_clearance() const { return strip_halfwidth_ + margin_; }

  // Lifted first-component derivative of the system along x.
  double A(double x) const;
  double A_deriv(double x) const;

  TorusPoint step_forward(const TorusPoint& q) const;
  TorusPoint step_backward(const TorusPoint& q) const;

  bool clear_of_strips(double x) const;

  DirectionSample stable_slope(const TorusPoint& p, int depth) const;
  DirectionSample unstable_slope(const TorusPoint& p, int depth) const;
  DirectionSample stable_slope_auto(const TorusPoint& p, SlopeOptions o = {}) const;
  DirectionSample unstable_slope_auto(const TorusPoint& p, SlopeOptions o = {}) const;

  // Slope beta of the image foliation (pushforward of the unstable field by
  // the standard map), in the normalization (beta, 1).
  DirectionSample pushforward_slope(const TorusPoint& p, int depth) const;
  DirectionSample pushforward_slope_auto(const TorusPoint& p, SlopeOptions o = {}) const;

  // Leaf-following projections onto the singular circles through nu_plus.
  ProjectionResult project_stable(const TorusPoint& p, TraceOptions o = {}) const;
  ProjectionResult project_unstable(const TorusPoint& p, TraceOptions o = {}) const;

  LeafTrace leaf_trace(const TorusPoint& p, LeafKind which, double span,
                       TraceOptions o = {}) const;

  double nu_plus() const { return crit_.nu_plus; }
  const CriticalData& critical() const { return crit_; }

  // Extra clearance added to the strip halfwidth for validity checks,
  // in absolute circle units.
  void set_margin(double m) { margin_ = m; }

 private:
  FieldSystem(const MapParams& p, std::optional<RhoSpec> rho);

  MapParams params_;
  std::optional<RhoSpec> rho_;
  CriticalData crit_;
  double strip_halfwidth_ = 0.0;
  double margin_ = 0.0;
};

}  // namespace horseshoe
