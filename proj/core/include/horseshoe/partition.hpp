#pragma once

#include <memory>
#include <string>
#include <vector>

#include "horseshoe/foliation.hpp"
#include "horseshoe/torus_map.hpp"

namespace horseshoe {

enum class PsiMode { raw, corrected };

// The expansive map induced on the singular circle through nu_plus: one
// dynamical step of the perturbed family followed by the stable-foliation
// projection back to the circle.  The raw mode keeps only the first
// coordinate of the step; the corrected mode applies the projection.
class InducedCircleMap {
 public:
  InducedCircleMap(const MapParams& p, const RhoSpec& rho, PsiMode mode = PsiMode::corrected);

  double nu_plus() const { return fields_.nu_plus(); }
  PsiMode mode() const { return mode_; }
  const FieldSystem& fields() const { return fields_; }
  const MapParams& params() const { return params_; }
  const RhoSpec& rho() const { return rho_; }

  // Monotone real-valued lift between consecutive poles; input is a lift.
  double lift(double x) const;
  double raw_lift(double x) const;
  double eval(double x) const { return wrap01(lift(x)); }
  double deriv(double x) const;   // slope of the lift
  double deriv2(double x) const;

  // Equivalent definition through the unstable projection of the inverse
  // step, acting on the vertical singular circle.
  double dual_eval(double y) const;
  double dual_raw(double y) const;

 private:
  MapParams params_;
  RhoSpec rho_;
  PsiMode mode_;
  FieldSystem fields_;
};

enum class PartitionCase { duarte, proof_former, proof_latter, synthetic };

std::string to_string(PartitionCase c);

struct EndpointSolve {
  std::string name;       // a, b, a', b', c, d
  double value = 0.0;     // lift
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool in_window = false;
  double residual = 0.0;  // |Psi(value) - target| on the circle
  std::string condition;
  int alternatives = 0;   // other admissible roots found in the window
};

struct MarkovPartition {
  PartitionCase case_tag = PartitionCase::synthetic;
  PsiMode mode = PsiMode::raw;
  std::vector<CircleInterval> intervals;  // sorted by left lift, nested in hull
  CircleInterval hull;                    // convex hull of the intervals (lifts)
  std::vector<EndpointSolve> endpoints;
  double pi_s = 0.0;  // stable anchor: leaf class of the origin saddle
  double pi_u = 0.0;  // unstable anchor: leaf class of the companion saddle
  std::vector<int> orientation;        // per interval: +1 increasing, -1 decreasing
  std::vector<double> lift_span;       // |lift(right) - lift(left)| per interval
  std::vector<double> image_arc;       // collapsed image arc length (lift span mod 1)
  bool rho_zero_on_intervals = false;  // containment in the unperturbed region

  double max_residual() const;
  bool all_in_window() const;
};

struct PartitionOptions {
  PsiMode mode = PsiMode::corrected;
  double residual_tol = 1e-9;
  int window_scan_mult = 12;   // scan samples per unit of lift sweep
  bool pick_window_midpoint = false;  // default: root nearest the nominal corner
};

// Two-interval partition with fixed-endpoint boundary conditions near the
// quarter points; endpoint offsets lie in (3/k^{1/3}, 4/k^{1/3}).
MarkovPartition build_duarte_partition(const MapParams& p, const RhoSpec& rho,
                                       PartitionOptions opt = {});

// Three-interval partition anchored at the projections of the two saddles,
// with the case-dependent boundary chain.
MarkovPartition build_proof_partition(const MapParams& p, const RhoSpec& rho, PartitionCase which,
                                      PartitionOptions opt = {});

// Branch maps used by the refinement: one monotone lift per interval.
class BranchProvider {
 public:
  virtual ~BranchProvider() = default;
  virtual double lift(int interval, double x) const = 0;
  virtual double deriv(int interval, double x) const = 0;
  virtual double deriv2(int interval, double x) const = 0;
};

class PsiBranches : public BranchProvider {
 public:
  explicit PsiBranches(const InducedCircleMap& psi) : psi_(&psi) {}
  double lift(int, double x) const override { return psi_->lift(x); }
  double deriv(int, double x) const override { return psi_->deriv(x); }
  double deriv2(int, double x) const override { return psi_->deriv2(x); }

 private:
  const InducedCircleMap* psi_;
};

// Piecewise-affine expanding model; used for synthetic partitions and oracles.
class AffineBranches : public BranchProvider {
 public:
  AffineBranches(std::vector<double> slope, std::vector<double> offset)
      : slope_(std::move(slope)), offset_(std::move(offset)) {}
  double lift(int i, double x) const override { return slope_[i] * x + offset_[i]; }
  double deriv(int i, double) const override { return slope_[i]; }
  double deriv2(int, double) const override { return 0.0; }

 private:
  std::vector<double> slope_, offset_;
};

// Level-n cover of the coded Cantor set.
struct CantorApprox {
  int level = 0;
  double hull_length = 0.0;
  std::vector<CircleInterval> intervals;
  std::vector<double> deriv_min, deriv_max;  // one-step effective |M'| per interval
  std::vector<int> owner;                    // index of the level-0 interval containing it

  double total_length() const;
  std::vector<double> lengths() const;
};

// Refine by inverting each interval's monotone branch, renormalized onto the
// hull, against the previous level's intervals.
CantorApprox refine_cantor(const BranchProvider& br, const MarkovPartition& part, int n,
                           int branch_grid = 16);

// Half of the largest complementary gap of the cover.
double max_gap(const CantorApprox& c);

// Operational distortion constant: the largest single-wrap oscillation of
// log|Psi'| sampled over the level-n cover, i.e. max |Psi''| / Psi'^2.
double distortion_constant(const BranchProvider& br, const MarkovPartition& part, int level,
                           int grid = 32);

// Synthetic partition with prescribed interval lengths inside a hull of the
// given total length, realized by affine full branches.  Intervals are laid
// left to right starting at 0 with equal gaps.
std::pair<MarkovPartition, std::shared_ptr<BranchProvider>> make_synthetic_partition(
    const std::vector<double>& lengths, double total);

// The middle-thirds model: x -> 3x on [0,1/3] and [2/3,1].
std::pair<MarkovPartition, std::shared_ptr<BranchProvider>> make_middle_thirds();

}  // namespace horseshoe
