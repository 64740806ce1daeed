#pragma once

#include <string>
#include <vector>

#include "horseshoe/partition.hpp"

namespace horseshoe {

struct BowenSolution {
  double kappa = 0.0;
  double residual = 0.0;  // |sum (l_i/L)^kappa - 1|
  int iterations = 0;
};

// Unique kappa in (0, 1] with sum_i (l_i / total)^kappa = 1.
// Requires 0 < l_i < total; sum l_i == total returns kappa = 1 exactly,
// sum l_i > total is rejected.
BowenSolution bowen_solve(const std::vector<double>& lengths, double total);

struct DimensionBracket {
  double lower = 0.0;
  double upper = 0.0;
  int level = 0;
  double distortion_used = 0.0;
};

// Bowen roots of the level-n cover lengths scaled by exp(-+distortion):
// the standard distortion sandwich around the coded dimension.
DimensionBracket dimension_bracket(const CantorApprox& cover, double distortion);

struct ThicknessReport {
  double d_s = 0.0, d_u = 0.0;
  bool sum_ok = false;       // d_s + d_u > 1
  bool py_ok = false;        // (d_s+d_u)^2 + max(d_s,d_u)^2 < d_s+d_u+max(d_s,d_u)
  bool slightly_thick = false;
};

// Both stable and unstable dimensions must lie in (0, 1).
// In the conservative case d_s = d_u = d this reduces to 0.5 < d < 0.6.
ThicknessReport slight_thickness(double d_s, double d_u);

struct VerifyCaseResult {
  PartitionCase which = PartitionCase::proof_former;
  MarkovPartition partition;
  std::vector<double> level_kappas;  // Bowen root per level up to the requested one
  double c1 = 0.0;                   // measured distortion constant
  DimensionBracket bracket;
  ThicknessReport thickness_lower, thickness_upper;
  bool in_conservative_window = false;  // bracket inside (0.5, 0.6)
  bool intersects_target_window = false;  // bracket meets (0.554, 0.581)
  double width = 0.0;
  bool pass = false;
  std::string stage_error;  // empty when every stage ran
};

struct VerifyReport {
  double k = 0.0;
  int level = 0;
  std::vector<VerifyCaseResult> cases;
  bool pass = false;
};

// End-to-end pipeline: proof partition -> cover -> distortion -> bracket ->
// thickness of both bracket ends.  Runs both boundary cases unless one is
// requested explicitly.
VerifyReport verify_dimension_window(const MapParams& p, int level,
                                     PartitionOptions opt = {});
VerifyReport verify_dimension_window(const MapParams& p, int level, PartitionCase only,
                                     PartitionOptions opt = {});

}  // namespace horseshoe
