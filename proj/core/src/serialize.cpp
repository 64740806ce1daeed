#include "horseshoe/serialize.hpp"

namespace horseshoe {

void to_json(json& j, const TorusPoint& p) { j = json{{"x", p.x}, {"y", p.y}}; }

void to_json(json& j, const Jacobian2& m) {
  j = json{{"a11", m.a11}, {"a12", m.a12}, {"a21", m.a21}, {"a22", m.a22}, {"det", m.det()}};
}

void to_json(json& j, const FixedPointRecord& r) {
  const char* st = r.stability == Stability::saddle     ? "saddle"
                   : r.stability == Stability::elliptic ? "elliptic"
                                                        : "parabolic";
  j = json{{"point", r.point},
           {"branch_integer", r.branch_integer},
           {"stability", st},
           {"residual", r.residual}};
  if (r.eig1.imag() == 0.0) {
    j["eigenvalues"] = {r.eig1.real(), r.eig2.real()};
  } else {
    j["eigenvalues"] = {{"re", r.eig1.real()}, {"im", r.eig1.imag()}};
    j["on_unit_circle"] = true;
  }
}

void to_json(json& j, const CriticalData& c) {
  j = json{{"nu_plus", c.nu_plus},
           {"nu_minus", c.nu_minus},
           {"strip_halfwidth", c.strip_halfwidth},
           {"residual_plus", c.residual_plus},
           {"residual_minus", c.residual_minus},
           {"asym_constant", c.asym_constant}};
}

void to_json(json& j, const DirectionSample& s) {
  j = json{{"slope", s.slope},
           {"depth", s.depth},
           {"est_error", s.est_error},
           {"valid", s.valid},
           {"ok", s.ok}};
}

void to_json(json& j, const ProjectionResult& r) {
  j = json{{"coord", r.coord},
           {"est_error", r.est_error},
           {"step_used", r.step_used},
           {"valid", r.valid}};
  if (!r.reason.empty()) j["reason"] = r.reason;
}

void to_json(json& j, const CircleInterval& iv) {
  j = json{{"left", iv.left}, {"right", iv.right}, {"length", iv.length()}};
  if (!iv.name.empty()) j["name"] = iv.name;
}

void to_json(json& j, const EndpointSolve& e) {
  j = json{{"name", e.name},
           {"value", e.value},
           {"window", {e.window_lo, e.window_hi}},
           {"in_window", e.in_window},
           {"residual", e.residual},
           {"condition", e.condition},
           {"alternatives", e.alternatives}};
}

void to_json(json& j, const MarkovPartition& p) {
  j = json{{"case", to_string(p.case_tag)},
           {"mode", p.mode == PsiMode::raw ? "raw" : "corrected"},
           {"intervals", p.intervals},
           {"hull", p.hull},
           {"endpoints", p.endpoints},
           {"pi_s", p.pi_s},
           {"pi_u", p.pi_u},
           {"orientation", p.orientation},
           {"lift_span", p.lift_span},
           {"image_arc", p.image_arc},
           {"rho_zero_on_intervals", p.rho_zero_on_intervals},
           {"max_residual", p.max_residual()}};
}

void to_json(json& j, const CantorApprox& c) {
  j = json{{"level", c.level},
           {"hull_length", c.hull_length},
           {"intervals", c.intervals},
           {"deriv_min", c.deriv_min},
           {"deriv_max", c.deriv_max},
           {"total_length", c.total_length()}};
}

void to_json(json& j, const BowenSolution& b) {
  j = json{{"kappa", b.kappa}, {"residual", b.residual}, {"iterations", b.iterations}};
}

void to_json(json& j, const DimensionBracket& b) {
  j = json{{"lower", b.lower},
           {"upper", b.upper},
           {"level", b.level},
           {"distortion_used", b.distortion_used},
           {"width", b.upper - b.lower}};
}

void to_json(json& j, const ThicknessReport& t) {
  j = json{{"d_s", t.d_s},
           {"d_u", t.d_u},
           {"sum_ok", t.sum_ok},
           {"py_ok", t.py_ok},
           {"slightly_thick", t.slightly_thick}};
}

void to_json(json& j, const VerifyCaseResult& r) {
  j = json{{"case", to_string(r.which)},
           {"partition", r.partition},
           {"level_kappas", r.level_kappas},
           {"c1", r.c1},
           {"bracket", r.bracket},
           {"thickness_lower", r.thickness_lower},
           {"thickness_upper", r.thickness_upper},
           {"in_conservative_window", r.in_conservative_window},
           {"intersects_target_window", r.intersects_target_window},
           {"width", r.width},
           {"pass", r.pass}};
  if (!r.stage_error.empty()) j["stage_error"] = r.stage_error;
}

void to_json(json& j, const VerifyReport& r) {
  j = json{{"k", r.k}, {"level", r.level}, {"cases", r.cases}, {"pass", r.pass}};
}

void to_json(json& j, const TangencyCircle& c) {
  j = json{{"sign", c.sign},
           {"nu", c.nu},
           {"amplitude", c.amplitude},
           {"max_slope", c.max_slope},
           {"amplitude_bound", c.amplitude_bound},
           {"slope_bound", c.slope_bound},
           {"amplitude_ok", c.amplitude_ok},
           {"slope_ok", c.slope_ok},
           {"failures", c.failures},
           {"samples", c.samples.size()}};
}

void to_json(json& j, const UnfoldingSpeeds& s) {
  j = json{{"speed_s", s.speed_s}, {"speed_Gu", s.speed_Gu}, {"dk", s.dk}};
}

void to_json(json& j, const TangencyCantorSets& s) {
  j = json{{"Ksh", s.Ksh}, {"Kuh", s.Kuh}, {"level", s.level}};
}

void to_json(json& j, const TangencyEvent& e) {
  j = json{{"r", e.r},
           {"q", e.q},
           {"curvature_gap", e.curvature_gap},
           {"speed_s", e.speed_s},
           {"speed_Gu", e.speed_Gu},
           {"residual", e.residual},
           {"matched_label", e.matched_label},
           {"window", e.window},
           {"scan_points", e.scan_points}};
}

void write_leaf_csv(std::ostream& os, const LeafTrace& t) {
  os << "x,y\n";
  os.precision(17);
  for (const auto& p : t.points) os << p.x << "," << p.y << "\n";
}

void write_circle_csv(std::ostream& os, const TangencyCircle& c) {
  os << "x,sigma\n";
  os.precision(17);
  for (const auto& [x, s] : c.samples) os << x << "," << s << "\n";
}

void write_cover_csv(std::ostream& os, const CantorApprox& c) {
  os << "level,left,right,deriv_min,deriv_max\n";
  os.precision(17);
  for (std::size_t i = 0; i < c.intervals.size(); ++i)
    os << c.level << "," << c.intervals[i].left << "," << c.intervals[i].right << ","
       << c.deriv_min[i] << "," << c.deriv_max[i] << "\n";
}

}  // namespace horseshoe
