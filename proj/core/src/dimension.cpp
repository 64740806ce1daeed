#include "horseshoe/dimension.hpp"

#include <cmath>
#include <stdexcept>

namespace horseshoe {

BowenSolution bowen_solve(const std::vector<double>& lengths, double total) {
  if (lengths.empty()) throw std::invalid_argument("bowen_solve: empty length list");
  if (!(total > 0.0)) throw std::invalid_argument("bowen_solve: total must be positive");
  double sum = 0.0;
  for (double l : lengths) {
    if (!(l > 0.0)) throw std::invalid_argument("bowen_solve: lengths must be positive");
    if (!(l < total * (1.0 + 1e-12)))
      throw std::invalid_argument("bowen_solve: each length must be below the total");
    sum += l;
  }
  if (sum > total * (1.0 + 1e-12))
    throw std::invalid_argument("bowen_solve: lengths sum beyond the total, no root in (0, 1]");
  if (sum >= total * (1.0 - 1e-12)) return {1.0, 0.0, 0};  // boundary case, documented

  auto G = [&](double kappa) {
    double s = 0.0;
    for (double l : lengths) s += std::pow(l / total, kappa);
    return s - 1.0;
  };
  // G is strictly decreasing, positive at 0+, negative at 1.
  double lo = 1e-6, hi = 1.0 - 1e-12;
  int iters = 0;
  if (G(lo) <= 0.0) lo = 1e-12;
  double glo = G(lo), ghi = G(hi);
  (void)glo;
  (void)ghi;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    double mid = 0.5 * (lo + hi);
    (G(mid) > 0.0 ? lo : hi) = mid;
    ++iters;
    if (hi - lo < 1e-10) break;
  }
  // Newton polish.
  double kappa = 0.5 * (lo + hi);
  for (int i = 0; i < 30; ++i) {
    double g = 0.0, dg = 0.0;
    for (double l : lengths) {
      double r = l / total, p = std::pow(r, kappa);
      g += p;
      dg += p * std::log(r);
    }
    g -= 1.0;
    ++iters;
    if (dg == 0.0) break;
    double next = kappa - g / dg;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::fabs(next - kappa) < 1e-16) {
      kappa = next;
      break;
    }
    kappa = next;
  }
  return {kappa, std::fabs(G(kappa)), iters};
}

DimensionBracket dimension_bracket(const CantorApprox& cover, double distortion) {
  if (cover.intervals.empty()) throw std::invalid_argument("dimension_bracket: empty cover");
  if (distortion < 0.0) throw std::invalid_argument("dimension_bracket: negative distortion");
  std::vector<double> lo = cover.lengths(), hi = cover.lengths();
  double down = std::exp(-distortion), up = std::exp(distortion);
  for (auto& l : lo) l *= down;
  double sum_up = 0.0;
  for (auto& l : hi) {
    l *= up;
    sum_up += l;
  }
  DimensionBracket b;
  b.level = cover.level;
  b.distortion_used = distortion;
  b.lower = bowen_solve(lo, cover.hull_length).kappa;
  b.upper = (sum_up >= cover.hull_length) ? 1.0 : bowen_solve(hi, cover.hull_length).kappa;
  return b;
}

ThicknessReport slight_thickness(double d_s, double d_u) {
  if (!(d_s > 0.0 && d_s < 1.0 && d_u > 0.0 && d_u < 1.0))
    throw std::domain_error("slight_thickness: dimensions must lie in (0, 1)");
  ThicknessReport r;
  r.d_s = d_s;
  r.d_u = d_u;
  double s = d_s + d_u, m = std::max(d_s, d_u);
  r.sum_ok = s > 1.0;
  r.py_ok = s * s + m * m < s + m;
  r.slightly_thick = r.sum_ok && r.py_ok;
  return r;
}

namespace {

VerifyCaseResult verify_case(const MapParams& p, int level, PartitionCase which,
                             PartitionOptions opt) {
  VerifyCaseResult r;
  r.which = which;
  std::string stage = "critical_points";
  try {
    CriticalData crit = stdmap::critical_points(p);
    RhoSpec rho = stdmap::default_rho(crit);

    stage = "build_proof_partition";
    r.partition = build_proof_partition(p, rho, which, opt);

    InducedCircleMap psi(p, rho, r.partition.mode);
    PsiBranches branches(psi);

    stage = "refine_cantor";
    for (int l = 0; l <= level; ++l) {
      CantorApprox cov = refine_cantor(branches, r.partition, l);
      r.level_kappas.push_back(bowen_solve(cov.lengths(), cov.hull_length).kappa);
    }
    CantorApprox cover = refine_cantor(branches, r.partition, level);

    stage = "distortion_constant";
    r.c1 = distortion_constant(branches, r.partition, std::max(1, level));

    stage = "dimension_bracket";
    r.bracket = dimension_bracket(cover, r.c1);
    r.width = r.bracket.upper - r.bracket.lower;

    stage = "slight_thickness";
    r.thickness_lower = slight_thickness(r.bracket.lower, r.bracket.lower);
    r.thickness_upper = slight_thickness(r.bracket.upper, r.bracket.upper);

    r.in_conservative_window = r.bracket.lower > 0.5 && r.bracket.upper < 0.6;
    r.intersects_target_window = r.bracket.lower < 0.581 && r.bracket.upper > 0.554;
    r.pass = r.in_conservative_window && r.intersects_target_window;
  } catch (const std::exception& e) {
    r.stage_error = stage + ": " + e.what();
    r.pass = false;
  }
  return r;
}

}  // namespace

VerifyReport verify_dimension_window(const MapParams& p, int level, PartitionOptions opt) {
  VerifyReport rep;
  rep.k = p.k;
  rep.level = level;
  rep.cases.push_back(verify_case(p, level, PartitionCase::proof_former, opt));
  rep.cases.push_back(verify_case(p, level, PartitionCase::proof_latter, opt));
  rep.pass = rep.cases[0].pass && rep.cases[1].pass;
  return rep;
}

VerifyReport verify_dimension_window(const MapParams& p, int level, PartitionCase only,
                                     PartitionOptions opt) {
  VerifyReport rep;
  rep.k = p.k;
  rep.level = level;
  rep.cases.push_back(verify_case(p, level, only, opt));
  rep.pass = rep.cases[0].pass;
  return rep;
}

}  // namespace horseshoe
