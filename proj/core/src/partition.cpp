#include "horseshoe/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horseshoe/roots.hpp"

namespace horseshoe {

InducedCircleMap::InducedCircleMap(const MapParams& p, const RhoSpec& rho, PsiMode mode)
    : params_(p), rho_(rho), mode_(mode), fields_(FieldSystem::perturbed(p, rho)) {}

double InducedCircleMap::raw_lift(double x) const {
  if (rho_.at_pole(wrap01(x)))
    throw std::domain_error("psi: evaluation at a singular point");
  return -nu_plus() + 2.0 * x + params_.k * std::sin(kTwoPi * x) + rho_.value(x);
}

double InducedCircleMap::lift(double x) const {
  double raw = raw_lift(x);
  if (mode_ == PsiMode::raw) return raw;
  TorusPoint stepped = stdmap::g_apply(params_, rho_, {wrap01(x), nu_plus()});
  ProjectionResult pr = fields_.project_stable(stepped);
  return raw + circle_diff(pr.coord, wrap01(raw));
}

double InducedCircleMap::deriv(double x) const {
  // The projection correction moves at the order of the field slopes; the
  // lift slope is dominated by the dynamical step.
  return stdmap::deriv1(params_, x) + rho_.deriv(x);
}

double InducedCircleMap::deriv2(double x) const {
  return stdmap::deriv2(params_, x) + rho_.deriv2(x);
}

double InducedCircleMap::dual_raw(double y) const { return wrap01(raw_lift(y)); }

double InducedCircleMap::dual_eval(double y) const {
  TorusPoint q = stdmap::g_apply_inverse(params_, rho_, {nu_plus(), wrap01(y)});
  if (mode_ == PsiMode::raw) return wrap01(q.y);
  ProjectionResult pr = fields_.project_unstable(q);
  return pr.coord;
}

std::string to_string(PartitionCase c) {
  switch (c) {
    case PartitionCase::duarte: return "duarte";
    case PartitionCase::proof_former: return "proof_former";
    case PartitionCase::proof_latter: return "proof_latter";
    default: return "synthetic";
  }
}

double MarkovPartition::max_residual() const {
  double m = 0.0;
  for (const auto& e : endpoints) m = std::max(m, e.residual);
  return m;
}

bool MarkovPartition::all_in_window() const {
  for (const auto& e : endpoints)
    if (!e.in_window) return false;
  return true;
}

double CantorApprox::total_length() const {
  double s = 0.0;
  for (const auto& iv : intervals) s += iv.length();
  return s;
}

std::vector<double> CantorApprox::lengths() const {
  std::vector<double> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) out.push_back(iv.length());
  return out;
}

namespace {

// Lifts of the two poles falling inside [lo, hi].
std::vector<double> poles_in(const RhoSpec& rho, double lo, double hi) {
  std::vector<double> ps;
  for (double base : {rho.nu_plus, rho.nu_minus})
    for (double p = base + std::floor(lo - base) - 1.0; p <= hi + 1.0; p += 1.0)
      if (p > lo && p < hi) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

struct PickResult {
  double value = 0.0;
  int alternatives = 0;
  bool found = false;
};

// Root of psi(x) = target (mod 1) in [lo, hi] nearest to `preferred`, using
// the monotone lift on each pole-free segment.  The total root count over
// the window comes from the lift sweep; only candidates near the preferred
// point are actually solved.
PickResult pick_root_in_window(const InducedCircleMap& psi, double lo, double hi, double target,
                               double preferred, bool fixed_point_eq) {
  PickResult best;
  const double pe = 64.0 * psi.rho().pole_eps;
  std::vector<double> cuts = poles_in(psi.rho(), lo, hi);
  std::vector<std::pair<double, double>> segs;
  double start = lo;
  for (double c : cuts) {
    segs.emplace_back(start, c - pe);
    start = c + pe;
  }
  segs.emplace_back(start, hi);

  long total_roots = 0;
  std::vector<double> candidates;
  for (auto [a, b] : segs) {
    if (b - a < 4.0 * pe) continue;
    auto F = [&](double x) { return psi.lift(x) - (fixed_point_eq ? x : target); };
    double Fa = F(a), Fb = F(b);
    double mlo = std::min(Fa, Fb), mhi = std::max(Fa, Fb);
    long n0 = static_cast<long>(std::ceil(mlo)), n1 = static_cast<long>(std::floor(mhi));
    if (n1 < n0) continue;
    total_roots += n1 - n0 + 1;
    double probe = std::clamp(preferred, a, b);
    long np = std::lround(F(probe));
    for (long n = np - 2; n <= np + 2; ++n) {
      if (n < n0 || n > n1) continue;
      auto Fn = [&](double x) { return F(x) - static_cast<double>(n); };
      double fa = Fa - n, fb = Fb - n;
      if (fa == 0.0) {
        candidates.push_back(a);
        continue;
      }
      if (fa * fb > 0.0) continue;
      candidates.push_back(brent(Fn, a, b, 1e-14).x);
    }
  }
  if (candidates.empty()) return best;
  best.found = true;
  best.alternatives = static_cast<int>(std::max<long>(0, total_roots - 1));
  best.value = candidates.front();
  for (double x : candidates)
    if (std::fabs(x - preferred) < std::fabs(best.value - preferred)) best.value = x;
  return best;
}

EndpointSolve solve_endpoint(const InducedCircleMap& psi, const std::string& name, double lo,
                             double hi, double target, double preferred,
                             const std::string& condition, bool fixed_point_eq = false) {
  PickResult pr = pick_root_in_window(psi, lo, hi, wrap01(target), preferred, fixed_point_eq);
  if (!pr.found)
    throw std::runtime_error("partition endpoint '" + name + "': no solution in window [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
  EndpointSolve e;
  e.name = name;
  e.value = pr.value;
  e.window_lo = lo;
  e.window_hi = hi;
  e.in_window = pr.value >= lo - 1e-12 && pr.value <= hi + 1e-12;
  double tgt = fixed_point_eq ? wrap01(pr.value) : wrap01(target);
  e.residual = circle_dist(psi.eval(pr.value), tgt);
  e.condition = condition;
  e.alternatives = pr.alternatives;
  return e;
}

// Validate the builders' lift layout: sorted, disjoint, spanning less than
// the full circle.  The hull is the convex hull in these lifts.
void finish_layout(std::vector<CircleInterval>& ivs, CircleInterval& hull) {
  if (ivs.empty()) throw std::invalid_argument("partition: no intervals");
  std::sort(ivs.begin(), ivs.end(),
            [](const CircleInterval& a, const CircleInterval& b) { return a.left < b.left; });
  for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
    if (ivs[i + 1].left < ivs[i].right - 1e-12)
      throw std::runtime_error("partition: intervals overlap as lifts");
  if (ivs.back().right - ivs.front().left >= 1.0)
    throw std::runtime_error("partition: hull spans the whole circle");
  if (!pairwise_disjoint(ivs)) throw std::runtime_error("partition: intervals overlap mod 1");
  hull = CircleInterval(ivs.front().left, ivs.back().right, "hull");
}

bool interval_clear_of_strips(const CircleInterval& iv, double halfwidth) {
  if (halfwidth >= 0.25) return false;  // the strips cover the circle
  for (double c : {0.25, 0.75}) {
    CircleInterval strip(c - halfwidth, c + halfwidth);
    std::vector<CircleInterval> two{iv, strip};
    if (!pairwise_disjoint(two)) return false;
  }
  return true;
}

void finish_partition(const InducedCircleMap& psi, MarkovPartition& P) {
  finish_layout(P.intervals, P.hull);
  P.orientation.clear();
  P.lift_span.clear();
  P.image_arc.clear();
  for (const auto& iv : P.intervals) {
    double span = psi.lift(iv.right) - psi.lift(iv.left);
    P.orientation.push_back(span >= 0.0 ? +1 : -1);
    P.lift_span.push_back(std::fabs(span));
    P.image_arc.push_back(wrap01(std::fabs(span)));
  }
  P.rho_zero_on_intervals = true;
  for (const auto& iv : P.intervals)
    if (!interval_clear_of_strips(iv, psi.rho().support_halfwidth))
      P.rho_zero_on_intervals = false;
}

// Fixed point of psi nearest the seed.
double psi_fixed_near(const InducedCircleMap& psi, double seed, double halfwidth) {
  PickResult pr =
      pick_root_in_window(psi, seed - halfwidth, seed + halfwidth, 0.0, seed, true);
  if (!pr.found) throw std::runtime_error("psi_fixed_near: no fixed point near seed");
  return pr.value;
}

}  // namespace

MarkovPartition build_duarte_partition(const MapParams& p, const RhoSpec& rho,
                                       PartitionOptions opt) {
  p.require_large_k("build_duarte_partition");
  InducedCircleMap psi(p, rho, opt.mode);
  const double z = std::cbrt(std::fabs(p.k));
  const double w3 = 3.0 / z, w4 = 4.0 / z;

  auto mid = [](double lo, double hi) { return 0.5 * (lo + hi); };

  try {
    MarkovPartition P;
    P.case_tag = PartitionCase::duarte;
    P.mode = opt.mode;

    EndpointSolve ea = solve_endpoint(psi, "a", -0.25 + w3, -0.25 + w4, 0.0,
                                      mid(-0.25 + w3, -0.25 + w4), "psi(a) = a", true);
    EndpointSolve eap = solve_endpoint(psi, "a'", -0.25 - w4, -0.25 - w3, ea.value,
                                       mid(-0.25 - w4, -0.25 - w3), "psi(a') = a");
    EndpointSolve eb = solve_endpoint(psi, "b", 0.25 - w4, 0.25 - w3, eap.value,
                                      mid(0.25 - w4, 0.25 - w3), "psi(b) = a'");
    EndpointSolve ebp = solve_endpoint(psi, "b'", 0.25 + w3, 0.25 + w4, eap.value,
                                       mid(0.25 + w3, 0.25 + w4), "psi(b') = a'");
    P.endpoints = {ea, eb, ebp, eap};

    double b_adj = eb.value;
    while (b_adj <= ea.value) b_adj += 1.0;
    double ap_adj = eap.value;
    while (ap_adj <= ebp.value) ap_adj += 1.0;
    P.intervals = {CircleInterval(ea.value, b_adj, "J0"),
                   CircleInterval(ebp.value, ap_adj, "J1")};
    finish_partition(psi, P);
    if (P.max_residual() > opt.residual_tol)
      throw std::runtime_error("duarte partition: residual above tolerance");
    return P;
  } catch (const std::exception&) {
    if (opt.mode == PsiMode::corrected) {
      PartitionOptions fb = opt;
      fb.mode = PsiMode::raw;
      return build_duarte_partition(p, rho, fb);
    }
    throw;
  }
}

MarkovPartition build_proof_partition(const MapParams& p, const RhoSpec& rho, PartitionCase which,
                                      PartitionOptions opt) {
  if (which != PartitionCase::proof_former && which != PartitionCase::proof_latter)
    throw std::invalid_argument("build_proof_partition: case must be former or latter");
  p.require_large_k("build_proof_partition");

  InducedCircleMap psi(p, rho, opt.mode);
  const double z = std::cbrt(std::fabs(p.k));
  const double w = 1.0 / z;

  try {
    MarkovPartition P;
    P.case_tag = which;
    P.mode = opt.mode;

    // Anchors: the circle classes of the two saddles, refined to the nearest
    // fixed point of psi so the boundary chain closes to solver accuracy.
    FieldSystem fields = FieldSystem::perturbed(p, rho);
    double seed_s = fields.project_stable({0.0, 0.0}).coord;
    FixedPointRecord pu = stdmap::companion_saddle(p);
    double seed_u = fields.project_unstable(pu.point).coord;
    double spacing_s = 1.0 / std::max(4.0, std::fabs(psi.deriv(0.0)) - 1.0);
    double spacing_u = 1.0 / std::max(4.0, std::fabs(psi.deriv(pu.point.x)) - 1.0);
    P.pi_s = psi_fixed_near(psi, circle_diff(seed_s, 0.0), 8.0 * spacing_s);
    P.pi_u = circle_diff(psi_fixed_near(psi, wrap01(seed_u), 8.0 * spacing_u), 0.0);

    auto corner_pick = [&](const char* name, double lo, double hi, double target, double corner,
                           const char* cond) {
      double preferred = opt.pick_window_midpoint ? 0.5 * (lo + hi) : corner;
      return solve_endpoint(psi, name, lo, hi, target, preferred, cond);
    };

    EndpointSolve ea, eb, ec, ed;
    if (which == PartitionCase::proof_former) {
      ec = corner_pick("c", 19.0 / 32.0, 19.0 / 32.0 + w, P.pi_u, 19.0 / 32.0, "psi(c) = pi_u");
      ed = corner_pick("d", -1.0 / 48.0, -1.0 / 48.0 + w, ec.value, -1.0 / 48.0, "psi(d) = c");
      eb = corner_pick("b", 15.0 / 32.0 - w, 15.0 / 32.0, ec.value, 15.0 / 32.0, "psi(b) = c");
      ea = corner_pick("a", 1.0 / 8.0, 1.0 / 8.0 + w, ed.value, 1.0 / 8.0, "psi(a) = d");
      P.intervals = {CircleInterval(P.pi_u, ed.value, "I-"),
                     CircleInterval(P.pi_s, ea.value, "I0"),
                     CircleInterval(eb.value, ec.value, "I1")};
    } else {
      ea = corner_pick("a", 1.0 / 8.0, 1.0 / 8.0 + w, P.pi_u, 1.0 / 8.0, "psi(a) = pi_u");
      ed = corner_pick("d", -7.0 / 48.0 - w, -7.0 / 48.0, P.pi_s, -7.0 / 48.0, "psi(d) = pi_s");
      ec = corner_pick("c", 19.0 / 32.0, 19.0 / 32.0 + w, ed.value, 19.0 / 32.0, "psi(c) = d");
      eb = corner_pick("b", 15.0 / 32.0 - w, 15.0 / 32.0, ec.value, 15.0 / 32.0, "psi(b) = c");
      P.intervals = {CircleInterval(ed.value, P.pi_u, "I-"),
                     CircleInterval(P.pi_s, ea.value, "I0"),
                     CircleInterval(eb.value, ec.value, "I1")};
    }
    P.endpoints = {ea, eb, ec, ed};
    finish_partition(psi, P);
    if (P.max_residual() > opt.residual_tol)
      throw std::runtime_error("proof partition: residual above tolerance");
    return P;
  } catch (const std::exception&) {
    if (opt.mode == PsiMode::corrected) {
      PartitionOptions fb = opt;
      fb.mode = PsiMode::raw;
      return build_proof_partition(p, rho, which, fb);
    }
    throw;
  }
}

namespace {

struct BranchGeometry {
  double lift_lo = 0.0;
  double lift_hi = 0.0;
  double span = 0.0;
  int orientation = +1;
};

BranchGeometry branch_geometry(const BranchProvider& br, int i, const CircleInterval& iv,
                               int grid) {
  double l0 = br.lift(i, iv.left), l1 = br.lift(i, iv.right);
  BranchGeometry g;
  g.orientation = (l1 >= l0) ? +1 : -1;
  g.lift_lo = std::min(l0, l1);
  g.lift_hi = std::max(l0, l1);
  g.span = g.lift_hi - g.lift_lo;
  if (g.span <= 0.0) throw std::runtime_error("refine_cantor: degenerate branch");
  double s0 = br.deriv(i, iv.left + 1e-12 * std::max(1.0, std::fabs(iv.left)));
  for (int j = 0; j <= grid; ++j) {
    double x = iv.left + iv.length() * (j + 0.5) / (grid + 1);
    if (br.deriv(i, x) * s0 < 0.0)
      throw std::runtime_error("refine_cantor: derivative sign change inside interval " +
                               std::to_string(i) + " (branch detection failed)");
  }
  return g;
}

}  // namespace

CantorApprox refine_cantor(const BranchProvider& br, const MarkovPartition& part, int n,
                           int branch_grid) {
  if (n < 0) throw std::invalid_argument("refine_cantor: level must be >= 0");
  const int N = static_cast<int>(part.intervals.size());
  const double hl = part.hull.left;
  const double H = part.hull.length();

  std::vector<BranchGeometry> geo;
  geo.reserve(N);
  for (int i = 0; i < N; ++i)
    geo.push_back(branch_geometry(br, i, part.intervals[i], branch_grid));

  // Effective branch: the monotone lift renormalized onto the hull.
  auto from_hull = [&](int i, double t) {
    double want = geo[i].lift_lo + (t - hl) * geo[i].span / H;
    want = std::clamp(want, geo[i].lift_lo, geo[i].lift_hi);
    auto F = [&](double x) { return br.lift(i, x) - want; };
    return brent(F, part.intervals[i].left, part.intervals[i].right, 1e-15).x;
  };
  auto eff_deriv = [&](int i, double x) { return std::fabs(br.deriv(i, x)) * H / geo[i].span; };

  CantorApprox cur;
  cur.level = 0;
  cur.hull_length = H;
  cur.intervals = part.intervals;
  for (int i = 0; i < N; ++i) cur.owner.push_back(i);

  auto fill_derivs = [&](CantorApprox& c) {
    c.deriv_min.assign(c.intervals.size(), 0.0);
    c.deriv_max.assign(c.intervals.size(), 0.0);
    for (std::size_t j = 0; j < c.intervals.size(); ++j) {
      double lo = 1e300, hi = 0.0;
      const auto& iv = c.intervals[j];
      for (int g = 0; g <= branch_grid; ++g) {
        double x = iv.left + iv.length() * g / std::max(1, branch_grid);
        double d = eff_deriv(c.owner[j], x);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      c.deriv_min[j] = lo;
      c.deriv_max[j] = hi;
    }
  };
  fill_derivs(cur);

  for (int level = 1; level <= n; ++level) {
    CantorApprox next;
    next.level = level;
    next.hull_length = H;
    for (int i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < cur.intervals.size(); ++j) {
        double xa = from_hull(i, cur.intervals[j].left);
        double xb = from_hull(i, cur.intervals[j].right);
        if (xa > xb) std::swap(xa, xb);
        next.intervals.emplace_back(xa, xb, "");
        next.owner.push_back(i);
      }
    }
    // Canonical order so concurrent refinement schedules agree.
    std::vector<std::size_t> idx(next.intervals.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return next.intervals[a].left < next.intervals[b].left;
    });
    CantorApprox sorted;
    sorted.level = level;
    sorted.hull_length = H;
    for (std::size_t i : idx) {
      sorted.intervals.push_back(next.intervals[i]);
      sorted.owner.push_back(next.owner[i]);
    }
    fill_derivs(sorted);
    cur = std::move(sorted);
  }
  return cur;
}

double max_gap(const CantorApprox& c) {
  if (c.intervals.empty()) return 0.5;
  return largest_gap(c.intervals) / 2.0;
}

double distortion_constant(const BranchProvider& br, const MarkovPartition& part, int level,
                           int grid) {
  if (level < 1) throw std::invalid_argument("distortion_constant: level must be >= 1");
  CantorApprox c = refine_cantor(br, part, level, grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < c.intervals.size(); ++j) {
    const auto& iv = c.intervals[j];
    for (int g = 0; g <= grid; ++g) {
      double x = iv.left + iv.length() * g / std::max(1, grid);
      double d1 = br.deriv(c.owner[j], x);
      double d2 = br.deriv2(c.owner[j], x);
      if (d1 != 0.0) worst = std::max(worst, std::fabs(d2) / (d1 * d1));
    }
  }
  return worst;
}

std::pair<MarkovPartition, std::shared_ptr<BranchProvider>> make_synthetic_partition(
    const std::vector<double>& lengths, double total) {
  if (lengths.size() < 2) throw std::invalid_argument("synthetic partition needs >= 2 intervals");
  double sum = 0.0;
  for (double l : lengths) {
    if (l <= 0.0) throw std::invalid_argument("synthetic partition: lengths must be positive");
    sum += l;
  }
  if (sum > total) throw std::invalid_argument("synthetic partition: lengths exceed total");
  const int N = static_cast<int>(lengths.size());
  double gap = (total - sum) / (N - 1);

  MarkovPartition P;
  P.case_tag = PartitionCase::synthetic;
  P.mode = PsiMode::raw;
  std::vector<double> slope, offset;
  double x = 0.0;
  for (int i = 0; i < N; ++i) {
    P.intervals.emplace_back(x, x + lengths[i], "S" + std::to_string(i));
    slope.push_back(total / lengths[i]);
    offset.push_back(-x * total / lengths[i]);
    x += lengths[i] + gap;
  }
  P.hull = CircleInterval(0.0, total, "hull");
  P.orientation.assign(N, +1);
  P.lift_span.assign(N, total);
  P.image_arc.assign(N, wrap01(total));
  P.rho_zero_on_intervals = true;
  return {P, std::make_shared<AffineBranches>(std::move(slope), std::move(offset))};
}

std::pair<MarkovPartition, std::shared_ptr<BranchProvider>> make_middle_thirds() {
  return make_synthetic_partition({1.0 / 3.0, 1.0 / 3.0}, 1.0);
}

}  // namespace horseshoe
