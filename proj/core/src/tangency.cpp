#include "horseshoe/tangency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horseshoe/roots.hpp"

namespace horseshoe {

namespace {

double field_mismatch(const FieldSystem& f, double x, double y, const SlopeOptions& so) {
  DirectionSample beta = f.pushforward_slope_auto({x, y}, so);
  DirectionSample alpha = f.stable_slope_auto({x, y}, so);
  return beta.slope - alpha.slope;
}

double nu_of_sign(const FieldSystem& f, int sign) {
  return sign > 0 ? f.critical().nu_plus : wrap01(f.critical().nu_minus);
}

}  // namespace

double sigma_at(const FieldSystem& fields, int sign, double x, double root_tol) {
  const double k = std::fabs(fields.params().k);
  const double nu = nu_of_sign(fields, sign);
  SlopeOptions so;
  auto F = [&](double y) { return field_mismatch(fields, wrap01(x), y, so); };
  double w0 = 4.0 / (270.0 * std::pow(k, 5.0 / 3.0));
  auto bracket = expand_bracket(F, nu, w0, 1.0 / k);
  if (!bracket)
    throw std::runtime_error("sigma_at: no bracketed sign change near the critical height");
  return brent(F, bracket->first, bracket->second, root_tol).x;
}

TangencyCircle tangency_circle(const MapParams& p, const RhoSpec& rho, int sign,
                               TangencyOptions opt) {
  p.require_large_k("tangency_circle");
  FieldSystem fields = FieldSystem::perturbed(p, rho);
  const double k = std::fabs(p.k);

  TangencyCircle c;
  c.sign = sign;
  c.nu = nu_of_sign(fields, sign);
  c.amplitude_bound = 1.0 / (270.0 * std::pow(k, 5.0 / 3.0));
  c.slope_bound = 1.0 / (12.0 * std::pow(k, 4.0 / 3.0));

  const double dx = 1e-5;  // local step for the slope differences
  for (int i = 0; i < opt.grid_n; ++i) {
    double x = static_cast<double>(i) / opt.grid_n;
    try {
      double y = sigma_at(fields, sign, x, opt.root_tol);
      c.samples.emplace_back(x, y);
      double yl = sigma_at(fields, sign, x - dx, opt.root_tol);
      double yr = sigma_at(fields, sign, x + dx, opt.root_tol);
      double slope = circle_diff(yr, yl) / (2.0 * dx);
      c.max_slope = std::max(c.max_slope, std::fabs(slope));
      c.amplitude = std::max(c.amplitude, circle_dist(y, c.nu));
    } catch (const std::exception&) {
      ++c.failures;
    }
  }
  if (c.failures > opt.grid_n / 10)
    throw std::runtime_error("tangency_circle: more than 10% of grid points failed");
  c.amplitude_ok = c.amplitude <= c.amplitude_bound;
  c.slope_ok = c.max_slope <= c.slope_bound;
  return c;
}

CurvatureResult curvature_gap(const MapParams& p, const RhoSpec& rho, const TorusPoint& at,
                              double h) {
  FieldSystem fields = FieldSystem::perturbed(p, rho);
  TraceOptions to;
  to.step = h / 4.0;

  auto second_diff = [&](LeafKind kind, double hh) {
    LeafTrace up = fields.leaf_trace(at, kind, +hh, to);
    LeafTrace dn = fields.leaf_trace(at, kind, -hh, to);
    double xu = at.x + circle_diff(up.points.back().x, at.x);
    double xd = at.x + circle_diff(dn.points.back().x, at.x);
    return (xu - 2.0 * at.x + xd) / (hh * hh);
  };
  auto gap_at = [&](double hh) {
    return second_diff(LeafKind::stable, hh) - second_diff(LeafKind::pushforward, hh);
  };
  CurvatureResult r;
  double g1 = gap_at(h), g2 = gap_at(h / 2.0);
  r.gap = g2;
  r.est_error = std::fabs(g2 - g1);
  r.h_used = h / 2.0;
  return r;
}

namespace {

struct CircleGeometry {
  MapParams params;
  CriticalData crit;
  RhoSpec rho;
  FieldSystem fields;

  explicit CircleGeometry(const MapParams& p)
      : params(p),
        crit(stdmap::critical_points(p)),
        rho(stdmap::default_rho(crit)),
        fields(FieldSystem::perturbed(p, rho)) {}
};

// Footprint of the origin-saddle stable leaf on the tangency circle.
double stable_footprint(const CircleGeometry& g, double root_tol = 1e-12) {
  ProjectionResult pr = g.fields.project_stable({0.0, 0.0});
  double x_f = pr.coord;
  double y_star = sigma_at(g.fields, +1, x_f, root_tol);
  double alpha = g.fields.stable_slope_auto({x_f, g.crit.nu_plus}).slope;
  return wrap01(x_f + alpha * circle_diff(y_star, g.crit.nu_plus));
}

// Circle coordinate of the image-side point with unstable label y_label:
// the dynamical step carries the vertical-circle class onto the tangency
// circle.  Coarse mode freezes the leaf at its label and the circle at its
// critical height.
double transfer_point(const CircleGeometry& g, double y_label, bool fine,
                      double root_tol = 1e-12) {
  const double nu = g.crit.nu_plus;
  const double k = g.params.k;
  auto P_of = [&](double x, double Y) { return -Y + 2.0 * x + k * std::sin(kTwoPi * x); };
  if (!fine) return wrap01(P_of(nu, y_label));

  TraceOptions to;
  to.step = 1.0 / 512.0;
  auto Y_of = [&](double x) {
    double span = x - nu;
    if (std::fabs(span) < 1e-14) return wrap01(y_label);
    LeafTrace t = g.fields.leaf_trace({nu, wrap01(y_label)}, LeafKind::unstable, span, to);
    return wrap01(y_label) + circle_diff(t.points.back().y, wrap01(y_label));
  };
  auto G = [&](double x) {
    double u = P_of(x, Y_of(x));
    double s = sigma_at(g.fields, +1, u, root_tol);
    return circle_diff(x, s);
  };
  auto bracket = expand_bracket(G, nu, 1e-4, 0.05);
  if (!bracket) throw std::runtime_error("transfer_point: leaf does not meet the circle nearby");
  double x_star = brent(G, bracket->first, bracket->second, 1e-13).x;
  return wrap01(P_of(x_star, Y_of(x_star)));
}

}  // namespace

UnfoldingSpeeds unfolding_speed(const MapParams& p, double anchor_x, double dk) {
  UnfoldingSpeeds out;
  out.dk = dk;

  CircleGeometry base(p);
  double sigma_anchor = sigma_at(base.fields, +1, anchor_x);
  // Label of the image-side leaf through the anchor: pull the anchor point
  // back one step and read the vertical coordinate.
  TorusPoint pre = stdmap::apply_inverse(p, {anchor_x, sigma_anchor});
  double label = pre.y;

  MapParams plus = p, minus = p;
  plus.k += dk;
  minus.k -= dk;
  CircleGeometry gp(plus), gm(minus);

  out.speed_s = circle_diff(stable_footprint(gp), stable_footprint(gm)) / (2.0 * dk);
  out.speed_Gu =
      circle_diff(transfer_point(gp, label, true), transfer_point(gm, label, true)) / (2.0 * dk);
  out.speed_s = std::fabs(out.speed_s);
  out.speed_Gu = std::fabs(out.speed_Gu);
  return out;
}

TangencyCantorSets tangency_cantor_sets(const MapParams& p, const RhoSpec& rho,
                                        const CantorApprox& cover) {
  FieldSystem fields = FieldSystem::perturbed(p, rho);
  CircleGeometry g(p);
  TangencyCantorSets out;
  out.level = cover.level;

  auto endpoints = [&]() {
    std::vector<double> pts;
    for (const auto& iv : cover.intervals) {
      pts.push_back(wrap01(iv.left));
      pts.push_back(wrap01(iv.right));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return circle_dist(a, b) < 1e-12; }),
              pts.end());
    return pts;
  }();

  for (double x_k : endpoints) {
    // Stable side: slide the leaf through (x_k, nu_+) up to the circle.
    double y_star = sigma_at(fields, +1, x_k);
    double alpha = fields.stable_slope_auto({x_k, g.crit.nu_plus}).slope;
    out.Ksh.push_back(wrap01(x_k + alpha * circle_diff(y_star, g.crit.nu_plus)));
    // Image side: one dynamical step of the vertical-circle class.
    out.Kuh.push_back(transfer_point(g, x_k, true));
  }
  std::sort(out.Ksh.begin(), out.Ksh.end());
  std::sort(out.Kuh.begin(), out.Kuh.end());
  return out;
}

TransferRigidity transfer_rigidity(const MapParams& p, const RhoSpec& rho,
                                   const std::vector<double>& labels) {
  (void)rho;
  CircleGeometry g(p);
  TransferRigidity r;
  std::vector<double> values;
  values.reserve(labels.size());
  double c_acc = 0.0;
  for (double y : labels) {
    double t = transfer_point(g, y, true);
    values.push_back(t);
    c_acc += wrap01(t + y);
  }
  // Fit T(y) = c - y; measure sup deviations of values and of the local slope.
  r.c0 = c_acc / std::max<std::size_t>(1, labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    r.c0_dist = std::max(r.c0_dist, circle_dist(values[i], r.c0 - labels[i]));
  const double dy = 1e-5;
  for (double y : labels) {
    double tp = transfer_point(g, y + dy, true);
    double tm = transfer_point(g, y - dy, true);
    double slope = circle_diff(tp, tm) / (2.0 * dy);
    r.c1_dist = std::max(r.c1_dist, std::fabs(slope + 1.0));
  }
  return r;
}

namespace {

// Track the two-interval partition continuously in the parameter by polishing
// each endpoint from its previous value.
MarkovPartition track_duarte(const MapParams& pr, const RhoSpec& rho,
                             const MarkovPartition& prev, PsiMode mode) {
  InducedCircleMap psi(pr, rho, mode);
  MarkovPartition P = prev;

  auto polish = [&](double x_prev, double target, bool fixed_eq) {
    auto F = [&](double x) {
      double t = fixed_eq ? x : target;
      double l = psi.lift(x);
      return l - t - std::round(psi.lift(x_prev) - t);
    };
    auto br = expand_bracket(F, x_prev, 1e-6, 1e-2);
    if (!br) throw std::runtime_error("track_duarte: endpoint lost while tracking");
    return brent(F, br->first, br->second, 1e-14).x;
  };

  // Same chain as the builder: a, a', b, b'.
  EndpointSolve &ea = P.endpoints[0], &eb = P.endpoints[1], &ebp = P.endpoints[2],
                &eap = P.endpoints[3];
  ea.value = polish(ea.value, 0.0, true);
  eap.value = polish(eap.value, wrap01(ea.value), false);
  eb.value = polish(eb.value, wrap01(eap.value), false);
  ebp.value = polish(ebp.value, wrap01(eap.value), false);
  for (auto* e : {&ea, &eap, &eb, &ebp}) {
    e->residual = circle_dist(psi.eval(e->value),
                              e->name == "a" ? wrap01(e->value)
                              : e->name == "a'" ? wrap01(ea.value)
                                                : wrap01(eap.value));
    e->in_window = e->value >= e->window_lo - 1e-9 && e->value <= e->window_hi + 1e-9;
  }
  double b_adj = eb.value;
  while (b_adj <= ea.value) b_adj += 1.0;
  double ap_adj = eap.value;
  while (ap_adj <= ebp.value) ap_adj += 1.0;
  P.intervals = {CircleInterval(ea.value, b_adj, "J0"), CircleInterval(ebp.value, ap_adj, "J1")};
  P.hull = CircleInterval(P.intervals.front().left, P.intervals.back().right, "hull");
  return P;
}

std::vector<double> cover_labels(const MapParams& pr, const RhoSpec& rho,
                                 const MarkovPartition& part, int level, PsiMode mode) {
  InducedCircleMap psi(pr, rho, mode);
  PsiBranches branches(psi);
  CantorApprox cov = refine_cantor(branches, part, level, 8);
  std::vector<double> labels;
  labels.reserve(2 * cov.intervals.size());
  for (const auto& iv : cov.intervals) {
    labels.push_back(iv.left);
    labels.push_back(iv.right);
  }
  return labels;
}

}  // namespace

TangencyEvent find_heteroclinic_tangency(const MapParams& p, FindTangencyOptions opt) {
  p.require_large_k("find_heteroclinic_tangency");
  const double k = p.k;
  const double window = 4.0 / std::cbrt(std::fabs(k));
  const int n_side = opt.scan_points_per_side;
  const double h_scan = window / n_side;

  // Base partition at r = k, then continuous tracking across the scan.
  CriticalData crit0 = stdmap::critical_points(p);
  RhoSpec rho0 = stdmap::default_rho(crit0);
  PartitionOptions popt;
  popt.mode = opt.partition_mode;
  MarkovPartition base = build_duarte_partition(p, rho0, popt);

  struct ScanRow {
    double r = 0.0;
    std::vector<double> labels;
    std::vector<double> offsets;  // coarse signed offsets per label
  };
  std::vector<ScanRow> rows(2 * n_side + 1);

  auto eval_row = [&](double r, const MarkovPartition& part_at_r) {
    ScanRow row;
    row.r = r;
    MapParams pr = p;
    pr.k = r;
    CircleGeometry g(pr);
    double qx = stable_footprint(g);
    CriticalData crit = stdmap::critical_points(pr);
    RhoSpec rho = stdmap::default_rho(crit);
    row.labels = cover_labels(pr, rho, part_at_r, opt.cover_level, opt.partition_mode);
    row.offsets.reserve(row.labels.size());
    for (double y : row.labels)
      row.offsets.push_back(circle_diff(transfer_point(g, y, false), qx));
    return row;
  };

  // Walk outward from the center so the tracked partition stays continuous.
  std::vector<MarkovPartition> parts(2 * n_side + 1);
  parts[n_side] = base;
  rows[n_side] = eval_row(k, base);
  for (int j = 1; j <= n_side; ++j) {
    for (int s : {-1, +1}) {
      int idx = n_side + s * j;
      int prev = n_side + s * (j - 1);
      MapParams pr = p;
      pr.k = k + s * j * h_scan;
      CriticalData crit = stdmap::critical_points(pr);
      RhoSpec rho = stdmap::default_rho(crit);
      parts[idx] = track_duarte(pr, rho, parts[prev], opt.partition_mode);
      rows[idx] = eval_row(pr.k, parts[idx]);
    }
  }

  // Sign-change brackets per label, nearest to k first, ties toward smaller r.
  struct Bracket {
    double r_lo = 0.0, r_hi = 0.0;
    std::size_t label_idx = 0;
    double dist_to_k = 0.0;
  };
  std::vector<Bracket> brackets;
  std::size_t n_labels = rows[n_side].labels.size();
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const ScanRow &r0 = rows[i], &r1 = rows[i + 1];
    if (r0.labels.size() != n_labels || r1.labels.size() != n_labels) continue;
    for (std::size_t l = 0; l < n_labels; ++l) {
      double o0 = r0.offsets[l], o1 = r1.offsets[l];
      if (std::fabs(o0) > 0.25 || std::fabs(o1) > 0.25) continue;  // wrap artifacts
      if (o0 == 0.0 || o0 * o1 < 0.0) {
        Bracket b;
        b.r_lo = r0.r;
        b.r_hi = r1.r;
        b.label_idx = l;
        b.dist_to_k = std::min(std::fabs(r0.r - k), std::fabs(r1.r - k));
        brackets.push_back(b);
      }
    }
  }
  if (brackets.empty())
    throw std::runtime_error(
        "find_heteroclinic_tangency: no sign change of the offset inside the window");
  std::sort(brackets.begin(), brackets.end(), [](const Bracket& a, const Bracket& b) {
    if (a.dist_to_k != b.dist_to_k) return a.dist_to_k < b.dist_to_k;
    return a.r_lo < b.r_lo;
  });

  TangencyEvent ev;
  ev.window = window;
  ev.scan_points = static_cast<int>(rows.size());

  std::string last_err = "no bracket converged";
  for (const Bracket& b : brackets) {
    try {
      // Refine on the fine offset of the tracked leaf.
      int i_lo = static_cast<int>(std::lround((b.r_lo - (k - window)) / h_scan));
      MarkovPartition part_t = parts[i_lo];
      double r_cur = b.r_lo;
      auto fine_offset = [&](double r) {
        MapParams pr = p;
        pr.k = r;
        CriticalData crit = stdmap::critical_points(pr);
        RhoSpec rho = stdmap::default_rho(crit);
        part_t = track_duarte(pr, rho, part_t, opt.partition_mode);
        r_cur = r;
        auto labels = cover_labels(pr, rho, part_t, opt.cover_level, opt.partition_mode);
        CircleGeometry g(pr);
        return circle_diff(transfer_point(g, labels[b.label_idx], true), stable_footprint(g));
      };
      double f_lo = fine_offset(b.r_lo);
      double f_hi = fine_offset(b.r_hi);
      if (f_lo * f_hi > 0.0) {
        last_err = "fine offset lost the sign change";
        continue;
      }
      RootResult root = brent(fine_offset, b.r_lo, b.r_hi, 1e-13, opt.offset_tol);
      double residual = std::fabs(fine_offset(root.x));
      if (residual > opt.offset_tol) {
        last_err = "offset residual above tolerance";
        continue;
      }

      ev.r = root.x;
      ev.residual = residual;
      MapParams pr = p;
      pr.k = ev.r;
      CriticalData crit = stdmap::critical_points(pr);
      RhoSpec rho = stdmap::default_rho(crit);
      CircleGeometry g(pr);
      double qx = stable_footprint(g);
      double qy = sigma_at(g.fields, +1, qx);
      ev.q = {qx, qy};
      auto labels = cover_labels(pr, rho, part_t, opt.cover_level, opt.partition_mode);
      ev.matched_label = labels[b.label_idx];
      ev.curvature_gap = curvature_gap(pr, rho, ev.q).gap;
      UnfoldingSpeeds sp = unfolding_speed(pr, qx);
      ev.speed_s = sp.speed_s;
      ev.speed_Gu = sp.speed_Gu;

      if (std::fabs(ev.r - k) >= window)
        throw std::runtime_error("located parameter escaped the window");
      if (!(ev.curvature_gap > 0.0))
        throw std::runtime_error("tangency is not quadratic at the located parameter");
      if (!(ev.speed_Gu - ev.speed_s > 0.0))
        throw std::runtime_error("tangency does not unfold generically");
      return ev;
    } catch (const std::exception& e) {
      last_err = e.what();
    }
  }
  throw std::runtime_error(std::string("find_heteroclinic_tangency: ") + last_err);
}

double loglog_slope(const std::vector<double>& ks, const std::vector<double>& values) {
  if (ks.size() != values.size() || ks.size() < 2)
    throw std::invalid_argument("loglog_slope: need matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double x = std::log(ks[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace horseshoe
