#include "horseshoe/foliation.hpp"

#include <cmath>
#include <stdexcept>

namespace horseshoe {

FieldSystem::FieldSystem(const MapParams& p, std::optional<RhoSpec> rho)
    : params_(p), rho_(std::move(rho)) {
  crit_ = stdmap::critical_points(p);
  strip_halfwidth_ = crit_.strip_halfwidth;
  margin_ = 0.5 / std::cbrt(std::fabs(p.k));
}

FieldSystem FieldSystem::standard(const MapParams& p) { return FieldSystem(p, std::nullopt); }

FieldSystem FieldSystem::perturbed(const MapParams& p, const RhoSpec& rho) {
  return FieldSystem(p, rho);
}

double FieldSystem::A(double x) const {
  double a = stdmap::deriv1(params_, x);
  if (rho_) a += rho_->deriv(x);
  return a;
}

double FieldSystem::A_deriv(double x) const {
  double a = stdmap::deriv2(params_, x);
  if (rho_) a += rho_->deriv2(x);
  return a;
}

TorusPoint FieldSystem::step_forward(const TorusPoint& q) const {
  if (!rho_) return stdmap::apply(params_, q);
  TorusPoint qq = q;
  if (rho_->at_pole(qq.x)) qq.x = wrap01(qq.x + 2.0 * rho_->pole_eps);  // nudge off the pole
  return stdmap::g_apply(params_, *rho_, qq);
}

TorusPoint FieldSystem::step_backward(const TorusPoint& q) const {
  if (!rho_) return stdmap::apply_inverse(params_, q);
  TorusPoint qq = q;
  if (rho_->at_pole(qq.y)) qq.y = wrap01(qq.y + 2.0 * rho_->pole_eps);
  return stdmap::g_apply_inverse(params_, *rho_, qq);
}

bool FieldSystem::clear_of_strips(double x) const {
  double c = validity_clearance();
  return circle_dist(x, 0.25) > c && circle_dist(x, 0.75) > c;
}

namespace {

// Contracting-direction slope from the continued fraction
//   alpha(p) = 1 / (A(x_0) - 1 / (A(x_1) - ...)),
// truncated after `depth` terms.  xs holds A-arguments ordered from the base
// point outward along the orbit.
double continued_fraction_slope(const std::vector<double>& as, bool& ok) {
  double acc = 0.0;
  for (auto it = as.rbegin(); it != as.rend(); ++it) {
    double denom = *it - acc;
    if (denom == 0.0 || !std::isfinite(denom)) {
      ok = false;
      return acc;
    }
    acc = 1.0 / denom;
  }
  if (!std::isfinite(acc)) ok = false;
  return acc;
}

}  // namespace

DirectionSample FieldSystem::stable_slope(const TorusPoint& p, int depth) const {
  if (depth < 1) throw std::invalid_argument("stable_slope: depth must be >= 1");
  DirectionSample s;
  s.depth = depth;
  std::vector<double> as(depth);
  TorusPoint q = p;
  bool valid = clear_of_strips(q.x);
  for (int j = 0; j < depth; ++j) {
    as[j] = A(q.x);
    q = step_forward(q);
    valid = valid && clear_of_strips(q.x);
  }
  s.valid = valid;
  bool ok = true;
  s.slope = continued_fraction_slope(as, ok);
  std::vector<double> half(as.begin(), as.begin() + std::max(1, depth / 2));
  bool ok_half = true;
  double coarse = continued_fraction_slope(half, ok_half);
  s.est_error = std::fabs(s.slope - coarse);
  s.ok = ok;
  if (!ok) s.valid = false;
  return s;
}

DirectionSample FieldSystem::unstable_slope(const TorusPoint& p, int depth) const {
  if (depth < 1) throw std::invalid_argument("unstable_slope: depth must be >= 1");
  DirectionSample s;
  s.depth = depth;
  std::vector<double> as(depth);
  TorusPoint q = p;
  bool valid = clear_of_strips(q.x);
  for (int j = 0; j < depth; ++j) {
    q = step_backward(q);
    as[j] = A(q.x);
    valid = valid && clear_of_strips(q.x);
  }
  s.valid = valid;
  bool ok = true;
  s.slope = continued_fraction_slope(as, ok);
  std::vector<double> half(as.begin(), as.begin() + std::max(1, depth / 2));
  bool ok_half = true;
  double coarse = continued_fraction_slope(half, ok_half);
  s.est_error = std::fabs(s.slope - coarse);
  s.ok = ok;
  if (!ok) s.valid = false;
  return s;
}

namespace {

template <typename F>
DirectionSample auto_refine(F&& eval, const SlopeOptions& o) {
  int d = o.depth_start;
  DirectionSample prev = eval(d);
  while (d < o.depth_cap) {
    d = std::min(2 * d, o.depth_cap);
    DirectionSample cur = eval(d);
    cur.est_error = std::fabs(cur.slope - prev.slope);
    if (cur.est_error < o.tol || d >= o.depth_cap) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

DirectionSample FieldSystem::stable_slope_auto(const TorusPoint& p, SlopeOptions o) const {
  return auto_refine([&](int d) { return stable_slope(p, d); }, o);
}

DirectionSample FieldSystem::unstable_slope_auto(const TorusPoint& p, SlopeOptions o) const {
  return auto_refine([&](int d) { return unstable_slope(p, d); }, o);
}

DirectionSample FieldSystem::pushforward_slope(const TorusPoint& p, int depth) const {
  // The image foliation is carried by the standard map: the leaf through p is
  // the f-image of the unstable leaf through f^{-1}(p).
  TorusPoint q = stdmap::apply_inverse(params_, p);
  DirectionSample u = unstable_slope(q, depth);
  DirectionSample s = u;
  s.slope = stdmap::deriv1(params_, q.x) - u.slope;
  return s;
}

DirectionSample FieldSystem::pushforward_slope_auto(const TorusPoint& p, SlopeOptions o) const {
  return auto_refine([&](int d) { return pushforward_slope(p, d); }, o);
}

namespace {

struct TraceState {
  std::vector<TorusPoint> pts;
  double end = 0.0;
  bool valid = true;
};

}  // namespace

LeafTrace FieldSystem::leaf_trace(const TorusPoint& p, LeafKind which, double span,
                                  TraceOptions o) const {
  SlopeOptions so;
  auto field = [&](double x, double y) -> std::pair<double, bool> {
    DirectionSample s;
    switch (which) {
      case LeafKind::stable:
        s = stable_slope_auto({x, y}, so);
        break;
      case LeafKind::unstable:
        s = unstable_slope_auto({x, y}, so);
        break;
      case LeafKind::pushforward:
        s = pushforward_slope_auto({x, y}, so);
        break;
    }
    return {s.slope, s.valid && s.ok};
  };

  // For the stable and pushforward kinds the independent variable is y and
  // the polyline is a graph x(y); for the unstable kind the roles swap.
  const bool over_y = (which != LeafKind::unstable);

  auto run = [&](double step) {
    TraceState st;
    int n = std::max(1, static_cast<int>(std::ceil(std::fabs(span) / step)));
    double h = span / n;
    double dep = over_y ? p.x : p.y;
    double ind = over_y ? p.y : p.x;
    st.pts.push_back(p);
    for (int i = 0; i < n; ++i) {
      auto f = [&](double d_, double i_) {
        auto [sl, v] = over_y ? field(d_, i_) : field(i_, d_);
        st.valid = st.valid && v;
        return sl;
      };
      double k1 = f(dep, ind);
      double k2 = f(dep + 0.5 * h * k1, ind + 0.5 * h);
      double k3 = f(dep + 0.5 * h * k2, ind + 0.5 * h);
      double k4 = f(dep + h * k3, ind + h);
      dep += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ind += h;
      if (!rho_ && !clear_of_strips(over_y ? dep : ind)) st.valid = false;
      st.pts.push_back(over_y ? TorusPoint{dep, ind} : TorusPoint{ind, dep});
    }
    st.end = dep;
    return st;
  };

  double step = o.step;
  TraceState fine = run(step);
  LeafTrace out;
  if (span != 0.0) {
    while (step > o.min_step) {
      TraceState finer = run(step / 2.0);
      double diff = std::fabs(finer.end - fine.end);
      fine = finer;
      step /= 2.0;
      if (diff < o.tol) break;
    }
  }
  out.points = std::move(fine.pts);
  out.which = which;
  out.step_used = step;
  out.valid = fine.valid;
  return out;
}

namespace {

ProjectionResult project_impl(const FieldSystem& sys, const TorusPoint& p, bool stable,
                              const TraceOptions& o) {
  ProjectionResult r;
  double target = sys.nu_plus();
  double from = stable ? p.y : p.x;
  double span = circle_diff(target, from);
  if (std::fabs(span) < 1e-15) {
    r.coord = stable ? p.x : p.y;
    r.step_used = 0.0;
    return r;
  }
  LeafTrace t = sys.leaf_trace(p, stable ? LeafKind::stable : LeafKind::unstable, span, o);
  const TorusPoint& endp = t.points.back();
  r.coord = stable ? endp.x : endp.y;
  r.step_used = t.step_used;
  r.valid = t.valid;
  if (!t.valid) r.reason = "leaf entered a critical strip or slope sample degenerated";
  // Self-consistency estimate: one more halving.
  TraceOptions o2 = o;
  o2.step = t.step_used / 2.0;
  o2.min_step = t.step_used / 2.0;
  LeafTrace t2 = sys.leaf_trace(p, stable ? LeafKind::stable : LeafKind::unstable, span, o2);
  const TorusPoint& endp2 = t2.points.back();
  r.est_error = circle_dist(r.coord, stable ? endp2.x : endp2.y);
  return r;
}

}  // namespace

ProjectionResult FieldSystem::project_stable(const TorusPoint& p, TraceOptions o) const {
  return project_impl(*this, p, true, o);
}

ProjectionResult FieldSystem::project_unstable(const TorusPoint& p, TraceOptions o) const {
  return project_impl(*this, p, false, o);
}

}  // namespace horseshoe
