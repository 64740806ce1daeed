#include "horseshoe/roots.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace horseshoe {

RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double xtol, double ftol, int maxit) {
  double fa = f(a), fb = f(b);
  int evals = 2;
  if (fa == 0.0) return {a, 0.0, evals, true};
  if (fb == 0.0) return {b, 0.0, evals, true};
  if (fa * fb > 0.0) throw std::invalid_argument("brent: root not bracketed");

  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < maxit; ++it) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * xtol;
    double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= ftol)
      return {b, fb, evals, true};
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    ++evals;
    if (fb * fc > 0.0) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return {b, fb, evals, false};
}

RootResult newton_safeguarded(const std::function<void(double, double&, double&)>& f_df,
                              double x0, double a, double b, double xtol, int maxit) {
  double x = x0, f = 0.0, df = 0.0;
  int evals = 0;
  for (int it = 0; it < maxit; ++it) {
    f_df(x, f, df);
    ++evals;
    if (f == 0.0) return {x, f, evals, true};
    double step = (df != 0.0) ? f / df : std::numeric_limits<double>::infinity();
    double xn = x - step;
    if (!(xn > a && xn < b) || !std::isfinite(xn)) xn = 0.5 * (a + b);  // bisect
    // Keep the bracket if f has a sign there.
    if (std::fabs(xn - x) < xtol * (1.0 + std::fabs(x))) return {xn, f, evals, true};
    x = xn;
  }
  return {x, f, evals, false};
}

std::optional<std::pair<double, double>> expand_bracket(
    const std::function<double(double)>& f, double center, double w0, double cap, double grow) {
  double w = w0;
  double f0 = f(center);
  while (w <= cap) {
    double fl = f(center - w), fr = f(center + w);
    if (f0 == 0.0) return std::make_pair(center - w, center + w);
    if (fl * f0 < 0.0) return std::make_pair(center - w, center);
    if (f0 * fr < 0.0) return std::make_pair(center, center + w);
    if (fl * fr < 0.0) return std::make_pair(center - w, center + w);
    w *= grow;
  }
  return std::nullopt;
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b,
                               int n, double xtol) {
  std::vector<double> roots;
  if (n < 2) return roots;
  double prev_x = a, prev_f = f(a);
  for (int i = 1; i <= n; ++i) {
    double x = a + (b - a) * static_cast<double>(i) / n;
    double fx = f(x);
    if (prev_f == 0.0) {
      roots.push_back(prev_x);
    } else if (prev_f * fx < 0.0) {
      roots.push_back(brent(f, prev_x, x, xtol).x);
    }
    prev_x = x;
    prev_f = fx;
  }
  if (prev_f == 0.0) roots.push_back(prev_x);
  return roots;
}

}  // namespace horseshoe
