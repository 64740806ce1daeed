#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace horseshoe {

// Reduce to [0, 1).  Values within one ulp of an integer land on 0.
inline double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

// Representative of x - y in (-1/2, 1/2].
inline double circle_diff(double x, double y) {
  double d = wrap01(x - y);
  if (d > 0.5) d -= 1.0;
  return d;
}

inline double circle_dist(double x, double y) { return std::fabs(circle_diff(x, y)); }

// Arc length travelled counterclockwise from a to b, in [0, 1).
inline double ccw_span(double a, double b) { return wrap01(b - a); }

// An interval on the circle kept as real lifts, left < right, length < 1.
// The lifts preserve sign conventions for endpoints such as -1/12 or -7/48.
struct CircleInterval {
  double left = 0.0;
  double right = 0.0;
  std::string name;

  CircleInterval() = default;
  CircleInterval(double l, double r, std::string n = "") : left(l), right(r), name(std::move(n)) {}

  double length() const { return right - left; }
  double midpoint() const { return 0.5 * (left + right); }

  bool contains_lift(double x) const { return x >= left && x <= right; }

  // Membership of a circle point, tested against the reduced interval.
  bool contains_circle(double x) const {
    double d = wrap01(x - left);
    return d <= length() + 1e-15;
  }

  // Lift t of the circle point x with t in [left, left + 1); t <= right means inside.
  double lift_from_left(double x) const { return left + wrap01(x - left); }
};

// Pairwise disjointness of intervals as subsets of the circle.
bool pairwise_disjoint(const std::vector<CircleInterval>& ivs);

// Largest complementary arc of a finite union of circle intervals.
// Returns 0 when the union covers the circle.
double largest_gap(const std::vector<CircleInterval>& ivs);

}  // namespace horseshoe
