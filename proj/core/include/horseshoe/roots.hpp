#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace horseshoe {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Brent-style bracketed solve; requires f(a) and f(b) of opposite sign.
RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double xtol = 1e-14, double ftol = 0.0, int maxit = 200);

// Newton with bisection fallback inside [a, b]; f_df fills f and df.
RootResult newton_safeguarded(const std::function<void(double, double&, double&)>& f_df,
                              double x0, double a, double b,
                              double xtol = 1e-14, int maxit = 100);

// Grow a symmetric bracket around center until f changes sign, or give up at cap.
std::optional<std::pair<double, double>> expand_bracket(
    const std::function<double(double)>& f, double center, double w0, double cap,
    double grow = 2.0);

// All roots of f on [a, b] located by sign changes on an n-point scan,
// each polished by brent.
std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b,
                               int n, double xtol = 1e-14);

}  // namespace horseshoe
