#pragma once

// Adaptive numerical integration on (possibly unbounded) intervals, built on a
// 15-point Gauss-Kronrod rule with worst-panel-first bisection.  Infinite
// endpoints are mapped to (0,1] with the rational substitution x = a + s/(1-s);
// the Kronrod nodes are strictly interior, so integrands that decay at the far
// end never get evaluated at the singular image point.

#include <functional>

namespace grunbaum {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;       // accumulated error estimate (conservative)
  int evaluations = 0;      // integrand evaluations consumed
  bool converged = true;    // false if the panel budget ran out first
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_panels = 4000;    // each panel costs 15 evaluations
};

/// Integrate f over [a, b].  Either endpoint (or both) may be +/- infinity.
/// a > b integrates with flipped sign.  Throws std::invalid_argument on NaN
/// bounds.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

/// Convenience wrapper returning just the value.
double integrate_value(const std::function<double(double)>& f, double a,
                       double b, const QuadOptions& opt = {});

}  // namespace grunbaum
