#pragma once

// The s-concave measure dictionary: exponent conversions between the measure
// parameter s and the density parameter p in dimension n, the sharp cut
// constant as a function of s, the dimensional constant C(n,p), the extremal
// one-dimensional densities attaining the constant, and the truncated family
// demonstrating that no universal constant survives past s = -1.

#include <vector>

#include "grunbaum/density.hpp"

namespace grunbaum {

/// Density exponent p for an s-concave measure on R^n:  p = s / (1 - n s).
/// s = 1/n maps to +infinity; s > 1/n is rejected.
double p_from_s(double s, int n);

/// Inverse conversion  s = p / (1 + n p)  for p > -1/n; p = +infinity maps to
/// 1/n.
double s_from_p(double p, int n);

/// Sharp fraction of mass on the barycenter side for s-concave measures:
/// (1/(1+s))^{1/s} for s != 0, 1/e at s = 0.  Defined for s in (-1, 1];
/// throws std::domain_error for s <= -1 (no universal constant exists there).
double s_grunbaum_bound(double s);

/// C(n,p) = ((np+1)/((n+1)p+1))^{(np+1)/p} with C(n,0) = 1/e and
/// C(n,inf) = (n/(n+1))^n.  Algebraically identical to
/// s_grunbaum_bound(s_from_p(p,n)); kept as the independent dimensional form.
double c_np_bound(int n, double p);

enum class ExtremalRegime {
  cone,       // s > 0: linear profile to a vertex, compact support
  cylinder,   // s = 0: exponential profile, one-sided infinite
  expanding,  // s < 0: power profile widening toward -infinity
};

/// Extremal one-dimensional density for the s-concave cut bound, scaled so
/// the top of the support sits at r1 and the profile parameter is a > 0
/// (cone: inverse width; cylinder: exponential rate; expanding: inverse
/// distance from r1 to the profile pole R = r1 + 1/a).
struct Extremal1D {
  ExtremalRegime regime{};
  double s = 0;
  double r0 = 0;  // cone: lower support end
  double r1 = 0;
  double a = 0;
  double R = 0;   // expanding: pole location
  Density1D density;
  // Closed forms used as oracles by the verification tests:
  double mass = 0;
  double barycenter = 0;
  double cut_fraction = 0;  // mass fraction below the barycenter (= the bound)
};

Extremal1D extremal_density_1d(double s, double r1, double a);

/// One member of the no-bound family: density (1-u)^{1/p} truncated to
/// [0, 1 - 1/k], for p in (-1, -1/2] (equivalently s <= -1).
struct CounterexampleMeasure {
  double p = 0;
  double k = 0;
  Density1D density;
  double mass = 0;
  double barycenter = 0;
  double left_mass = 0;  // fraction on the barycenter's small side
};

CounterexampleMeasure counterexample_measure(double p, double k);

struct CounterexampleRow {
  double k = 0;
  double barycenter = 0;
  double left_mass = 0;
  double closed_form_delta = 0;  // worst relative gap closed form vs quadrature
};

struct NoBoundReport {
  double p = 0;
  std::vector<CounterexampleRow> rows;
  bool strictly_decreasing = false;
};

/// Evaluates the family along a k-schedule, cross-checking every closed form
/// against quadrature on the constructed measures.
NoBoundReport verify_no_bound(double p, const std::vector<double>& ks);

}  // namespace grunbaum
