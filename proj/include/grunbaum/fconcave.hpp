#pragma once

// Sharp lower bounds for the mass on the barycenter side of a cut, in the
// general transform-concave form: if F o (cut-mass profile) is concave, the
// barycenter-side mass of a total t is at least F^{-1}((1/t) * int_0^t F).
// Specialisations: classic uniform bound (n/(n+1))^n, the Gaussian bound
// Phi(-I(t)/t), and the one-dimensional CDF bound for convex measures.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grunbaum/concavity.hpp"
#include "grunbaum/density.hpp"

namespace grunbaum {

/// A monotone transform F on (0, mass) together with its inverse and, when
/// available in closed form, the primitive t -> int_0^t F(r) dr.  Declared
/// monotonicity is verified on probe points at construction-time use.
struct BoundSpec {
  std::function<double(double)> F;
  std::function<double(double)> F_inverse;
  std::function<double(double)> F_primitive;  // may be empty -> quadrature
  bool increasing = true;
  std::string name = "transform";
};

/// F(r) = log r.  Primitive t log t - t.
BoundSpec log_transform();
/// F(r) = r^s for s != 0 (decreasing for s < 0).  Integrable at 0 only for
/// s > -1; s <= -1 is rejected when a bound is requested.
BoundSpec power_transform(double s);
/// F(r) = r.
BoundSpec identity_transform();
/// F(r) = Phi^{-1}(r), for measures normalised against the Gaussian; the
/// primitive is -I(t) (minus the Gaussian isoperimetric profile).
BoundSpec gaussian_quantile_transform();

/// F^{-1}((1/t) int_0^t F(r) dr).  Uses the closed-form primitive when the
/// spec carries one; otherwise adaptive quadrature with an integrability
/// probe at 0 (throws std::domain_error if the transform is not integrable).
double f_concave_bound(const BoundSpec& spec, double t);

/// (n/(n+1))^n -- the sharp constant for uniform measures on convex bodies
/// in dimension n.
double classic_grunbaum_bound(int n);

/// Phi(-I(t)/t) -- the sharp Gaussian constant at total cut mass t in (0,1].
double ehrhard_grunbaum_bound(double t);

/// One verified cut of a one-dimensional profile r -> mass of {<= r}.
struct CutCheck {
  double total = 0;        // t
  double barycenter = 0;   // g
  double measured = 0;     // profile at g
  double bound = 0;
  double gap = 0;          // measured - bound
  bool shape_ok = false;   // F o profile concave on samples
  double affinity = 1.0;   // affinity score of F o profile (0 = affine)
  bool equality = false;   // |gap| small AND transform-profile affine
  ShapeVerdict shape;
};

/// A nondecreasing cut-mass profile on [r_lo, r_hi], rising from 0 to total.
struct CutProfile {
  std::function<double(double)> mass_at;
  double r_lo = 0;
  double r_hi = 0;
  double total = 0;
};

/// Verifies the transform-concave bound for a profile: computes the fiber
/// barycenter g by integration by parts, evaluates measured vs bound, checks
/// concavity of F o profile on a sample grid, and issues the equality verdict
/// (gap within 1e-7 relative and affinity within 1e-6).
CutCheck verify_f_concave_cut(const CutProfile& profile, const BoundSpec& spec,
                              int grid_points = 257);

/// The one-dimensional CDF bound for an interval (a,b) of a convex measure:
/// with t = mu((a,b)) and g the barycenter of the restriction,
///   mu((a,g]) >= F_mu( (1/t) int_0^t F_mu^{-1} ).
/// The report includes the independent audit delta between the two quantile
/// integral routes, and the (historically misprinted) normalised shortcut
/// g - Q(t)(1-t) evaluated for probability measures -- reported, not asserted.
struct CdfCutCheck {
  double total = 0;
  double barycenter = 0;
  double measured = 0;
  double bound = 0;
  double gap = 0;
  double quantile_integral = 0;         // moment route (used in the bound)
  double quantile_integral_direct = 0;  // direct quadrature route
  double route_delta = 0;               // |difference| between the two routes
  std::optional<double> shortcut_delta; // |QI - (g_full - Q(t)(1-t))|, prob. measures
  double affinity = 1.0;                // affinity of the shift profile
  bool equality = false;
};

CdfCutCheck verify_cdf_grunbaum(const Measure1D& mu, double a, double b);

}  // namespace grunbaum
