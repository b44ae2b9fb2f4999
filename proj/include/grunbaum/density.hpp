#pragma once

// One-dimensional weighted measures: a density with controlled tails, its CDF
// and quantile machinery, truncated barycenters, quantile integrals (computed
// two independent ways), and the structural tests used by the cut-bound
// verifiers (convex-measure test, half-space concavity profile).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grunbaum/concavity.hpp"
#include "grunbaum/quadrature.hpp"

namespace grunbaum {

/// Dominating bound for one tail of a density, with closed-form integrals.
/// On the relevant side, the density must satisfy psi(r) <= bound(|r-anchor|)
/// once |r-anchor| is past the support edge; construction samples the tail and
/// rejects envelopes that fail to dominate.
struct TailEnvelope {
  enum class Kind { exponential, polynomial, gaussian };
  Kind kind = Kind::exponential;
  double scale = 1.0;   // C in C*e^{-rate*d}, C*d^{-rate}, C*e^{-rate*d^2}
  double rate = 1.0;    // decay rate; polynomial kind: the power (> 1)
  double anchor = 0.0;  // d is measured from this point

  /// Pointwise bound at distance d >= 0 from the anchor.
  double bound(double d) const;
  /// Upper bound for the integral of the bound over distances >= d.
  double mass_beyond(double d) const;
  /// Upper bound for the integral of d' * bound(d') over distances >= d.
  /// Throws std::domain_error if the first moment is not controlled
  /// (polynomial kind with power <= 2).
  double moment_beyond(double d) const;
  bool moment_controlled() const;
};

/// A nonnegative density on an interval (lo, hi); either endpoint may be
/// infinite, in which case the corresponding tail envelope is mandatory.
/// `mass_hint`, when positive, is a trusted closed-form total mass that the
/// constructed measure is checked against (1e-9 relative).
struct Density1D {
  std::function<double(double)> psi;
  double lo = 0.0;
  double hi = 1.0;
  std::optional<TailEnvelope> lower_tail;
  std::optional<TailEnvelope> upper_tail;
  double mass_hint = -1.0;
  /// Interior points where the evaluator is not smooth (profile kinks, table
  /// nodes).  The CDF cache starts a new panel at each, keeping every panel
  /// polynomial-like so the quadrature error estimates stay honest.
  std::vector<double> breakpoints;
  std::string name = "density";
};

/// Tabulated CDF snapshot (diagnostics / CLI output).
struct MeasureTable {
  std::vector<double> r;
  std::vector<double> cdf;
  double total_mass = 0.0;
};

/// Result of the half-space concavity probe: the renormalised shift profile
/// f(r) = Q(F(r) - F(a)) together with its sampled concavity verdict.
struct HalfspaceProfile {
  std::function<double(double)> f;
  double r_lo = 0.0;   // probe domain (open)
  double r_hi = 0.0;
  ShapeVerdict concavity;
};

class Measure1D {
 public:
  /// Builds the CDF cache.  Throws std::invalid_argument for structural
  /// problems (missing envelope, envelope failing to dominate, bad support)
  /// and std::runtime_error if the computed mass disagrees with mass_hint.
  explicit Measure1D(Density1D d);

  const Density1D& density() const { return d_; }
  double total_mass() const { return mass_; }
  /// Support endpoints as declared (possibly infinite).
  double support_lo() const { return d_.lo; }
  double support_hi() const { return d_.hi; }
  /// Finite window actually integrated; tails beyond it hold < 1e-12 of the
  /// mass (certified by the envelopes).
  double window_lo() const { return tlo_; }
  double window_hi() const { return thi_; }

  double psi(double r) const;
  /// F(r) = mu((-inf, r]).  Monotone; exact 0 / total below resp. above the
  /// window.
  double cdf(double r) const;
  /// Inverse CDF on (0, total_mass); throws std::domain_error outside.
  double quantile(double t) const;
  /// mu((a,b]) for a <= b (clipped to the support).
  double interval_mass(double a, double b) const;
  /// Barycenter of the restriction to (a,b); throws std::domain_error when
  /// the restriction carries no mass.
  double truncated_barycenter(double a, double b) const;

  /// Integral of the quantile function over (0, t], t in (0, total_mass].
  /// Computed as the truncated first moment up to Q(t) -- the integration-by-
  /// parts form, exact at the quadrature level.
  double quantile_integral(double t) const;
  /// Same quantity by direct adaptive quadrature of the quantile function on
  /// [eps, t].  Kept deliberately independent of quantile_integral so the two
  /// can audit each other.
  double quantile_integral_direct(double t) const;

  /// Equal-mass interior grid: quantiles of (i+1/2)/n * total_mass.
  std::vector<double> equal_mass_grid(int n) const;

  MeasureTable tabulate(int n) const;

 private:
  double partial(double a, double b) const;  // integral of psi over [a,b]
  double moment_over(double a, double b) const;  // integral of r*psi over [a,b]
  Density1D d_;
  double tlo_ = 0.0, thi_ = 0.0;  // finite integration window
  std::vector<double> knots_;     // panel boundaries, knots_.front() == tlo_
  std::vector<double> cum_;       // cdf at knots_
  double mass_ = 0.0;
  bool moment_ok_ = true;         // first moment controlled on both tails
};

/// Is 1/psi convex on the support interior (sampled verdict)?  This is the
/// defining property of the widest class of measures the CDF cut bound
/// applies to in one dimension.
ShapeVerdict is_convex_measure(const Measure1D& mu, double tol = 1e-8,
                               int grid_points = 512);

/// Shift profile r -> Q(F(r) - F(a)) with its sampled concavity verdict.
HalfspaceProfile halfspace_concavity_profile(const Measure1D& mu, double a,
                                             int grid_points = 512);

/// Isoperimetric-type profile t -> psi(Q(t)) on (0, total_mass).
std::function<double(double)> iso_profile(const Measure1D& mu);

// --- density factories ------------------------------------------------------

Density1D uniform_density(double a, double b);
/// rate * exp(-rate*(r-origin)) on [origin, inf); unit mass.
Density1D exponential_density(double rate, double origin = 0.0);
/// Normal(mean, sigma^2) density, optionally restricted (unnormalised) to
/// [cut_lo, cut_hi].
Density1D gaussian_density(double mean = 0.0, double sigma = 1.0);
Density1D truncated_gaussian_density(double mean, double sigma, double cut_lo,
                                     double cut_hi);
/// |r - base|^exponent on (a,b).  The base point must not lie in the open
/// interval; integrability at a touching endpoint or an unbounded side is
/// validated.
Density1D power_density(double base, double exponent, double a, double b);
/// Log-linear interpolation through (r_i, psi_i) with psi_i > 0; vanishes
/// outside [r_0, r_last].  Exact piecewise-exponential mass is attached as
/// the construction hint.
Density1D table_density(const std::vector<double>& r,
                        const std::vector<double>& psi);
/// Rescales the density to unit total mass.  Uses mass_hint when present,
/// otherwise integrates once to find the mass.
Density1D normalize_to_probability(const Density1D& d);

}  // namespace grunbaum
