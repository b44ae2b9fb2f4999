#pragma once

// Weighted convex bodies in dimensions 1-3 and the cut-bound verification
// pipeline: exact mass/barycenter/cut computations where the geometry allows
// (polygon clipping in 2-D, tetrahedral decomposition in 3-D, marginal
// quadrature for the Gaussian weight, closed-form profiles for the extremal
// constructions), Monte Carlo oracles with recorded seeds elsewhere, and the
// direction optimisation / sweep drivers.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grunbaum/density.hpp"
#include "grunbaum/geometry.hpp"
#include "grunbaum/report.hpp"
#include "grunbaum/rng.hpp"
#include "grunbaum/sconcave.hpp"

namespace grunbaum {

using VecN = std::vector<double>;

double dotn(const VecN& a, const VecN& b);
double norm(const VecN& a);
VecN normalized(const VecN& a);

/// V-representation with optional recession rays (for unbounded bodies such as
/// half-spaces and the cylinder/expanding extremal constructions).
struct ConvexBody {
  int dim = 2;
  std::vector<VecN> vertices;
  std::vector<VecN> rays;
  std::string id = "body";
  bool bounded() const { return rays.empty(); }
};

enum class MeasureClass { lebesgue, gaussian, sconcave };

std::string measure_class_name(MeasureClass c);

/// Metadata attached to the extremal constructions: the density factorises as
/// psi(z + t v) = A(t) * [z/m(t) in F] along the fiber direction v, where F is
/// the top face at level r1 and m is the regime's scaling profile.
struct ExtremalStructure {
  ExtremalRegime regime{};
  double s = 0;
  VecN u;              // cut direction (unit)
  VecN v;              // fiber direction, <v,u> = 1
  double r0 = 0;       // cone: apex level
  double r1 = 0;       // top-face level
  double a = 0;        // profile parameter
  double R = 0;        // expanding: pole level
  std::vector<VecN> face;  // face vertex offsets (orthogonal to u)
  double face_measure = 1; // length (n=2) or area (n=3) of F
};

struct WeightedBody {
  ConvexBody body;
  MeasureClass cls = MeasureClass::lebesgue;
  double s = 1.0;  // sconcave class parameter
  /// Density override; empty means "by class" (1 for lebesgue, the standard
  /// Gaussian for gaussian, the structure profile for sconcave).
  std::function<double(const VecN&)> psi;
  std::optional<ExtremalStructure> structure;
  std::string id = "weighted-body";

  double density_at(const VecN& x) const;
};

struct McOptions {
  std::uint64_t seed = 20240817;
  std::uint64_t samples = 10'000'000;
};

struct MassResult {
  double value = 0;
  double standard_error = 0;  // 0 for exact paths
  std::string method;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Total weighted mass.  Exact for uniform polytopes (dim 2/3), Gaussian
/// weight via marginal quadrature (dim 2/3), structure bodies via their
/// closed-form marginal; Monte Carlo otherwise.
MassResult total_mass(const WeightedBody& w, const McOptions& mc = {});

/// Weighted barycenter (same path selection as total_mass).
VecN weighted_barycenter(const WeightedBody& w, const McOptions& mc = {});

/// One-dimensional marginal of the weight along unit direction u, as a
/// Density1D ready for the CDF machinery.  Deterministic paths only; throws
/// std::invalid_argument when no exact path exists for the body/class.
Density1D marginal_density(const WeightedBody& w, const VecN& u);

/// Mass of {x in K : <x,u> <= c}.
MassResult cut_mass(const WeightedBody& w, const VecN& u, double c,
                    const McOptions& mc = {});

/// Monte Carlo estimate of the FRACTION of the body's mass with <x,u> <= c,
/// independent of the deterministic paths (box importance sampling for
/// bounded bodies, exact profile samplers for unbounded structure bodies,
/// direct Gaussian sampling for the gaussian class).
MassResult mc_cut_fraction(const WeightedBody& w, const VecN& u, double c,
                           const McOptions& mc = {});

/// Mass of {x in K : <x,u> <= r} computed through the skewed-fiber
/// factorisation along v (requires <v,u> > 0).  For structure bodies the
/// factorisation is spot-checked at sampled points first; for v parallel to u
/// this reduces to cut_mass on any body.
MassResult skew_slice_mass(const WeightedBody& w, const VecN& u, const VecN& v,
                           double r, const McOptions& mc = {});

/// Full verification of the cut bound for direction u: cut at the barycenter,
/// compare the barycenter-side mass against the class bound, and test the
/// equality profile.  Class conventions: lebesgue and sconcave compare the
/// mass FRACTION against (n/(n+1))^n resp. the s-bound; the gaussian class
/// compares the absolute Gaussian mass against Phi(-I(t)/t) at t = total
/// Gaussian mass of the body.
CutReport grunbaum_verify(const WeightedBody& w, const VecN& u,
                          const McOptions& mc = {});

struct DirectionSearch {
  VecN best_direction;
  double best_value = 0;      // min over sides of the cut fraction
  CutReport best_report;
  int evaluations = 0;
  std::vector<std::pair<VecN, double>> starts;  // per-start converged results
};

/// Minimises min(fraction below, fraction above) of the barycenter cut over
/// unit directions, with multi-start Nelder-Mead on the sphere chart.
DirectionSearch min_cut_direction(const WeightedBody& w, int starts = 32,
                                  std::uint64_t seed = 7, const McOptions& mc = {});

/// Verification reports over a deterministic direction net (uniform angles in
/// 2-D, Fibonacci sphere in 3-D).
std::vector<CutReport> direction_sweep(const WeightedBody& w, int count,
                                       const McOptions& mc = {});

/// Parameters for the n-dimensional extremal constructions.
struct ExtremalBodySpec {
  double s = 0.5;
  int n = 2;
  double r1 = 1.0;
  double a = 1.0;
  VecN u;                       // default e1
  VecN v;                       // default u; rescaled so <v,u> = 1
  double face_lo = -0.5, face_hi = 0.5;  // n == 2: face interval in perp(u)
  std::vector<Vec2> face_polygon;        // n == 3: face in a basis of u-perp
  std::string id;
};

/// Cone (s > 0), cylinder (s = 0) or expanding body (s < 0) whose cut profile
/// attains the s-concave bound exactly, with the factorisation metadata
/// attached.
WeightedBody extremal_body_nd(const ExtremalBodySpec& spec);

/// Uniformly-weighted random convex polytope (hull of random points).
WeightedBody random_polytope(int dim, RngStream& rng, const std::string& id);

/// Verdict for the dimensional Brunn profile: r -> cut_mass(r)^{1/n} must be
/// concave for uniform weights on convex bodies.
ShapeVerdict brunn_profile_verdict(const WeightedBody& w, const VecN& u,
                                   int grid_points = 257);

}  // namespace grunbaum
