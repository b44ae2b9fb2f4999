// Weighted convex bodies: exact cut verification for polytopes, Gaussian
// weights, the extremal constructions, Monte Carlo cross-checks, the skewed
// fiber factorisation, and direction search.  Reduced-scale batteries here;
// the full-scale runs live in the acceptance binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "grunbaum/body.hpp"
#include "grunbaum/fconcave.hpp"
#include "grunbaum/special.hpp"

using namespace grunbaum;

namespace {

constexpr double kPhi0 = 0.39894228040143267794;

WeightedBody triangle_body() {
  WeightedBody w;
  w.body.dim = 2;
  w.body.vertices = {{0, 0}, {1, 0}, {0, 1}};
  w.id = "triangle";
  return w;
}

WeightedBody square_body() {
  WeightedBody w;
  w.body.dim = 2;
  w.body.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  w.id = "square";
  return w;
}

WeightedBody simplex3_body() {
  WeightedBody w;
  w.body.dim = 3;
  w.body.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  w.id = "simplex3";
  return w;
}

WeightedBody halfspace_body() {
  WeightedBody w;
  w.body.dim = 2;
  w.body.vertices = {{0, 0}};
  w.body.rays = {{-1, 0}, {0, 1}, {0, -1}};
  w.cls = MeasureClass::gaussian;
  w.id = "halfspace";
  return w;
}

WeightedBody disk_body(int sides = 256) {
  WeightedBody w;
  w.body.dim = 2;
  for (int k = 0; k < sides; ++k) {
    const double th = 2.0 * 3.14159265358979323846 * k / sides;
    w.body.vertices.push_back({std::cos(th), std::sin(th)});
  }
  w.cls = MeasureClass::gaussian;
  w.id = "disk";
  return w;
}

const McOptions kFastMc{20240817, 200000};

}  // namespace

TEST_CASE("total mass and barycenters of the reference bodies") {
  CHECK(total_mass(triangle_body()).value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(total_mass(square_body()).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(total_mass(simplex3_body()).value ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  VecN g = weighted_barycenter(triangle_body());
  CHECK(g[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  VecN g3 = weighted_barycenter(simplex3_body());
  for (double c : g3) CHECK(c == doctest::Approx(0.25).epsilon(1e-12));

  // Gaussian halfspace: absolute mass 1/2, barycenter at -2 phi(0).
  WeightedBody hs = halfspace_body();
  CHECK(total_mass(hs).value == doctest::Approx(0.5).epsilon(1e-9));
  VecN gh = weighted_barycenter(hs);
  CHECK(gh[0] == doctest::Approx(-2.0 * kPhi0).epsilon(1e-9));
  CHECK(gh[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("triangle attains the planar bound along a cone direction") {
  CutReport r = grunbaum_verify(triangle_body(), {1, 0});
  CHECK(r.measured == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(r.bound == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(std::fabs(r.gap) <= 1e-12);
  CHECK(r.equality);
  CHECK(r.method == "exact-clip");
  CHECK(r.cut_offset == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  // Same body, rotated 30 degrees, cut along the rotated direction.
  const double c30 = std::cos(0.5235987755982988), s30 = std::sin(0.5235987755982988);
  WeightedBody rot = triangle_body();
  for (auto& v : rot.body.vertices) {
    const double x = v[0], y = v[1];
    v[0] = c30 * x - s30 * y;
    v[1] = s30 * x + c30 * y;
  }
  CutReport rr = grunbaum_verify(rot, {c30, s30});
  CHECK(rr.measured == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(rr.equality);
}

TEST_CASE("square is strictly above the planar bound") {
  CutReport r = grunbaum_verify(square_body(), {1, 0});
  CHECK(r.measured == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.gap == doctest::Approx(1.0 / 18.0).epsilon(1e-10));
  CHECK_FALSE(r.equality);
}

TEST_CASE("simplex attains the spatial bound along a cone direction") {
  CutReport r = grunbaum_verify(simplex3_body(), {1, 0, 0});
  CHECK(r.measured == doctest::Approx(27.0 / 64.0).epsilon(1e-10));
  CHECK(r.bound == doctest::Approx(27.0 / 64.0).epsilon(1e-14));
  CHECK(r.equality);
  CHECK(r.method == "exact-tetra");
}

TEST_CASE("gaussian halfspace attains the gaussian bound") {
  CutReport r = grunbaum_verify(halfspace_body(), {1, 0});
  CHECK(r.total == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.cut_offset == doctest::Approx(-2.0 * kPhi0).epsilon(1e-9));
  CHECK(r.measured ==
        doctest::Approx(0.21246874184168099952).epsilon(1e-8));
  CHECK(r.bound == doctest::Approx(ehrhard_grunbaum_bound(0.5)).epsilon(1e-9));
  CHECK(std::fabs(r.gap) <= 1e-8);
  CHECK(r.equality);

  // Along e2 the halfspace is not an equality case.
  CutReport r2 = grunbaum_verify(halfspace_body(), {0, 1});
  CHECK(r2.measured == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(r2.gap > 1e-3);
  CHECK_FALSE(r2.equality);
}

TEST_CASE("gaussian disk: quadrature numbers and monte carlo cross-check") {
  WeightedBody d = disk_body();
  CutReport r = grunbaum_verify(d, {1, 0});
  // Ideal-disk values; the 256-gon sits within ~1e-4 of them.
  CHECK(r.total == doctest::Approx(0.3934693402873666).epsilon(3e-4));
  CHECK(r.measured == doctest::Approx(r.total / 2).epsilon(1e-9));
  CHECK(r.bound == doctest::Approx(0.1641504935123563).epsilon(3e-4));
  CHECK(r.gap > 0.03);
  CHECK_FALSE(r.equality);

  // Independent Monte Carlo: the fraction below the symmetry axis is 1/2.
  MassResult mc = mc_cut_fraction(d, {1, 0}, 0.0, kFastMc);
  CHECK(std::fabs(mc.value - 0.5) <=
        std::max(4.0 * mc.standard_error, 2e-3));
  // And the exact total agrees with the flat-area Gaussian integral.
  MassResult tot = total_mass(d);
  CHECK(tot.value == doctest::Approx(r.total).epsilon(1e-9));
}

TEST_CASE("marginal consistency: cdf of the marginal equals the cut mass") {
  for (auto make : {triangle_body, square_body}) {
    for (VecN u : {VecN{1, 0}, VecN{0, 1}, VecN{0.6, -0.8}}) {
      WeightedBody w = make();
      Measure1D mu(marginal_density(w, u));
      MassResult tot = total_mass(w);
      CHECK(mu.total_mass() == doctest::Approx(tot.value).epsilon(1e-8));
      for (double q : {0.25, 0.5, 0.75}) {
        const double c = mu.quantile(q * mu.total_mass());
        CHECK(cut_mass(w, u, c).value ==
              doctest::Approx(q * tot.value).epsilon(1e-8));
      }
      // Barycenter projection matches the marginal barycenter.
      const double proj = dotn(weighted_barycenter(w), u);
      CHECK(mu.truncated_barycenter(mu.window_lo(), mu.window_hi()) ==
            doctest::Approx(proj).epsilon(1e-7));
    }
  }
  // Spatial case.
  WeightedBody s3 = simplex3_body();
  VecN u{0, 0, 1};
  Measure1D mu(marginal_density(s3, u));
  CHECK(mu.total_mass() == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
  CHECK(cut_mass(s3, u, 0.25).value ==
        doctest::Approx(mu.cdf(0.25)).epsilon(1e-8));
}

TEST_CASE("brunn profile concavity for uniform bodies") {
  CHECK(brunn_profile_verdict(triangle_body(), {1, 0}).passed);
  CHECK(brunn_profile_verdict(triangle_body(), {0.6, 0.8}).passed);
  CHECK(brunn_profile_verdict(square_body(), {1, 0}).passed);
  CHECK(brunn_profile_verdict(simplex3_body(), {1, 0, 0}).passed);
  CHECK(brunn_profile_verdict(simplex3_body(), {0.6, 0, 0.8}).passed);
}

TEST_CASE("extremal bodies attain their bounds on the exact path") {
  // Cone (s = 1/2) in the plane.
  ExtremalBodySpec cone;
  cone.s = 0.5;
  cone.n = 2;
  WeightedBody wc = extremal_body_nd(cone);
  CutReport rc = grunbaum_verify(wc, wc.structure->u);
  CHECK(std::fabs(rc.gap) <= 1e-7);
  CHECK(rc.equality);
  CHECK(rc.bound == doctest::Approx(4.0 / 9.0).epsilon(1e-12));

  // Cylinder (s = 0) in space.
  ExtremalBodySpec cyl;
  cyl.s = 0.0;
  cyl.n = 3;
  WeightedBody wy = extremal_body_nd(cyl);
  CutReport ry = grunbaum_verify(wy, wy.structure->u);
  CHECK(std::fabs(ry.gap) <= 1e-7);
  CHECK(ry.equality);
  CHECK(ry.bound ==
        doctest::Approx(0.3678794411714423216).epsilon(1e-12));

  // Expanding body (s = -1/4) in the plane.
  ExtremalBodySpec expb;
  expb.s = -0.25;
  expb.n = 2;
  WeightedBody we = extremal_body_nd(expb);
  CutReport re = grunbaum_verify(we, we.structure->u);
  CHECK(std::fabs(re.gap) <= 1e-7);
  CHECK(re.equality);
  CHECK(re.bound ==
        doctest::Approx(s_grunbaum_bound(-0.25)).epsilon(1e-12));
}

TEST_CASE("monte carlo agrees with the extremal closed forms") {
  ExtremalBodySpec cone;
  cone.s = 0.5;
  cone.n = 2;
  WeightedBody wc = extremal_body_nd(cone);
  VecN g = weighted_barycenter(wc, kFastMc);
  const double c = dotn(g, wc.structure->u);
  MassResult frac = mc_cut_fraction(wc, wc.structure->u, c, kFastMc);
  CHECK(std::fabs(frac.value - 4.0 / 9.0) <=
        std::max(4.0 * frac.standard_error, 2e-3));
}

TEST_CASE("sheared and upright cylinders give the same cut") {
  ExtremalBodySpec up;
  up.s = 0.0;
  up.n = 2;
  WeightedBody wu = extremal_body_nd(up);
  ExtremalBodySpec sheared = up;
  sheared.v = {1.0, 0.7};
  WeightedBody ws = extremal_body_nd(sheared);
  CutReport ru = grunbaum_verify(wu, wu.structure->u);
  CutReport rs = grunbaum_verify(ws, ws.structure->u);
  CHECK(rs.measured == doctest::Approx(ru.measured).epsilon(1e-7));
  CHECK(ru.equality);
  CHECK(rs.equality);
}

TEST_CASE("skewed fiber slices agree with straight cuts") {
  ExtremalBodySpec spec;
  spec.s = 0.5;
  spec.n = 2;
  spec.v = {1.0, 0.6};
  WeightedBody w = extremal_body_nd(spec);
  const VecN u = w.structure->u;
  const VecN v = w.structure->v;
  for (double r : {0.25, 0.5, 0.75, 0.95}) {
    const double straight = cut_mass(w, u, r).value;
    const double skew = skew_slice_mass(w, u, v, r).value;
    CHECK(skew == doctest::Approx(straight).epsilon(1e-6));
  }
}

TEST_CASE("direction search finds the triangle's cone direction") {
  DirectionSearch ds = min_cut_direction(triangle_body(), 8, 7, kFastMc);
  CHECK(ds.best_value >= 4.0 / 9.0 - 1e-9);
  CHECK(ds.best_value <= 4.0 / 9.0 + 1e-4);
  CHECK(ds.evaluations > 0);
  REQUIRE(ds.starts.size() == 8);
  // The report for the best direction is consistent.
  CHECK(ds.best_report.measured ==
        doctest::Approx(ds.best_value).epsilon(1e-6));
}

TEST_CASE("direction sweep is deterministic and respects the bound") {
  WeightedBody sq = square_body();
  auto rows = direction_sweep(sq, 16, kFastMc);
  REQUIRE(rows.size() == 16);
  for (const auto& r : rows) {
    CHECK(r.gap >= -1e-9);
    CHECK(r.measured == doctest::Approx(0.5).epsilon(1e-9));
  }
  auto rows2 = direction_sweep(sq, 16, kFastMc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].direction == rows2[i].direction);
    CHECK(rows[i].measured == rows2[i].measured);
  }
}

TEST_CASE("random polytope battery (reduced)") {
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    RngStream rng(0xB0D1E5ULL, static_cast<std::uint64_t>(i));
    WeightedBody w = random_polytope(2, rng, "poly2-" + std::to_string(i));
    auto rows = direction_sweep(w, 16, kFastMc);
    for (const auto& r : rows) {
      CHECK(r.measured >= 4.0 / 9.0 - 1e-6);
      ++checked;
    }
  }
  CHECK(checked == 30 * 16);

  for (int i = 0; i < 6; ++i) {
    RngStream rng(0x3D0B0D5ULL, static_cast<std::uint64_t>(i));
    WeightedBody w = random_polytope(3, rng, "poly3-" + std::to_string(i));
    auto rows = direction_sweep(w, 8, kFastMc);
    for (const auto& r : rows) CHECK(r.measured >= 27.0 / 64.0 - 1e-6);
  }
}

TEST_CASE("random polytopes under the gaussian weight (reduced)") {
  for (int i = 0; i < 6; ++i) {
    RngStream rng(0x6A0551A2ULL, static_cast<std::uint64_t>(i));
    WeightedBody w = random_polytope(2, rng, "gpoly-" + std::to_string(i));
    w.cls = MeasureClass::gaussian;
    auto rows = direction_sweep(w, 8, kFastMc);
    for (const auto& r : rows) CHECK(r.gap >= -1e-6);
  }
}

TEST_CASE("random polytopes are deterministic in the seed") {
  RngStream a(42, 0), b(42, 0);
  WeightedBody wa = random_polytope(2, a, "p");
  WeightedBody wb = random_polytope(2, b, "p");
  REQUIRE(wa.body.vertices.size() == wb.body.vertices.size());
  for (std::size_t i = 0; i < wa.body.vertices.size(); ++i) {
    CHECK(wa.body.vertices[i] == wb.body.vertices[i]);
  }
}

TEST_CASE("monte carlo results do not depend on the worker count") {
  WeightedBody d = disk_body(64);
  ::unsetenv("GRUNBAUM_LAB_THREADS");
  MassResult one = mc_cut_fraction(d, {1, 0}, 0.1, kFastMc);
  ::setenv("GRUNBAUM_LAB_THREADS", "3", 1);
  MassResult three = mc_cut_fraction(d, {1, 0}, 0.1, kFastMc);
  ::unsetenv("GRUNBAUM_LAB_THREADS");
  CHECK(one.value == three.value);  // bitwise: threading must not change sums
  CHECK(one.standard_error == three.standard_error);
  CHECK(one.samples == three.samples);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(grunbaum_verify(triangle_body(), {1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(grunbaum_verify(triangle_body(), {0, 0}),
                  std::invalid_argument);
  WeightedBody custom = square_body();
  custom.psi = [](const VecN& x) { return 1.0 + x[0] * 0.0; };
  CHECK_THROWS_AS(marginal_density(custom, {1, 0}), std::invalid_argument);
}
