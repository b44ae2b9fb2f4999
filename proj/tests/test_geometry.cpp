// Exact polygon/polytope kernels: areas, centroids, halfplane clipping,
// sections, hulls, and tetrahedral volumes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "grunbaum/geometry.hpp"

using namespace grunbaum;

namespace {
const std::vector<Vec2> kTriangle{{0, 0}, {1, 0}, {0, 1}};
const std::vector<Vec2> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

TEST_CASE("areas and centroids") {
  CHECK(polygon_area(kTriangle) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(polygon_area(kSquare) == doctest::Approx(1.0).epsilon(1e-15));
  const Vec2 c = polygon_centroid(kTriangle);
  CHECK(c[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // Signed area flips with orientation; ensure_ccw restores it.
  std::vector<Vec2> cw{{0, 0}, {0, 1}, {1, 0}};
  CHECK(polygon_signed_area(cw) == doctest::Approx(-0.5).epsilon(1e-15));
  ensure_ccw(cw);
  CHECK(polygon_signed_area(cw) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("halfplane clipping") {
  // Keep <x, u> <= c.
  auto left = clip_polygon_halfplane(kSquare, {1, 0}, 0.5);
  CHECK(polygon_area(left) == doctest::Approx(0.5).epsilon(1e-14));
  // Triangle split at the barycenter along e1: sides 5/18 and 2/9.
  auto low = clip_polygon_halfplane(kTriangle, {1, 0}, 1.0 / 3.0);
  auto high = clip_polygon_halfplane(kTriangle, {-1, 0}, -1.0 / 3.0);
  CHECK(polygon_area(low) == doctest::Approx(5.0 / 18.0).epsilon(1e-13));
  CHECK(polygon_area(high) == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(polygon_area(low) + polygon_area(high) ==
        doctest::Approx(0.5).epsilon(1e-13));
  // Clipping everything / nothing.
  CHECK(clip_polygon_halfplane(kSquare, {1, 0}, -1.0).empty());
  CHECK(polygon_area(clip_polygon_halfplane(kSquare, {1, 0}, 5.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("polygon sections") {
  Interval s1 = polygon_section(kSquare, {1, 0}, 0.3);
  CHECK(s1.length() == doctest::Approx(1.0).epsilon(1e-13));
  Interval s2 = polygon_section(kTriangle, {1, 0}, 0.5);
  CHECK(s2.length() == doctest::Approx(0.5).epsilon(1e-13));
  Interval s3 = polygon_section(kTriangle, {1, 0}, 2.0);
  CHECK(s3.length() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("convex hull in the plane") {
  std::vector<Vec2> pts{{0, 0}, {1, 0},   {1, 1},     {0, 1},
                        {0.5, 0.5}, {0.2, 0.8}, {0.9, 0.1}};
  auto hull = convex_hull2(pts);
  CHECK(hull.size() == 4);
  CHECK(polygon_area(hull) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tetrahedra") {
  const Tetra3 t{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  CHECK(tetra_volume(t) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  // Clip-volume complement identity along several directions and levels.
  const Vec3 dirs[] = {{1, 0, 0}, {0, 1, 0}, {0.6, 0.8, 0}};
  for (const Vec3& u : dirs) {
    for (int k = -2; k <= 6; ++k) {
      const double c = 0.2 * k;
      const double lo = tetra_clip_volume(t, u, c);
      const Vec3 nu{-u[0], -u[1], -u[2]};
      const double hi = tetra_clip_volume(t, nu, -c);
      CHECK(lo + hi == doctest::Approx(tetra_volume(t)).epsilon(1e-12));
      CHECK(lo >= -1e-15);
    }
  }
  // The apex side of the barycenter cut carries (3/4)^3 of the volume.
  const double apex = tetra_clip_volume(t, Vec3{-1, 0, 0}, -0.25);
  CHECK(apex == doctest::Approx((27.0 / 64.0) / 6.0).epsilon(1e-13));

  // Section area at mid-level along e1: a right triangle with legs 1/2.
  CHECK(tetra_section_area(t, Vec3{1, 0, 0}, 0.5) ==
        doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("convex hull in space") {
  std::vector<Vec3> cube;
  for (int m = 0; m < 8; ++m)
    cube.push_back(Vec3{double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
  cube.push_back(Vec3{0.5, 0.5, 0.5});  // interior point
  HullMesh h = convex_hull3(cube);
  CHECK(hull_volume(h) == doctest::Approx(1.0).epsilon(1e-12));
  const Vec3 c = hull_centroid(h);
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-12));
  // The tetra fan partitions the volume.
  double vol = 0.0;
  for (const Tetra3& t : tetra_fan(h)) vol += tetra_volume(t);
  CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
}
