#pragma once

// Exact convex geometry in dimensions 2 and 3: polygon clipping, areas,
// centroids and section chords; incremental 3-D convex hull, tetrahedral
// decomposition, and closed-form tetrahedron/halfspace intersections.
// Everything here is deterministic arithmetic -- no sampling.

#include <array>
#include <vector>

namespace grunbaum {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

inline double dot2(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// --- 2-D --------------------------------------------------------------------

/// Signed area (positive for counterclockwise orientation).
double polygon_signed_area(const std::vector<Vec2>& poly);
double polygon_area(const std::vector<Vec2>& poly);
/// Centroid; throws std::domain_error for degenerate (zero-area) polygons.
Vec2 polygon_centroid(const std::vector<Vec2>& poly);
/// Reorders to counterclockwise if needed.
void ensure_ccw(std::vector<Vec2>& poly);

/// Clips to the halfplane {x : <x,u> <= c} (Sutherland-Hodgman against a
/// single edge).  May return fewer than 3 vertices when the intersection is
/// empty or degenerate.
std::vector<Vec2> clip_polygon_halfplane(const std::vector<Vec2>& poly,
                                         const Vec2& u, double c);

struct Interval {
  double lo = 0, hi = 0;
  bool empty = true;
  double length() const { return empty ? 0.0 : hi - lo; }
};

/// The section {x in poly : <x,u> = t}, reported as the interval it spans in
/// the perpendicular direction perp(u) = (-u_y, u_x).
Interval polygon_section(const std::vector<Vec2>& poly, const Vec2& u, double t);

/// Convex hull (Andrew monotone chain), counterclockwise.
std::vector<Vec2> convex_hull2(std::vector<Vec2> pts);

// --- 3-D --------------------------------------------------------------------

using Tetra3 = std::array<Vec3, 4>;

double tetra_volume(const Tetra3& t);  // nonnegative

struct HullMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> facets;  // outward-oriented triangles
};

/// Incremental convex hull of full-dimensional point sets; throws
/// std::invalid_argument when the points are (numerically) coplanar.
HullMesh convex_hull3(const std::vector<Vec3>& pts);

double hull_volume(const HullMesh& h);
Vec3 hull_centroid(const HullMesh& h);

/// Partition of the hull into tetrahedra fanned from vertex 0 over the facets
/// not containing it.
std::vector<Tetra3> tetra_fan(const HullMesh& h);

/// Volume of T intersected with {<x,u> <= c}; exact case analysis, boundary
/// vertices counted on the kept side.
double tetra_clip_volume(const Tetra3& t, const Vec3& u, double c);

/// Area of the planar section T cap {<x,u> = t} for unit u.  At the measure-
/// zero levels where the plane contains a whole facet of T the area of that
/// facet is attributed to every adjacent tetrahedron; callers integrate over
/// t, so this does not affect any integral.
double tetra_section_area(const Tetra3& t, const Vec3& u, double level);

}  // namespace grunbaum
