#include "grunbaum/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace grunbaum {

// --- 2-D --------------------------------------------------------------------

double polygon_signed_area(const std::vector<Vec2>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * s;
}

double polygon_area(const std::vector<Vec2>& poly) {
  return std::fabs(polygon_signed_area(poly));
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
  const std::size_t n = poly.size();
  const double a = polygon_signed_area(poly);
  if (n < 3 || a == 0.0) {
    throw std::domain_error("polygon_centroid: degenerate polygon");
  }
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double w = p[0] * q[1] - q[0] * p[1];
    cx += (p[0] + q[0]) * w;
    cy += (p[1] + q[1]) * w;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

void ensure_ccw(std::vector<Vec2>& poly) {
  if (polygon_signed_area(poly) < 0.0) {
    std::reverse(poly.begin(), poly.end());
  }
}

std::vector<Vec2> clip_polygon_halfplane(const std::vector<Vec2>& poly,
                                         const Vec2& u, double c) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double dp = c - dot2(p, u);  // >= 0 means p is kept
    const double dq = c - dot2(q, u);
    if (dp >= 0.0) out.push_back(p);
    if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
      const double s = dp / (dp - dq);
      out.push_back({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
    }
  }
  return out;
}

Interval polygon_section(const std::vector<Vec2>& poly, const Vec2& u,
                         double t) {
  Interval iv;
  const Vec2 perp{-u[1], u[0]};
  const std::size_t n = poly.size();
  bool any = false;
  auto absorb = [&](const Vec2& x) {
    const double y = dot2(x, perp);
    if (!any) {
      iv.lo = iv.hi = y;
      any = true;
    } else {
      iv.lo = std::min(iv.lo, y);
      iv.hi = std::max(iv.hi, y);
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double hp = dot2(p, u) - t;
    const double hq = dot2(q, u) - t;
    if (hp == 0.0) absorb(p);
    if ((hp > 0.0 && hq < 0.0) || (hp < 0.0 && hq > 0.0)) {
      const double s = hp / (hp - hq);
      absorb({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
    }
  }
  iv.empty = !any;
  return iv;
}

std::vector<Vec2> convex_hull2(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {  // upper chain
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// --- 3-D --------------------------------------------------------------------

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot3(a, cross3(b, c));
}

}  // namespace

double tetra_volume(const Tetra3& t) {
  return std::fabs(det3(sub(t[1], t[0]), sub(t[2], t[0]), sub(t[3], t[0]))) / 6.0;
}

HullMesh convex_hull3(const std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  if (n < 4) throw std::invalid_argument("convex_hull3: need at least 4 points");
  double scale = 0.0;
  for (const Vec3& p : pts) {
    for (double x : p) scale = std::max(scale, std::fabs(x));
  }
  const double eps = 1e-12 * std::max(scale, 1.0);

  // Initial simplex: spread-out quadruple.
  std::size_t i1 = 1;
  double best = -1.0;
  for (std::size_t i = 1; i < n; ++i) {
    Vec3 d = sub(pts[i], pts[0]);
    const double v = dot3(d, d);
    if (v > best) { best = v; i1 = i; }
  }
  std::size_t i2 = 0;
  best = -1.0;
  const Vec3 e1 = sub(pts[i1], pts[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 c = cross3(e1, sub(pts[i], pts[0]));
    const double v = dot3(c, c);
    if (v > best) { best = v; i2 = i; }
  }
  std::size_t i3 = 0;
  best = -1.0;
  const Vec3 nrm0 = cross3(e1, sub(pts[i2], pts[0]));
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(dot3(nrm0, sub(pts[i], pts[0])));
    if (v > best) { best = v; i3 = i; }
  }
  Tetra3 t0{pts[0], pts[i1], pts[i2], pts[i3]};
  if (tetra_volume(t0) < eps * eps * eps) {
    throw std::invalid_argument("convex_hull3: points are not full-dimensional");
  }

  HullMesh mesh;
  mesh.vertices = pts;
  const Vec3 inner{
      (t0[0][0] + t0[1][0] + t0[2][0] + t0[3][0]) / 4.0,
      (t0[0][1] + t0[1][1] + t0[2][1] + t0[3][1]) / 4.0,
      (t0[0][2] + t0[1][2] + t0[2][2] + t0[3][2]) / 4.0};
  auto add_facet = [&](int a, int b, int c) {
    // Orient so the normal points away from the interior reference point.
    const Vec3 nrm = cross3(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
    if (dot3(nrm, sub(inner, pts[a])) > 0.0) {
      mesh.facets.push_back({a, c, b});
    } else {
      mesh.facets.push_back({a, b, c});
    }
  };
  const int j0 = 0, j1 = static_cast<int>(i1), j2 = static_cast<int>(i2),
            j3 = static_cast<int>(i3);
  add_facet(j0, j1, j2);
  add_facet(j0, j1, j3);
  add_facet(j0, j2, j3);
  add_facet(j1, j2, j3);

  auto facet_sees = [&](const std::array<int, 3>& f, const Vec3& p) {
    const Vec3 nrm = cross3(sub(pts[f[1]], pts[f[0]]), sub(pts[f[2]], pts[f[0]]));
    return dot3(nrm, sub(p, pts[f[0]])) > eps * std::sqrt(dot3(nrm, nrm));
  };

  for (std::size_t pi = 0; pi < n; ++pi) {
    const int ip = static_cast<int>(pi);
    if (ip == j0 || ip == j1 || ip == j2 || ip == j3) continue;
    std::vector<char> visible(mesh.facets.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
      if (facet_sees(mesh.facets[f], pts[pi])) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;  // interior (or on the surface) of the current hull
    // Horizon: directed edges of visible facets whose reverse edge does not
    // belong to another visible facet.
    std::map<std::pair<int, int>, int> edge_use;
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
      if (!visible[f]) continue;
      const auto& fc = mesh.facets[f];
      for (int e = 0; e < 3; ++e) {
        edge_use[{fc[e], fc[(e + 1) % 3]}] += 1;
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [edge, cnt] : edge_use) {
      (void)cnt;
      if (edge_use.find({edge.second, edge.first}) == edge_use.end()) {
        horizon.push_back(edge);
      }
    }
    std::vector<std::array<int, 3>> kept;
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
      if (!visible[f]) kept.push_back(mesh.facets[f]);
    }
    // New facets keep the horizon edge orientation, which was outward on the
    // visible side, so (a, b, p) stays outward-oriented.
    for (const auto& [a, b] : horizon) {
      kept.push_back({a, b, ip});
    }
    mesh.facets = std::move(kept);
  }
  return mesh;
}

double hull_volume(const HullMesh& h) {
  double v = 0.0;
  for (const auto& f : h.facets) {
    v += det3(h.vertices[f[0]], h.vertices[f[1]], h.vertices[f[2]]);
  }
  return v / 6.0;
}

Vec3 hull_centroid(const HullMesh& h) {
  double v = 0.0;
  Vec3 c{0, 0, 0};
  for (const auto& f : h.facets) {
    const Vec3& a = h.vertices[f[0]];
    const Vec3& b = h.vertices[f[1]];
    const Vec3& d = h.vertices[f[2]];
    const double w = det3(a, b, d);  // signed volume of (0,a,b,d) * 6
    v += w;
    for (int i = 0; i < 3; ++i) c[i] += w * (a[i] + b[i] + d[i]) / 4.0;
  }
  if (v == 0.0) throw std::domain_error("hull_centroid: degenerate hull");
  for (int i = 0; i < 3; ++i) c[i] /= v;
  return c;
}

std::vector<Tetra3> tetra_fan(const HullMesh& h) {
  std::vector<Tetra3> out;
  const Vec3& apex = h.vertices[0];
  for (const auto& f : h.facets) {
    if (f[0] == 0 || f[1] == 0 || f[2] == 0) continue;
    out.push_back({apex, h.vertices[f[0]], h.vertices[f[1]], h.vertices[f[2]]});
  }
  return out;
}

double tetra_clip_volume(const Tetra3& t, const Vec3& u, double c) {
  double d[4];
  int below[4], above[4];
  int nb = 0, na = 0;
  for (int i = 0; i < 4; ++i) {
    d[i] = dot3(t[i], u) - c;
    if (d[i] <= 0.0) below[nb++] = i; else above[na++] = i;
  }
  const double vol = tetra_volume(t);
  if (nb == 0) return 0.0;
  if (nb == 4) return vol;
  auto edge_point = [&](int i, int j) -> Vec3 {
    const double s = d[i] / (d[i] - d[j]);
    return {t[i][0] + s * (t[j][0] - t[i][0]),
            t[i][1] + s * (t[j][1] - t[i][1]),
            t[i][2] + s * (t[j][2] - t[i][2])};
  };
  if (nb == 1) {
    const int p = below[0];
    return tetra_volume(
        {t[p], edge_point(p, above[0]), edge_point(p, above[1]),
         edge_point(p, above[2])});
  }
  if (nb == 3) {
    const int p = above[0];
    return vol - tetra_volume({t[p], edge_point(below[0], p),
                               edge_point(below[1], p),
                               edge_point(below[2], p)});
  }
  // nb == 2: wedge between the kept edge (p,q) and the cut quadrilateral.
  const int p = below[0], q = below[1], r = above[0], s = above[1];
  const Vec3 epr = edge_point(p, r), eps_ = edge_point(p, s);
  const Vec3 eqr = edge_point(q, r), eqs = edge_point(q, s);
  return tetra_volume({t[p], t[q], eqr, eqs}) +
         tetra_volume({t[p], epr, eps_, eqs}) +
         tetra_volume({t[p], epr, eqs, eqr});
}

double tetra_section_area(const Tetra3& t, const Vec3& u, double level) {
  double h[4];
  for (int i = 0; i < 4; ++i) h[i] = dot3(t[i], u) - level;
  std::vector<Vec3> pts;
  for (int i = 0; i < 4; ++i) {
    if (h[i] == 0.0) pts.push_back(t[i]);
    for (int j = i + 1; j < 4; ++j) {
      if ((h[i] > 0.0 && h[j] < 0.0) || (h[i] < 0.0 && h[j] > 0.0)) {
        const double s = h[i] / (h[i] - h[j]);
        pts.push_back({t[i][0] + s * (t[j][0] - t[i][0]),
                       t[i][1] + s * (t[j][1] - t[i][1]),
                       t[i][2] + s * (t[j][2] - t[i][2])});
      }
    }
  }
  if (pts.size() < 3) return 0.0;
  // Project to a basis of the section plane and take the convex area.
  Vec3 b1 = std::fabs(u[0]) < 0.9 ? cross3(u, {1, 0, 0}) : cross3(u, {0, 1, 0});
  const double n1 = std::sqrt(dot3(b1, b1));
  for (double& x : b1) x /= n1;
  const Vec3 b2 = cross3(u, b1);
  std::vector<Vec2> flat;
  flat.reserve(pts.size());
  for (const Vec3& p : pts) flat.push_back({dot3(p, b1), dot3(p, b2)});
  const std::vector<Vec2> hull = convex_hull2(std::move(flat));
  return polygon_area(hull);
}

}  // namespace grunbaum
