#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "affcap/starbody.hpp"

namespace affcap {

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
              const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

std::vector<int> convex_hull_2d(const Eigen::MatrixXd& pts) {
  const int n = static_cast<int>(pts.cols());
  if (pts.rows() != 2 || n < 3) throw InputError("convex_hull_2d: need >= 3 points in R^2");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts(0, a) != pts(0, b)) return pts(0, a) < pts(0, b);
    return pts(1, a) < pts(1, b);
  });
  const double scale = pts.cwiseAbs().maxCoeff();
  const double eps = 1e-12 * std::max(1.0, scale * scale);

  std::vector<int> hull(2 * n);
  int k = 0;
  for (int ii = 0; ii < n; ++ii) {  // lower chain
    const int i = idx[ii];
    while (k >= 2 && cross2(pts.col(hull[k - 2]), pts.col(hull[k - 1]), pts.col(i)) <= eps)
      --k;
    hull[k++] = i;
  }
  for (int ii = n - 2, lo = k + 1; ii >= 0; --ii) {  // upper chain
    const int i = idx[ii];
    while (k >= lo && cross2(pts.col(hull[k - 2]), pts.col(hull[k - 1]), pts.col(i)) <= eps)
      --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw GeometryError("convex_hull_2d: degenerate point set");
  return hull;  // counter-clockwise
}

namespace {

struct Tri {
  std::array<int, 3> v;
  Eigen::Vector3d normal;  // unnormalized outward
  double offset;           // normal . vertex
  bool alive = true;
};

Tri make_tri(const Eigen::MatrixXd& pts, int a, int b, int c) {
  Tri t;
  t.v = {a, b, c};
  const Eigen::Vector3d pa = pts.col(a), pb = pts.col(b), pc = pts.col(c);
  t.normal = (pb - pa).cross(pc - pa);
  t.offset = t.normal.dot(pa);
  return t;
}

}  // namespace

std::vector<std::array<int, 3>> convex_hull_3d(const Eigen::MatrixXd& pts) {
  const int n = static_cast<int>(pts.cols());
  if (pts.rows() != 3 || n < 4) throw InputError("convex_hull_3d: need >= 4 points in R^3");
  const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
  const double eps = 1e-10 * scale * scale;

  // Initial non-degenerate tetrahedron.
  int i1 = 1;
  while (i1 < n && (pts.col(i1) - pts.col(0)).norm() < 1e-12 * scale) ++i1;
  if (i1 >= n) throw GeometryError("convex_hull_3d: all points coincide");
  const Eigen::Vector3d p0 = pts.col(0);
  const Eigen::Vector3d e1 = Eigen::Vector3d(pts.col(i1)) - p0;
  int i2 = -1;
  for (int i = i1 + 1; i < n; ++i) {
    if (e1.cross(Eigen::Vector3d(pts.col(i)) - p0).norm() > eps) {
      i2 = i;
      break;
    }
  }
  if (i2 < 0) throw GeometryError("convex_hull_3d: points are collinear");
  const Eigen::Vector3d base_n = e1.cross(Eigen::Vector3d(pts.col(i2)) - p0);
  int i3 = -1;
  for (int i = 0; i < n; ++i) {
    if (std::abs(base_n.dot(Eigen::Vector3d(pts.col(i)) - p0)) > eps) {
      i3 = i;
      break;
    }
  }
  if (i3 < 0) throw GeometryError("convex_hull_3d: points are coplanar");

  std::vector<Tri> tris;
  {
    int a = 0, b = i1, c = i2, d = i3;
    if (base_n.dot(Eigen::Vector3d(pts.col(d)) - p0) > 0) std::swap(b, c);
    tris.push_back(make_tri(pts, a, b, c));
    tris.push_back(make_tri(pts, a, c, d));
    tris.push_back(make_tri(pts, a, d, b));
    tris.push_back(make_tri(pts, b, d, c));
  }

  for (int p = 0; p < n; ++p) {
    if (p == 0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> visible;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      if (!tris[t].alive) continue;
      if (tris[t].normal.dot(pts.col(p)) - tris[t].offset > eps) visible.push_back(t);
    }
    if (visible.empty()) continue;

    // Horizon: edges of visible triangles whose twin face is not visible.
    std::vector<std::pair<int, int>> horizon;
    auto is_visible = [&](int a, int b) {
      for (int t : visible) {
        const auto& v = tris[t].v;
        for (int e = 0; e < 3; ++e)
          if (v[e] == a && v[(e + 1) % 3] == b) return true;
      }
      return false;
    };
    for (int t : visible) {
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        if (!is_visible(b, a)) horizon.emplace_back(a, b);
      }
      tris[t].alive = false;
    }
    for (const auto& [a, b] : horizon) tris.push_back(make_tri(pts, a, b, p));
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris)
    if (t.alive && t.normal.norm() > eps) out.push_back(t.v);
  if (out.size() < 4) throw GeometryError("convex_hull_3d: hull construction failed");
  return out;
}

}  // namespace affcap
