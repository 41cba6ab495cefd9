#include "affcap/starbody.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace affcap {

LinearMap::LinearMap(Eigen::MatrixXd phi) : phi_(std::move(phi)) {
  if (phi_.rows() != phi_.cols() || phi_.rows() == 0)
    throw InputError("linear map must be square");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(phi_);
  if (!lu.isInvertible()) throw InputError("linear map must be invertible");
  inv_ = lu.inverse();
  abs_det_ = std::abs(lu.determinant());
}

LinearMap LinearMap::identity(int n) {
  return LinearMap(Eigen::MatrixXd::Identity(n, n));
}

namespace {

Facet edge_facet(const Eigen::MatrixXd& pts, int a, int b) {
  Facet f;
  const Eigen::Vector2d pa = pts.col(a), pb = pts.col(b);
  const Eigen::Vector2d e = pb - pa;
  const double len = e.norm();
  if (len < 1e-14) throw GeometryError("degenerate polygon edge");
  f.normal = Eigen::Vector2d(e.y(), -e.x()) / len;  // outward for CCW order
  f.measure = len;
  f.offset = f.normal.dot(pa);
  f.centroid = 0.5 * (pa + pb);
  f.vertex_ids = Eigen::Vector2i(a, b);
  return f;
}

Facet tri_facet(const Eigen::MatrixXd& pts, const std::array<int, 3>& t) {
  Facet f;
  const Eigen::Vector3d pa = pts.col(t[0]), pb = pts.col(t[1]), pc = pts.col(t[2]);
  const Eigen::Vector3d cr = (pb - pa).cross(pc - pa);
  const double nrm = cr.norm();
  if (nrm < 1e-14) throw GeometryError("degenerate triangle facet");
  f.normal = cr / nrm;
  f.measure = 0.5 * nrm;
  f.offset = f.normal.dot(pa);
  f.centroid = (pa + pb + pc) / 3.0;
  f.vertex_ids = Eigen::Vector3i(t[0], t[1], t[2]);
  return f;
}

std::vector<Facet> facets_from_hull(const Eigen::MatrixXd& pts) {
  std::vector<Facet> facets;
  if (pts.rows() == 2) {
    const std::vector<int> hull = convex_hull_2d(pts);
    for (std::size_t i = 0; i < hull.size(); ++i)
      facets.push_back(edge_facet(pts, hull[i], hull[(i + 1) % hull.size()]));
  } else if (pts.rows() == 3) {
    for (const auto& t : convex_hull_3d(pts)) facets.push_back(tri_facet(pts, t));
  } else {
    throw InputError("vertex hulls are supported for n in {2,3}");
  }
  return facets;
}

// n+1 facets of a simplex in R^n, valid in any dimension.
std::vector<Facet> simplex_facets(const Eigen::MatrixXd& v) {
  const int n = static_cast<int>(v.rows());
  std::vector<Facet> facets;
  double fact = 1.0;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> ids;
    for (int j = 0; j <= n; ++j)
      if (j != skip) ids.push_back(j);
    Eigen::MatrixXd span(n, n - 1);
    for (int j = 1; j < n; ++j) span.col(j - 1) = v.col(ids[j]) - v.col(ids[0]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(span.transpose());
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != 1) throw GeometryError("degenerate simplex facet");
    Eigen::VectorXd nu = kernel.col(0).normalized();
    if (nu.dot(v.col(skip) - v.col(ids[0])) > 0) nu = -nu;
    Facet f;
    f.normal = nu;
    f.offset = nu.dot(v.col(ids[0]));
    f.measure = std::sqrt((span.transpose() * span).determinant()) / fact;
    f.centroid = Eigen::VectorXd::Zero(n);
    for (int id : ids) f.centroid += v.col(id);
    f.centroid /= n;
    f.vertex_ids = Eigen::Map<Eigen::VectorXi>(ids.data(), n);
    facets.push_back(std::move(f));
  }
  return facets;
}

void require_origin_interior(const std::vector<Facet>& facets) {
  for (const auto& f : facets)
    if (!(f.offset > 0.0))
      throw GeometryError("origin is not strictly interior (facet offset <= 0)");
}

}  // namespace

StarBody StarBody::from_facet_mesh(int n, Eigen::MatrixXd vertices,
                                   std::vector<Facet> facets, bool convex,
                                   int grid_level) {
  if (convex) {
    require_origin_interior(facets);
    return StarBody(n, Polytope{std::move(vertices), std::move(facets)});
  }
  for (const auto& f : facets)
    if (!(f.offset > 0.0))
      throw GeometryError(
          "radial table interpolation produced a non-positive boundary cosine");
  return StarBody(n, StarMesh{std::move(vertices), std::move(facets), grid_level});
}

StarBody StarBody::cube(int n, double half_width) {
  if (n < 2 || !(half_width > 0.0)) throw InputError("cube: bad parameters");
  const int nv = 1 << n;
  Eigen::MatrixXd v(n, nv);
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < n; ++j) v(j, i) = (i >> j) & 1 ? half_width : -half_width;
  if (n <= 3) return from_facet_mesh(n, v, facets_from_hull(v), true, -1);
  std::vector<Facet> facets;
  const double area = std::pow(2.0 * half_width, n - 1);
  for (int j = 0; j < n; ++j) {
    for (int s : {-1, 1}) {
      Facet f;
      f.normal = Eigen::VectorXd::Zero(n);
      f.normal[j] = s;
      f.offset = half_width;
      f.measure = area;
      f.centroid = half_width * s * f.normal;
      facets.push_back(std::move(f));
    }
  }
  return from_facet_mesh(n, v, std::move(facets), true, -1);
}

StarBody StarBody::ball(int n, double radius) {
  if (!(radius > 0.0)) throw InputError("ball: radius must be positive");
  return ellipsoid(radius * Eigen::MatrixXd::Identity(n, n));
}

StarBody StarBody::ellipsoid(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  if (n < 2 || a.cols() != n) throw InputError("ellipsoid: matrix must be square, n >= 2");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw InputError("ellipsoid: matrix must be invertible");
  Ellipsoid e;
  e.a = a;
  const Eigen::MatrixXd ainv = lu.inverse();
  e.m = ainv.transpose() * ainv;
  e.abs_det = std::abs(lu.determinant());
  e.radius = a(0, 0);
  e.isotropic = (a - e.radius * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0
                && e.radius > 0.0;
  return StarBody(n, std::move(e));
}

StarBody StarBody::simplex(Eigen::MatrixXd vertices) {
  const int n = static_cast<int>(vertices.rows());
  if (vertices.cols() != n + 1) throw InputError("simplex: need n+1 vertices");
  if (n <= 3) return from_facet_mesh(n, vertices, facets_from_hull(vertices), true, -1);
  return from_facet_mesh(n, vertices, simplex_facets(vertices), true, -1);
}

StarBody StarBody::polytope_hull(Eigen::MatrixXd points) {
  const int n = static_cast<int>(points.rows());
  return from_facet_mesh(n, points, facets_from_hull(points), true, -1);
}

StarBody StarBody::lq_ball(int n, double q, double radius) {
  if (n < 2 || !(q >= 1.0) || !(radius > 0.0)) throw InputError("lq_ball: bad parameters");
  return StarBody(n, LqBall{q, radius});
}

Eigen::MatrixXd StarBody::radial_grid(int n, int grid_level) {
  if (grid_level < 0) throw InputError("radial_grid: level must be >= 0");
  if (n == 2) {
    const int cnt = 16 << grid_level;
    Eigen::MatrixXd dirs(2, cnt);
    for (int i = 0; i < cnt; ++i) {
      const double a = 2.0 * M_PI * i / cnt;
      dirs.col(i) << std::cos(a), std::sin(a);
    }
    return dirs;
  }
  if (n == 3) {
    // Subdivided icosahedron, midpoints projected back to the sphere.
    const double g = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
        {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> tris = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int lvl = 0; lvl < grid_level; ++lvl) {
      std::map<std::pair<int, int>, int> midpoint;
      auto mid = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        verts.push_back(((verts[a] + verts[b]) * 0.5).normalized());
        const int id = static_cast<int>(verts.size()) - 1;
        midpoint[key] = id;
        return id;
      };
      std::vector<std::array<int, 3>> next;
      for (const auto& t : tris) {
        const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
        next.push_back({t[0], ab, ca});
        next.push_back({t[1], bc, ab});
        next.push_back({t[2], ca, bc});
        next.push_back({ab, bc, ca});
      }
      tris = std::move(next);
    }
    Eigen::MatrixXd dirs(3, verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) dirs.col(i) = verts[i];
    return dirs;
  }
  throw InputError("radial tables are supported for n in {2,3}");
}

namespace {

std::vector<std::array<int, 3>> icosphere_triangles(int grid_level) {
  // Rebuild the triangle topology exactly as radial_grid does.
  std::vector<std::array<int, 3>> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  int vert_count = 12;
  for (int lvl = 0; lvl < grid_level; ++lvl) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      midpoint[key] = vert_count;
      return vert_count++;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  return tris;
}

}  // namespace

StarBody StarBody::radial_table(int n, int grid_level, Eigen::VectorXd values) {
  const Eigen::MatrixXd dirs = radial_grid(n, grid_level);
  if (values.size() != dirs.cols())
    throw InputError("radial_table: value count does not match the grid");
  if (values.minCoeff() <= 0.0)
    throw GeometryError("radial_table: radial values must be strictly positive");
  Eigen::MatrixXd verts(n, dirs.cols());
  for (int i = 0; i < dirs.cols(); ++i) verts.col(i) = values[i] * dirs.col(i);
  std::vector<Facet> facets;
  if (n == 2) {
    const int cnt = static_cast<int>(dirs.cols());
    for (int i = 0; i < cnt; ++i) facets.push_back(edge_facet(verts, i, (i + 1) % cnt));
  } else {
    for (const auto& t : icosphere_triangles(grid_level))
      facets.push_back(tri_facet(verts, t));
  }
  return from_facet_mesh(n, std::move(verts), std::move(facets), false, grid_level);
}

StarRep StarBody::rep() const {
  struct V {
    StarRep operator()(const Polytope&) const { return StarRep::Polytope; }
    StarRep operator()(const Ellipsoid&) const { return StarRep::Ellipsoid; }
    StarRep operator()(const LqBall&) const { return StarRep::LqBall; }
    StarRep operator()(const StarMesh&) const { return StarRep::StarMesh; }
  };
  return std::visit(V{}, rep_);
}

bool StarBody::is_ball() const {
  const auto* e = std::get_if<Ellipsoid>(&rep_);
  return e != nullptr && e->isotropic;
}

namespace {

// Containing facet of a star mesh: the facet whose vertex cone holds theta.
const Facet* locate_mesh_facet(const Eigen::MatrixXd& verts,
                               const std::vector<Facet>& facets,
                               const Eigen::VectorXd& theta) {
  const int n = static_cast<int>(theta.size());
  const Facet* best = nullptr;
  double best_min = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd basis(n, n);
  for (const auto& f : facets) {
    for (int j = 0; j < n; ++j) basis.col(j) = verts.col(f.vertex_ids[j]);
    const Eigen::VectorXd coeff = basis.fullPivLu().solve(theta);
    const double mn = coeff.minCoeff();
    if (mn > best_min) {
      best_min = mn;
      best = &f;
      if (mn > 1e-9) break;
    }
  }
  return best;
}

}  // namespace

double StarBody::radial(const Eigen::VectorXd& theta) const {
  if (theta.size() != n_) throw InputError("radial: dimension mismatch");
  if (const auto* p = std::get_if<Polytope>(&rep_)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : p->facets) {
      const double d = theta.dot(f.normal);
      if (d > 1e-300) best = std::min(best, f.offset / d);
    }
    if (!std::isfinite(best))
      throw GeometryError("radial: ray misses all facets (origin not interior)");
    return best;
  }
  if (const auto* e = std::get_if<Ellipsoid>(&rep_))
    return 1.0 / std::sqrt(theta.dot(e->m * theta));
  if (const auto* l = std::get_if<LqBall>(&rep_)) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::pow(std::abs(theta[i]), l->q);
    return l->radius / std::pow(s, 1.0 / l->q);
  }
  const auto& mesh = std::get<StarMesh>(rep_);
  const Facet* f = locate_mesh_facet(mesh.vertices, mesh.facets, theta);
  if (f == nullptr) throw GeometryError("radial: mesh lookup failed");
  const double d = theta.dot(f->normal);
  if (!(d > 0.0)) throw GeometryError("radial: mesh facet not radially visible");
  return f->offset / d;
}

double StarBody::gauge(const Eigen::VectorXd& y) const {
  const double nrm = y.norm();
  if (nrm == 0.0) return 0.0;
  return nrm / radial(y / nrm);
}

std::pair<Eigen::VectorXd, bool> StarBody::gauge_gradient(
    const Eigen::VectorXd& theta) const {
  if (const auto* e = std::get_if<Ellipsoid>(&rep_)) {
    const Eigen::VectorXd mt = e->m * theta;
    return {mt / std::sqrt(theta.dot(mt)), false};
  }
  if (const auto* l = std::get_if<LqBall>(&rep_)) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::pow(std::abs(theta[i]), l->q);
    const double norm_q = std::pow(s, 1.0 / l->q);
    Eigen::VectorXd g(n_);
    for (int i = 0; i < n_; ++i) {
      const double t = theta[i];
      g[i] = (t == 0.0 ? 0.0
                       : (t > 0 ? 1.0 : -1.0) * std::pow(std::abs(t), l->q - 1.0));
    }
    g /= l->radius * std::pow(norm_q, l->q - 1.0);
    return {g, false};
  }

  // Facet reps: gradient nu/offset of the supporting facet, with a
  // deterministic 1e-9 jitter off ridges.
  auto eval = [&](const Eigen::VectorXd& dir) -> std::pair<Eigen::VectorXd, bool> {
    if (const auto* p = std::get_if<Polytope>(&rep_)) {
      double best = -std::numeric_limits<double>::infinity();
      double second = best;
      const Facet* arg = nullptr;
      for (const auto& f : p->facets) {
        const double v = dir.dot(f.normal) / f.offset;
        if (v > best) {
          second = best;
          best = v;
          arg = &f;
        } else if (v > second) {
          second = v;
        }
      }
      const bool ridge = second > best - 1e-12 * std::abs(best);
      return {arg->normal / arg->offset, ridge};
    }
    const auto& mesh = std::get<StarMesh>(rep_);
    const Facet* f = locate_mesh_facet(mesh.vertices, mesh.facets, dir);
    Eigen::MatrixXd basis(n_, n_);
    for (int j = 0; j < n_; ++j) basis.col(j) = mesh.vertices.col(f->vertex_ids[j]);
    const Eigen::VectorXd coeff = basis.fullPivLu().solve(dir);
    const bool ridge = coeff.minCoeff() < 1e-10;
    return {f->normal / f->offset, ridge};
  };

  auto [g, ridge] = eval(theta);
  if (!ridge) return {g, false};
  Eigen::VectorXd tangent = Eigen::VectorXd::Zero(n_);
  int k = 0;
  theta.cwiseAbs().minCoeff(&k);
  tangent[k] = 1.0;
  tangent -= tangent.dot(theta) * theta;
  if (tangent.norm() < 1e-6) tangent = Eigen::VectorXd::Unit(n_, (k + 1) % n_);
  const Eigen::VectorXd jittered = (theta + 1e-9 * tangent.normalized()).normalized();
  return {eval(jittered).first, true};
}

double StarBody::support(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw InputError("support: dimension mismatch");
  if (const auto* p = std::get_if<Polytope>(&rep_))
    return (p->vertices.transpose() * x).maxCoeff();
  if (const auto* e = std::get_if<Ellipsoid>(&rep_))
    return (e->a.transpose() * x).norm();
  if (const auto* l = std::get_if<LqBall>(&rep_)) {
    if (l->q == 1.0) return l->radius * x.cwiseAbs().maxCoeff();
    const double qc = l->q / (l->q - 1.0);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::pow(std::abs(x[i]), qc);
    return l->radius * std::pow(s, 1.0 / qc);
  }
  throw InputError("support is undefined for star meshes (possibly non-convex)");
}

std::vector<BoundaryElement> StarBody::boundary_elements(int level) const {
  std::vector<BoundaryElement> out;
  auto facet_elements = [&](const std::vector<Facet>& facets) {
    out.reserve(facets.size());
    for (const auto& f : facets)
      out.push_back({f.centroid, f.normal, f.measure, f.offset});
  };
  if (const auto* p = std::get_if<Polytope>(&rep_)) {
    facet_elements(p->facets);
    return out;
  }
  if (const auto* mesh = std::get_if<StarMesh>(&rep_)) {
    facet_elements(mesh->facets);
    return out;
  }
  // Spherical pushforward: z = rho(theta) theta, nu = grad/|grad|,
  // c = 1/|grad|, w = omega * rho^n * |grad|, grad the gauge gradient.
  const SphereRule rule = gauss_rule(n_, level);
  out.reserve(rule.node_count());
  for (int i = 0; i < rule.node_count(); ++i) {
    const Eigen::VectorXd theta = rule.nodes.col(i);
    const double rho = radial(theta);
    const Eigen::VectorXd grad = gauge_gradient(theta).first;
    const double gn = grad.norm();
    if (!(gn > 0.0)) throw GeometryError("boundary_elements: vanishing gauge gradient");
    BoundaryElement el;
    el.point = rho * theta;
    el.normal = grad / gn;
    el.cosine = 1.0 / gn;
    el.weight = rule.weights[i] * std::pow(rho, n_) * gn;
    out.push_back(std::move(el));
  }
  return out;
}

Estimate StarBody::volume(int level) const {
  auto facet_volume = [&](const std::vector<Facet>& facets) {
    std::vector<double> terms(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i)
      terms[i] = facets[i].measure * facets[i].offset;
    return Estimate::exact(pairwise_sum(terms) / n_);
  };
  if (const auto* p = std::get_if<Polytope>(&rep_)) return facet_volume(p->facets);
  if (const auto* mesh = std::get_if<StarMesh>(&rep_)) return facet_volume(mesh->facets);
  return volume_radial(gauss_rule(n_, level));
}

Estimate StarBody::volume_radial(const SphereRule& rule) const {
  Estimate e = integrate_sphere(
      [this](const Eigen::VectorXd& u) { return std::pow(radial(u), n_); }, rule);
  return est_scale(e, 1.0 / n_);
}

StarBody StarBody::linear_image(const LinearMap& map) const {
  if (map.dim() != n_) throw InputError("linear_image: dimension mismatch");
  const Eigen::MatrixXd& phi = map.matrix();
  const Eigen::MatrixXd inv_t = map.inverse().transpose();

  auto map_facets = [&](const std::vector<Facet>& facets) {
    std::vector<Facet> out;
    out.reserve(facets.size());
    for (const auto& f : facets) {
      Facet g;
      const Eigen::VectorXd nu = inv_t * f.normal;
      const double s = nu.norm();
      g.normal = nu / s;
      g.offset = f.offset / s;
      g.measure = f.measure * map.abs_det() * s;
      g.centroid = phi * f.centroid;
      g.vertex_ids = f.vertex_ids;
      out.push_back(std::move(g));
    }
    return out;
  };

  if (const auto* p = std::get_if<Polytope>(&rep_))
    return StarBody(n_, Polytope{phi * p->vertices, map_facets(p->facets)});
  if (const auto* mesh = std::get_if<StarMesh>(&rep_))
    return StarBody(n_, StarMesh{phi * mesh->vertices, map_facets(mesh->facets),
                                 mesh->grid_level});
  if (const auto* e = std::get_if<Ellipsoid>(&rep_)) return ellipsoid(phi * e->a);
  throw InputError("linear_image: l_q balls support no exact linear images");
}

double StarBody::min_radial() const {
  if (const auto* p = std::get_if<Polytope>(&rep_)) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& f : p->facets) mn = std::min(mn, f.offset);
    return mn;
  }
  if (const auto* mesh = std::get_if<StarMesh>(&rep_)) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& f : mesh->facets) mn = std::min(mn, f.offset);
    return mn;
  }
  if (const auto* e = std::get_if<Ellipsoid>(&rep_)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e->m);
    return 1.0 / std::sqrt(es.eigenvalues().maxCoeff());
  }
  const auto& l = std::get<LqBall>(rep_);
  if (l.q >= 2.0) return l.radius;
  return l.radius * std::pow(double(n_), 0.5 - 1.0 / l.q);
}

const std::vector<Facet>& StarBody::facets() const {
  if (const auto* p = std::get_if<Polytope>(&rep_)) return p->facets;
  if (const auto* mesh = std::get_if<StarMesh>(&rep_)) return mesh->facets;
  throw InputError("facets: representation has no facet list");
}

const Eigen::MatrixXd& StarBody::vertices() const {
  if (const auto* p = std::get_if<Polytope>(&rep_)) return p->vertices;
  if (const auto* mesh = std::get_if<StarMesh>(&rep_)) return mesh->vertices;
  throw InputError("vertices: representation has no vertex list");
}

const Eigen::MatrixXd& StarBody::ellipsoid_matrix() const {
  if (const auto* e = std::get_if<Ellipsoid>(&rep_)) return e->a;
  throw InputError("ellipsoid_matrix: not an ellipsoid");
}

std::pair<double, double> StarBody::lq_params() const {
  if (const auto* l = std::get_if<LqBall>(&rep_)) return {l->q, l->radius};
  throw InputError("lq_params: not an l_q ball");
}

}  // namespace affcap
