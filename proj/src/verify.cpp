#include "affcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace affcap {

// ---------------------------------------------------------------------------
// Exact polygon pipeline (n = 2, m = 1, p = 1).

double oracle_polygon_phi(const StarBody& k, double a, double b) {
  if (k.dim() != 2 || k.rep() != StarRep::Polytope)
    throw InputError("oracle_polygon_phi: needs a convex polygon");
  if (!(a <= 0.0 && 0.0 <= b && b - a > 0.0))
    throw InputError("oracle_polygon_phi: segment must satisfy a <= 0 <= b");
  const auto& facets = k.facets();

  // The support sum is piecewise linear in u; it switches gradient exactly
  // where some facet normal is orthogonal to u.
  std::vector<double> breaks;
  for (const auto& f : facets) {
    const double phi_n = std::atan2(f.normal[1], f.normal[0]);
    for (double d : {phi_n + M_PI_2, phi_n - M_PI_2}) {
      double ang = std::fmod(d, 2.0 * M_PI);
      if (ang < 0) ang += 2.0 * M_PI;
      breaks.push_back(ang);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> sectors;
  for (double ang : breaks)
    if (sectors.empty() || ang - sectors.back() > 1e-12) sectors.push_back(ang);
  if (sectors.size() >= 2 && sectors.front() + 2.0 * M_PI - sectors.back() <= 1e-12)
    sectors.pop_back();
  if (sectors.size() < 3) throw NumericalError("oracle_polygon_phi: degenerate fan");

  // One projection-body vertex per sector: the gradient of the support sum.
  std::vector<Eigen::Vector2d> verts;
  double scale = 0.0;
  for (std::size_t j = 0; j < sectors.size(); ++j) {
    const double a0 = sectors[j];
    const double a1 = j + 1 < sectors.size() ? sectors[j + 1] : sectors[0] + 2.0 * M_PI;
    const double amid = 0.5 * (a0 + a1);
    const Eigen::Vector2d u(std::cos(amid), std::sin(amid));
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (const auto& f : facets)
      g += f.measure * (f.normal.dot(u) > 0 ? b : a) * f.normal;
    verts.push_back(g);
    scale = std::max(scale, g.norm());
  }
  for (std::size_t j = 0; j < verts.size(); ++j) {
    const Eigen::Vector2d d = verts[(j + 1) % verts.size()] - verts[j];
    if (d.norm() <= 1e-12 * scale)
      throw NumericalError("oracle_polygon_phi: degenerate projection-body edge");
  }

  // Exact polar polygon: consecutive support constraints x . v_j = 1.
  std::vector<Eigen::Vector2d> polar;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    const Eigen::Vector2d v1 = verts[j];
    const Eigen::Vector2d v2 = verts[(j + 1) % verts.size()];
    const double det = v1.x() * v2.y() - v1.y() * v2.x();
    if (std::abs(det) <= 1e-12 * scale * scale)
      throw NumericalError("oracle_polygon_phi: degenerate polar corner");
    polar.emplace_back((v2.y() - v1.y()) / det, (v1.x() - v2.x()) / det);
  }
  double area2 = 0.0;  // twice the signed area
  for (std::size_t j = 0; j < polar.size(); ++j) {
    const auto& p1 = polar[j];
    const auto& p2 = polar[(j + 1) % polar.size()];
    area2 += p1.x() * p2.y() - p2.x() * p1.y();
  }
  const double area = 0.5 * area2;
  if (!(area > 0.0)) throw NumericalError("oracle_polygon_phi: polar area not positive");
  return 1.0 / std::sqrt(2.0 * area);
}

// ---------------------------------------------------------------------------
// Shell energies.

namespace {

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  // Nodes/weights on [0,1] from the S^2 rule machinery would drag in more
  // than needed; a fixed 8-point rule is plenty for the smooth arc factors.
  static const double gx[] = {-0.9602898564975363, -0.7966664774136267,
                              -0.5255324099163290, -0.1834346424956498,
                              0.1834346424956498,  0.5255324099163290,
                              0.7966664774136267,  0.9602898564975363};
  static const double gw[] = {0.1012285362903763, 0.2223810344533745,
                              0.3137066458778873, 0.3626837833783620,
                              0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};
  (void)n;
  x.assign(gx, gx + 8);
  w.assign(gw, gw + 8);
}

}  // namespace

std::vector<ShellElement> shell_elements(const StarBody& k, double eps, int level) {
  const int n = k.dim();
  std::vector<ShellElement> out;
  const StarRep rep = k.rep();

  if (rep == StarRep::Ellipsoid) {
    // Support parametrization x = grad h(nu) + t nu; the slab density is
    // det over the tangent space of (hess h + t I), a polynomial in t.
    const Eigen::MatrixXd& a = k.ellipsoid_matrix();
    const Eigen::MatrixXd m = a * a.transpose();
    const SphereRule rule = gauss_rule(n, level);
    for (int i = 0; i < rule.node_count(); ++i) {
      const Eigen::VectorXd nu = rule.nodes.col(i);
      const Eigen::VectorXd mn = m * nu;
      const double h = std::sqrt(nu.dot(mn));
      const Eigen::MatrixXd hess = m / h - mn * mn.transpose() / (h * h * h);
      double w = 0.0;
      if (n == 2) {
        const double e1 = hess.trace();
        w = e1 * eps + 0.5 * eps * eps;
      } else if (n == 3) {
        const double e1 = hess.trace();
        const double e2 = 0.5 * (e1 * e1 - (hess * hess).trace());
        w = e2 * eps + 0.5 * e1 * eps * eps + eps * eps * eps / 3.0;
      } else {
        throw InputError("shell_elements: ellipsoid shells need n in {2,3}");
      }
      out.push_back({nu, rule.weights[i] * w});
    }
    return out;
  }

  if (rep != StarRep::Polytope)
    throw InputError("shell_elements: supported for balls, ellipsoids and polytopes");
  const auto& facets = k.facets();

  if (n == 2) {
    for (const auto& f : facets) out.push_back({f.normal, f.measure * eps});
    // Vertex sectors jointly sweep the full circle of directions.
    const SphereRule rule = gauss_rule(2, level);
    for (int i = 0; i < rule.node_count(); ++i)
      out.push_back({rule.nodes.col(i), rule.weights[i] * 0.5 * eps * eps});
    return out;
  }
  if (n != 3) throw InputError("shell_elements: polytope shells need n in {2,3}");

  for (const auto& f : facets) out.push_back({f.normal, f.measure * eps});

  // Edge wedges: cylindrical sectors between adjacent facet normals.
  std::map<std::pair<int, int>, std::vector<int>> edge_map;
  for (std::size_t fi = 0; fi < facets.size(); ++fi) {
    const auto& ids = facets[fi].vertex_ids;
    if (ids.size() != 3)
      throw InputError("shell_elements: polytope lacks triangle adjacency");
    for (int e = 0; e < 3; ++e) {
      const auto key = std::minmax(ids[e], ids[(e + 1) % 3]);
      edge_map[key].push_back(static_cast<int>(fi));
    }
  }
  std::vector<double> gx, gw;
  gauss_legendre_01(8, gx, gw);
  const Eigen::MatrixXd& verts = k.vertices();
  for (const auto& [key, fs] : edge_map) {
    if (fs.size() != 2) throw GeometryError("shell_elements: open polytope edge");
    const Eigen::Vector3d nu1 = facets[fs[0]].normal;
    const Eigen::Vector3d nu2 = facets[fs[1]].normal;
    const double ang = std::atan2(nu1.cross(nu2).norm(), nu1.dot(nu2));
    if (ang < 1e-12) continue;  // coplanar triangulation edge
    const double len = (verts.col(key.first) - verts.col(key.second)).norm();
    for (std::size_t g = 0; g < gx.size(); ++g) {
      const double al = ang * 0.5 * (gx[g] + 1.0);
      const Eigen::Vector3d nu =
          (std::sin(ang - al) * nu1 + std::sin(al) * nu2) / std::sin(ang);
      out.push_back({nu.normalized(), len * 0.5 * eps * eps * gw[g] * 0.5 * ang});
    }
  }

  // Vertex cones tile the whole direction sphere up to measure zero, and
  // the integrand depends only on the direction.
  const SphereRule rule = gauss_rule(3, level);
  for (int i = 0; i < rule.node_count(); ++i)
    out.push_back({rule.nodes.col(i), rule.weights[i] * eps * eps * eps / 3.0});
  return out;
}

Estimate shell_energy(const StarBody& k, const QBody& q, double eps,
                      const QuadConfig& cfg) {
  if (!(eps > 0.0)) throw InputError("shell_energy: eps must be positive");
  const int n = k.dim();
  const int m = q.dim();
  const std::vector<ShellElement> els = shell_elements(k, eps, cfg.inner_level);
  const SphereRule outer = cfg.outer_rule(n, m);
  const int nm = n * m;
  auto inner = [&](const Eigen::VectorXd& flat) {
    const Eigen::MatrixXd x = reshape_direction(flat, n, m);
    std::vector<double> terms(els.size());
    for (std::size_t i = 0; i < els.size(); ++i)
      terms[i] = els[i].weight * q.support(-(x.transpose() * els[i].normal));
    return pairwise_sum(terms) / eps;
  };
  Estimate e = neg_power_moment(inner, nm, outer);
  e = est_pow(est_scale(e, double(nm)), -1.0 / nm);
  e.seed = outer.seed;
  return e;
}

std::vector<Estimate> shell_energy_convergence(const StarBody& k, const QBody& q,
                                               const std::vector<double>& eps_list,
                                               const QuadConfig& cfg) {
  std::vector<Estimate> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) out.push_back(shell_energy(k, q, eps, cfg));
  return out;
}

// ---------------------------------------------------------------------------
// Fixture generators.

namespace {

double log_uniform(std::mt19937_64& gen, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(gen));
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = nd(gen);
  return m;
}

}  // namespace

StarBody random_polytope(int n, std::mt19937_64& gen) {
  if (n != 2 && n != 3) throw InputError("random_polytope: n in {2,3}");
  std::uniform_int_distribution<int> cnt(n == 2 ? 8 : 12, n == 2 ? 16 : 24);
  for (int attempt = 0; attempt < 400; ++attempt) {
    const Eigen::MatrixXd pts = gaussian_matrix(n, cnt(gen), gen);
    try {
      StarBody body = StarBody::polytope_hull(pts);
      if (body.min_radial() >= 0.05) return body;
    } catch (const GeometryError&) {
      // origin outside the hull; resample
    }
  }
  throw NumericalError("random_polytope: rejection sampling failed");
}

StarBody random_ellipsoid(int n, std::mt19937_64& gen) {
  const Eigen::MatrixXd g1 = gaussian_matrix(n, n, gen);
  const Eigen::MatrixXd g2 = gaussian_matrix(n, n, gen);
  const Eigen::HouseholderQR<Eigen::MatrixXd> q1(g1), q2(g2);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = log_uniform(gen, 0.4, 1.8);
  const Eigen::MatrixXd a = Eigen::MatrixXd(q1.householderQ()) * s.asDiagonal() *
                            Eigen::MatrixXd(q2.householderQ()).transpose();
  return StarBody::ellipsoid(a);
}

QBody random_qbody(int m, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (m == 1) {
    const double pick = u01(gen);
    const double len1 = log_uniform(gen, 0.1, 2.0);
    const double len2 = log_uniform(gen, 0.1, 2.0);
    if (pick < 0.2) return QBody::segment(0.0, len1);       // o on the boundary
    if (pick < 0.4) return QBody::segment(-len1, 0.0);
    return QBody::segment(-len1, len2);
  }
  const double pick = u01(gen);
  if (pick < 0.45) {
    Eigen::VectorXd lo(m), hi(m);
    for (int i = 0; i < m; ++i) {
      lo[i] = u01(gen) < 0.2 ? 0.0 : -log_uniform(gen, 0.1, 1.5);
      hi[i] = log_uniform(gen, 0.1, 1.5);
    }
    return QBody::box(lo, hi);
  }
  if (pick < 0.65) return QBody::cube(m, log_uniform(gen, 0.2, 1.2));
  for (int attempt = 0; attempt < 500; ++attempt) {
    const Eigen::MatrixXd v = gaussian_matrix(m, m + 1, gen);
    Eigen::MatrixXd span(m, m);
    for (int j = 0; j < m; ++j) span.col(j) = v.col(j + 1) - v.col(0);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(span);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd lam = lu.solve(-v.col(0));
    if (lam.minCoeff() > 0.02 && lam.sum() < 0.98) return QBody::simplex(v);
  }
  throw NumericalError("random_qbody: no simplex containing the origin");
}

LinearMap random_linear_map(int n, std::mt19937_64& gen) {
  const Eigen::MatrixXd g = gaussian_matrix(n, n, gen);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = log_uniform(gen, 0.4, 2.0);
  return LinearMap(svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose());
}

Eigen::MatrixXd random_direction(int n, int m, std::mt19937_64& gen) {
  Eigen::MatrixXd u = gaussian_matrix(n, m, gen);
  return u / u.norm();
}

// ---------------------------------------------------------------------------
// Property suites.

namespace {

struct Collector {
  PropertyReport rep;
  explicit Collector(std::string name, std::uint64_t seed) {
    rep.name = std::move(name);
    rep.seed = seed;
    rep.max_violation = -std::numeric_limits<double>::infinity();
  }
  void add(double violation, const std::string& desc) {
    rep.fixtures += 1;
    std::ostringstream os;
    os << "fixture " << rep.fixtures - 1 << ": violation " << violation << " | " << desc;
    rep.diagnostics.push_back(os.str());
    if (violation > rep.max_violation) {
      rep.max_violation = violation;
      rep.worst_fixture = desc;
    }
  }
  PropertyReport finish() {
    rep.pass = rep.fixtures > 0 && rep.max_violation <= 0.0;
    return rep;
  }
};

double quad_tol(const Estimate& a, const Estimate& b) {
  return 3.0 * std::hypot(a.err, b.err) + 1e-6;
}

double pick_cap_p(int t, int n) {
  static const double ps[] = {1.0, 1.5, 2.0};
  const double p = ps[t % 3];
  if (p < n) return p;
  return t % 2 == 0 ? 1.0 : 1.5;
}

StarBody pick_body(int t, int n, std::mt19937_64& gen) {
  return t % 5 < 3 ? random_polytope(n, gen) : random_ellipsoid(n, gen);
}

std::string body_tag(const StarBody& k) {
  switch (k.rep()) {
    case StarRep::Polytope:
      return "polytope";
    case StarRep::Ellipsoid:
      return "ellipsoid";
    case StarRep::LqBall:
      return "lq";
    case StarRep::StarMesh:
      return "mesh";
  }
  return "?";
}

void prop_proj_positivity(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                          Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = random_polytope(n, gen);
    const QBody q = random_qbody(m, gen);
    const ProjectionBody pb(k, q, p, cfg.inner_level);
    double mn = std::numeric_limits<double>::infinity();
    bool finite = true;
    for (int i = 0; i < 1000; ++i) {
      const double h = pb.support(random_direction(n, m, gen));
      finite = finite && std::isfinite(h);
      mn = std::min(mn, h);
    }
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " min_h=" << mn;
    col.add(finite ? kPositivityFloor - mn : 1.0, os.str());
  }
}

void prop_proj_sublinear(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                         Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = random_polytope(n, gen);
    const QBody q = random_qbody(m, gen);
    const ProjectionBody pb(k, q, p, cfg.inner_level);
    std::normal_distribution<double> nd(0.0, 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
      Eigen::MatrixXd x = gaussian_matrix(n, m, gen);
      Eigen::MatrixXd y = gaussian_matrix(n, m, gen);
      const double hx = pb.support(x), hy = pb.support(y), hxy = pb.support(x + y);
      worst = std::max(worst, hxy - hx - hy - 1e-9 * (hx + hy));
    }
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p;
    col.add(worst, os.str());
  }
}

void prop_proj_homog(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                     Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = random_polytope(n, gen);
    const QBody q = random_qbody(m, gen);
    const double a = log_uniform(gen, 0.5, 2.0);
    const double b = log_uniform(gen, 0.5, 2.0);
    const StarBody ka = k.linear_image(LinearMap(a * Eigen::MatrixXd::Identity(n, n)));
    const ProjectionBody pb(k, q, p, cfg.inner_level);
    const ProjectionBody pb_ab(ka, scale(q, b), p, cfg.inner_level);
    const double factor = b * std::pow(a, (n - p) / p);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const Eigen::MatrixXd u = random_direction(n, m, gen);
      const double lhs = pb_ab.support(u);
      const double rhs = factor * pb.support(u);
      worst = std::max(worst, std::abs(lhs - rhs) - 1e-9 * std::abs(rhs));
    }
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " a=" << a << " b=" << b;
    col.add(worst, os.str());
  }
}

void prop_proj_affine(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                      Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = random_polytope(n, gen);
    const QBody q = random_qbody(m, gen);
    const LinearMap map = random_linear_map(n, gen);
    const ProjectionBody pb(k, q, p, cfg.inner_level);
    const ProjectionBody pb_phi(k.linear_image(map), q, p, cfg.inner_level);
    const double det_pow = std::pow(map.abs_det(), 1.0 / p);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const Eigen::MatrixXd u = random_direction(n, m, gen);
      const double lhs = pb_phi.support(u);
      const double rhs = det_pow * pb.support(map.inverse() * u);
      worst = std::max(worst, std::abs(lhs - rhs) - 1e-9 * std::abs(rhs));
    }
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " |det|=" << map.abs_det();
    col.add(worst, os.str());
  }
}

void prop_phi_symmetry(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                       Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = random_polytope(n, gen);
    const QBody q = random_qbody(m, gen);
    const Estimate lhs = phi(k, negate(q), p, cfg);
    const Estimate rhs = phi(k, q, p, cfg);
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " phi=" << rhs.value;
    col.add(std::abs(lhs.value - rhs.value) - quad_tol(lhs, rhs), os.str());
  }
}

void prop_phi_concavity(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                        Collector& col) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = random_polytope(n, gen);
    const QBody q1 = random_qbody(m, gen);
    const QBody q2 = random_qbody(m, gen);
    const double lam = u01(gen);
    const Estimate mix = phi(k, lp_sum(q1, q2, lam, p), p, cfg);
    const Estimate f1 = phi(k, q1, p, cfg);
    const Estimate f2 = phi(k, q2, p, cfg);
    const double rhs = lam * f1.value + (1.0 - lam) * f2.value;
    const double tol = 3.0 * std::hypot(std::hypot(f1.err, f2.err), mix.err) + 1e-6;
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " lam=" << lam;
    col.add(rhs - mix.value - tol, os.str());
  }
}

void prop_phi_affine(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                     Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = pick_body(t, n, gen);
    const QBody q = random_qbody(m, gen);
    const LinearMap map = random_linear_map(n, gen);
    const Estimate lhs = phi(k.linear_image(map), q, p, cfg);
    const Estimate rhs =
        est_scale(phi(k, q, p, cfg), std::pow(map.abs_det(), (n - p) / n));
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " " << body_tag(k)
       << " |det|=" << map.abs_det();
    col.add(std::abs(lhs.value - rhs.value) - quad_tol(lhs, rhs), os.str());
  }
}

void prop_phi_homog(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                    Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    const StarBody k = pick_body(t, n, gen);
    const QBody q = random_qbody(m, gen);
    const double a = log_uniform(gen, 0.5, 2.0);
    const double b = log_uniform(gen, 0.5, 2.0);
    const StarBody ka = k.linear_image(LinearMap(a * Eigen::MatrixXd::Identity(n, n)));
    const Estimate lhs = phi(ka, scale(q, b), p, cfg);
    const Estimate rhs =
        est_scale(phi(k, q, p, cfg), std::pow(b, p) * std::pow(a, n - p));
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " a=" << a << " b=" << b;
    col.add(std::abs(lhs.value - rhs.value) - quad_tol(lhs, rhs), os.str());
  }
}

void prop_sandwich_order(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                         Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, n);
    const StarBody k = pick_body(t, n, gen);
    const QBody q = random_qbody(m, gen);
    const CapacitySandwich s = cap_sandwich(k, q, p, cfg);
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " " << body_tag(k) << " ["
       << s.lower.value << ", " << s.upper.value << "]";
    col.add(s.lower.value - s.upper.value - quad_tol(s.lower, s.upper), os.str());
  }
}

void prop_chain(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, n);
    const StarBody k = pick_body(t, n, gen);
    const QBody q = random_qbody(m, gen);
    const double omega = unit_ball_volume(n);
    const double inv_np = 1.0 / (n - p);

    const Estimate cap_b = cap_ball_closed_form(n, m, p, q, cfg);
    const Estimate phi_b = est_scale(d_np(q, n, p, cfg.outer_rule(n, m), cfg.inner_level),
                                     n * omega);
    const Estimate sp_b = sp_surface(StarBody::ball(n, 1.0), p, cfg.inner_level);

    const Estimate vol = k.volume(cfg.inner_level);
    const Estimate up = cap_upper(k, q, p, cfg);
    const Estimate lo = cap_lower(k, q, p, cfg);
    const Estimate ph = phi(k, q, p, cfg);
    const Estimate sp = sp_surface(k, p, cfg.inner_level);

    const Estimate t1 = est_pow(est_scale(vol, 1.0 / omega), 1.0 / n);
    const Estimate t2u = est_pow(est_mul(up, est_pow(cap_b, -1.0)), inv_np);
    const Estimate t2l = est_pow(est_mul(lo, est_pow(cap_b, -1.0)), inv_np);
    const Estimate t3 = est_pow(est_mul(ph, est_pow(phi_b, -1.0)), inv_np);
    const Estimate t4 = est_pow(est_mul(sp, est_pow(sp_b, -1.0)), inv_np);

    const double v1 = t1.value - t2u.value - quad_tol(t1, t2u);
    const double v2 = t2l.value - t3.value - quad_tol(t2l, t3);
    const double v3 = t3.value - t4.value - quad_tol(t3, t4);
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " " << body_tag(k) << " ratios=("
       << t1.value << "," << t2u.value << "," << t3.value << "," << t4.value << ")";
    col.add(std::max({v1, v2, v3}), os.str());
  }
}

void prop_thm42_bound(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                      Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, n);
    const StarBody k = pick_body(t, n, gen);
    const QBody q = random_qbody(m, gen);
    const Estimate lo = cap_lower(k, q, p, cfg);
    const Estimate d = d_np(q, n, p, cfg.outer_rule(n, m), cfg.inner_level);
    const Estimate up = est_mul(d, cap_p_upper_radial(k, p, cfg.inner_level));
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " " << body_tag(k) << " "
       << lo.value << " <= " << up.value;
    col.add(lo.value - up.value - quad_tol(lo, up), os.str());
  }
}

void prop_dnp_limit_p1(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                       Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const QBody q = t == 0 ? QBody::segment(-0.5, 0.5) : random_qbody(1, gen);
    const int n = 3;
    const SphereRule outer = cfg.outer_rule(n, 1);
    const Estimate d1 = d_np(q, n, 1.0, outer, cfg.inner_level);
    const Estimate dp = d_np(q, n, 1.001, outer, cfg.inner_level);
    const double tol = 0.01 * d1.value + 3.0 * std::hypot(d1.err, dp.err);
    std::ostringstream os;
    os << "d_{3,1.001}=" << dp.value << " d_{3,1}=" << d1.value;
    col.add(std::abs(dp.value - d1.value) - tol, os.str());
  }
}

void prop_nested_consistency(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                             Collector& col) {
  std::uniform_real_distribution<double> shrink(0.3, 0.9);
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, n);
    const StarBody k2 = pick_body(t, n, gen);
    const double c = shrink(gen);
    const StarBody k1 = k2.linear_image(LinearMap(c * Eigen::MatrixXd::Identity(n, n)));
    const QBody q = random_qbody(m, gen);
    const Estimate lo = cap_lower(k1, q, p, cfg);
    const Estimate up = cap_upper(k2, q, p, cfg);
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " shrink=" << c;
    col.add(lo.value - up.value - quad_tol(lo, up), os.str());
  }
}

void prop_two_formula_agreement(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                                Collector& col) {
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const int m = 1 + (t / 2) % 2;
    const double p = pick_cap_p(t, 4);
    StarBody k = [&]() {
      switch (t % 3) {
        case 0:
          return random_polytope(n, gen);
        case 1:
          return random_ellipsoid(n, gen);
        default:
          return StarBody::lq_ball(n, 3.0, log_uniform(gen, 0.5, 1.5));
      }
    }();
    const QBody q = random_qbody(m, gen);
    const ProjectionBody pb(k, q, p, cfg.inner_level);
    const SphereRule rule = gauss_rule(n, cfg.inner_level);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
      const Eigen::MatrixXd u = random_direction(n, m, gen);
      const Estimate direct = pb.support_estimate(u);
      const Estimate radial = h_projection_radial(k, q, p, u, rule);
      worst = std::max(worst,
                       std::abs(direct.value - radial.value) - quad_tol(direct, radial));
    }
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " p=" << p << " " << body_tag(k);
    col.add(worst, os.str());
  }
}

void prop_tau_reduction(int trials, std::mt19937_64& gen, const QuadConfig& cfg,
                        Collector& col) {
  std::uniform_real_distribution<double> taud(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    const double taus[] = {-1.0, 0.0, 0.5};
    const double tau = t < 3 ? taus[t] : taud(gen);
    const double p = t % 2 == 0 ? 1.0 : 2.0;
    const StarBody k = random_polytope(n, gen);

    const Estimate via_q = phi(k, QBody::tau_segment(tau, p), p, cfg);

    // Independent route: the asymmetric weight coded directly into the
    // boundary sum, bypassing the segment support oracle.
    const auto els = k.boundary_elements(cfg.inner_level);
    const SphereRule outer = cfg.outer_rule(n, 1);
    auto support_tau = [&](const Eigen::VectorXd& flat) {
      double s = 0.0;
      for (const auto& el : els) {
        const double dot = el.normal.dot(flat);
        const double w =
            0.5 * (1.0 + tau) * std::pow(std::max(dot, 0.0), p) +
            0.5 * (1.0 - tau) * std::pow(std::max(-dot, 0.0), p);
        s += w * (p == 1.0 ? el.weight : std::pow(el.cosine, 1.0 - p) * el.weight);
      }
      return std::pow(s, 1.0 / p);
    };
    Estimate direct = neg_power_moment(support_tau, n, outer);
    direct = est_pow(est_scale(direct, double(n)), -p / double(n));

    std::ostringstream os;
    os << "n=" << n << " tau=" << tau << " p=" << p << " phi=" << via_q.value;
    col.add(std::abs(via_q.value - direct.value) - quad_tol(via_q, direct), os.str());
  }
}

using PropertyFn = void (*)(int, std::mt19937_64&, const QuadConfig&, Collector&);

const std::vector<std::pair<std::string, PropertyFn>>& property_table() {
  static const std::vector<std::pair<std::string, PropertyFn>> table = {
      {"proj-positivity", prop_proj_positivity},
      {"proj-sublinear", prop_proj_sublinear},
      {"proj-homog", prop_proj_homog},
      {"proj-affine", prop_proj_affine},
      {"phi-symmetry", prop_phi_symmetry},
      {"phi-concavity", prop_phi_concavity},
      {"phi-affine", prop_phi_affine},
      {"phi-homog", prop_phi_homog},
      {"sandwich-order", prop_sandwich_order},
      {"chain", prop_chain},
      {"thm42-bound", prop_thm42_bound},
      {"dnp-limit-p1", prop_dnp_limit_p1},
      {"nested-consistency", prop_nested_consistency},
      {"two-formula-agreement", prop_two_formula_agreement},
      {"tau-reduction", prop_tau_reduction},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : property_table()) out.push_back(name);
    return out;
  }();
  return names;
}

PropertyReport check_property(const std::string& name, int trials,
                              std::uint64_t seed, const QuadConfig& cfg) {
  if (trials < 1) throw InputError("check_property: trials >= 1 required");
  for (const auto& [n, fn] : property_table()) {
    if (n == name) {
      Collector col(name, seed);
      std::mt19937_64 gen(seed);
      fn(trials, gen, cfg, col);
      return col.finish();
    }
  }
  std::ostringstream os;
  os << "unknown property '" << name << "'; valid names:";
  for (const auto& n : property_names()) os << " " << n;
  throw InputError(os.str());
}

}  // namespace affcap
