#include "affcap/projection.hpp"

#include <atomic>
#include <cmath>

namespace affcap {

MatrixDirection::MatrixDirection(Eigen::MatrixXd m) : u(std::move(m)) {
  const double nrm = u.norm();
  if (std::abs(nrm - 1.0) > 1e-12)
    throw InputError("matrix direction must have unit Frobenius norm");
  u /= nrm;
}

MatrixDirection MatrixDirection::from_flat(const Eigen::VectorXd& flat, int n, int m) {
  if (flat.size() != static_cast<Eigen::Index>(n) * m)
    throw InputError("matrix direction: flat size mismatch");
  return MatrixDirection(reshape_direction(flat, n, m));
}

Eigen::VectorXd MatrixDirection::flat() const {
  return Eigen::Map<const Eigen::VectorXd>(u.data(), u.size());
}

ProjectionBody::ProjectionBody(const StarBody& k, QBody q, double p, int inner_level)
    : n_(k.dim()), m_(q.dim()), p_(p), q_(std::move(q)) {
  if (!(p >= 1.0)) throw InputError("projection body: p >= 1 required");
  elements_ = k.boundary_elements(inner_level);
  const StarRep rep = k.rep();
  if (rep == StarRep::Ellipsoid || rep == StarRep::LqBall)
    coarse_ = k.boundary_elements(std::max(0, inner_level - 1));
}

double ProjectionBody::support_on(const std::vector<BoundaryElement>& els,
                                  const Eigen::MatrixXd& x) const {
  std::vector<double> terms(els.size());
  Eigen::VectorXd y(m_);
  for (std::size_t i = 0; i < els.size(); ++i) {
    const BoundaryElement& el = els[i];
    y.noalias() = x.transpose() * el.normal;
    const double hq = q_.support(y);
    double t;
    if (p_ == 1.0) {
      t = hq * el.weight;  // c^0 = 1, degenerate cosines never touched
    } else {
      t = std::pow(hq, p_) * std::pow(el.cosine, 1.0 - p_) * el.weight;
    }
    terms[i] = t;
  }
  const double s = pairwise_sum(terms);
  return p_ == 1.0 ? s : std::pow(s, 1.0 / p_);
}

double ProjectionBody::support(const Eigen::MatrixXd& x) const {
  if (x.rows() != n_ || x.cols() != m_)
    throw InputError("projection support: direction shape mismatch");
  return support_on(elements_, x);
}

double ProjectionBody::support_flat(const Eigen::VectorXd& flat) const {
  return support(reshape_direction(flat, n_, m_));
}

double ProjectionBody::support_coarse_flat(const Eigen::VectorXd& flat) const {
  return support_on(coarse_.empty() ? elements_ : coarse_,
                    reshape_direction(flat, n_, m_));
}

Estimate ProjectionBody::support_estimate(const Eigen::MatrixXd& x) const {
  const double fine = support(x);
  if (coarse_.empty()) return Estimate::exact(fine);
  const double coarse = support_on(coarse_, x);
  Estimate e;
  e.value = fine;
  e.err = std::abs(fine - coarse);
  e.nodes_used = static_cast<std::int64_t>(elements_.size() + coarse_.size());
  return e;
}

double h_projection(const StarBody& k, const QBody& q, double p,
                    const Eigen::MatrixXd& u, int inner_level) {
  return ProjectionBody(k, q, p, inner_level).support(u);
}

Estimate h_projection_radial(const StarBody& k, const QBody& q, double p,
                             const Eigen::MatrixXd& x, const SphereRule& rule) {
  if (!(p >= 1.0)) throw InputError("h_projection_radial: p >= 1 required");
  if (k.rep() == StarRep::StarMesh)
    throw InputError("h_projection_radial: radial route is restricted to "
                     "polytopes, ellipsoids and l_q balls");
  if (x.rows() != k.dim() || x.cols() != q.dim())
    throw InputError("h_projection_radial: direction shape mismatch");
  std::atomic<int> jittered{0};
  const int n = k.dim();
  auto integrand = [&](const Eigen::VectorXd& theta) {
    auto [grad, flagged] = k.gauge_gradient(theta);
    if (flagged) jittered.fetch_add(1, std::memory_order_relaxed);
    const double hq = q.support(x.transpose() * grad);
    const double rho = k.radial(theta);
    return std::pow(hq, p) * std::pow(rho, double(n));
  };
  Estimate e = integrate_sphere(integrand, rule);
  e = est_pow(e, 1.0 / p);
  e.jittered_nodes = jittered.load();
  return e;
}

Estimate polar_volume_projection(const ProjectionBody& pb, const SphereRule& outer) {
  const int d = pb.n() * pb.m();
  if (outer.dim != d)
    throw InputError("polar_volume_projection: outer rule dimension mismatch");
  Estimate e = neg_power_moment(
      [&pb](const Eigen::VectorXd& u) { return pb.support_flat(u); }, d, outer);
  if (!pb.exact()) {
    // Inner-quadrature contribution, measured on a coarse outer rule.
    const SphereRule probe = coarser_rule(outer);
    const Estimate fine = neg_power_moment(
        [&pb](const Eigen::VectorXd& u) { return pb.support_flat(u); }, d, probe);
    const Estimate coarse = neg_power_moment(
        [&pb](const Eigen::VectorXd& u) { return pb.support_coarse_flat(u); }, d, probe);
    e.err = std::hypot(e.err, fine.value - coarse.value);
    e.nodes_used += fine.nodes_used + coarse.nodes_used;
  }
  return e;
}

Estimate d_np(const QBody& q, int n, double p, const SphereRule& outer,
              int inner_level) {
  if (!(p >= 1.0)) throw InputError("d_np: p >= 1 required");
  const StarBody ball = StarBody::ball(n, 1.0);
  const ProjectionBody pb(ball, q, p, inner_level);
  const Estimate vol = polar_volume_projection(pb, outer);
  const int nm = n * q.dim();
  Estimate e = est_pow(est_scale(vol, double(nm)), -p / double(nm));
  e = est_scale(e, 1.0 / (n * unit_ball_volume(n)));
  e.seed = outer.seed;
  return e;
}

SphereRule default_outer_rule(int n, int m, int level, std::uint64_t seed) {
  return sphere_rule(n * m, level, seed);
}

}  // namespace affcap
