#include "affcap/qbody.hpp"

#include <cmath>
#include <random>

namespace affcap {

QBody QBody::segment(double a, double b) {
  if (!(a <= 0.0 && 0.0 <= b) || !(b - a > 0.0))
    throw InputError("segment: need a <= 0 <= b with positive length");
  Eigen::VectorXd lo(1), hi(1);
  lo << a;
  hi << b;
  return QBody(1, Box{std::move(lo), std::move(hi)});
}

QBody QBody::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw InputError("box: lo/hi size mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= 0.0 && 0.0 <= hi[i]) || !(hi[i] - lo[i] > 0.0))
      throw InputError("box: each side must satisfy lo <= 0 <= hi with positive width");
  const int m = static_cast<int>(lo.size());
  return QBody(m, Box{std::move(lo), std::move(hi)});
}

QBody QBody::cube(int m, double half_width) {
  if (m < 1 || !(half_width > 0.0)) throw InputError("cube: bad parameters");
  return box(Eigen::VectorXd::Constant(m, -half_width),
             Eigen::VectorXd::Constant(m, half_width));
}

QBody QBody::polytope(Eigen::MatrixXd vertices) {
  if (vertices.cols() < 2) throw InputError("polytope: need at least two vertices");
  const int m = static_cast<int>(vertices.rows());
  QBody q(m, Polytope{std::move(vertices)});
  q.check_contains_origin();
  return q;
}

QBody QBody::simplex(Eigen::MatrixXd vertices) {
  if (vertices.cols() != vertices.rows() + 1)
    throw InputError("simplex: need m+1 vertices in R^m");
  return polytope(std::move(vertices));
}

QBody QBody::ball(Eigen::VectorXd center, double radius) {
  if (!(radius > 0.0)) throw InputError("ball: radius must be positive");
  const int m = static_cast<int>(center.size());
  if (center.norm() > radius)
    throw InputError("ball: origin must lie in the ball");
  return QBody(m, Ball{std::move(center), radius});
}

QBody QBody::tau_segment(double tau, double p) {
  if (std::abs(tau) > 1.0) throw InputError("tau_segment: |tau| <= 1 required");
  if (!(p >= 1.0)) throw InputError("tau_segment: p >= 1 required");
  const double a = -std::pow(0.5 * (1.0 - tau), 1.0 / p);
  const double b = std::pow(0.5 * (1.0 + tau), 1.0 / p);
  return segment(a, b);
}

double QBody::support(const Eigen::VectorXd& x) const {
  if (x.size() != m_) throw InputError("support: direction dimension mismatch");
  struct Visitor {
    const Eigen::VectorXd& x;
    double operator()(const Polytope& p) const {
      return (p.vertices.transpose() * x).maxCoeff();
    }
    double operator()(const Box& b) const {
      double s = 0.0;
      for (int i = 0; i < x.size(); ++i)
        s += std::max(b.lo[i] * x[i], b.hi[i] * x[i]);
      return s;
    }
    double operator()(const Ball& b) const {
      return b.center.dot(x) + b.radius * x.norm();
    }
    double operator()(const LpSum& s) const {
      const double h1 = s.q1->support(x);
      const double h2 = s.q2->support(x);
      if (s.p == 1.0) return s.lambda * h1 + (1.0 - s.lambda) * h2;
      return std::pow(s.lambda * std::pow(h1, s.p) + (1.0 - s.lambda) * std::pow(h2, s.p),
                      1.0 / s.p);
    }
    double operator()(const Negated& n) const { return n.q->support(-x); }
    double operator()(const Scaled& s) const { return s.factor * s.q->support(x); }
  };
  return std::visit(Visitor{x}, rep_);
}

void QBody::check_contains_origin() const {
  // Sampled check: h >= 0 everywhere and positive two-sided width.
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 256; ++trial) {
    Eigen::VectorXd x(m_);
    for (int i = 0; i < m_; ++i) x[i] = nd(gen);
    const double nrm = x.norm();
    if (nrm < 1e-12) continue;
    x /= nrm;
    const double hp = support(x);
    const double hm = support(-x);
    if (hp < -1e-12 || hm < -1e-12)
      throw GeometryError("q body does not contain the origin");
    if (!(hp + hm > 1e-12))
      throw GeometryError("q body is degenerate (zero width direction)");
  }
}

QBody lp_sum(const QBody& q1, const QBody& q2, double lambda, double p) {
  if (q1.dim() != q2.dim()) throw InputError("lp_sum: dimension mismatch");
  if (!(p >= 1.0)) throw InputError("lp_sum: p >= 1 required");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("lp_sum: lambda in [0,1]");
  return QBody(q1.dim(),
               QBody::LpSum{std::make_shared<QBody>(q1), std::make_shared<QBody>(q2),
                            lambda, p});
}

QBody negate(const QBody& q) {
  return QBody(q.dim(), QBody::Negated{std::make_shared<QBody>(q)});
}

QBody scale(const QBody& q, double factor) {
  if (!(factor > 0.0)) throw InputError("scale: factor must be positive");
  return QBody(q.dim(), QBody::Scaled{std::make_shared<QBody>(q), factor});
}

}  // namespace affcap
