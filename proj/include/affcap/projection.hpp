// The projection body of a star body K with respect to Q: support oracle in
// n x m matrix space, its polar volume, and the ball constant d_{n,p}(Q).
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "affcap/qbody.hpp"
#include "affcap/quadrature.hpp"
#include "affcap/starbody.hpp"
#include "affcap/types.hpp"

namespace affcap {

// A point of S^{nm-1} stored as an n x m matrix of unit Frobenius norm.
// The flat <-> matrix identification is column-major throughout.
struct MatrixDirection {
  Eigen::MatrixXd u;

  MatrixDirection(Eigen::MatrixXd m);
  static MatrixDirection from_flat(const Eigen::VectorXd& flat, int n, int m);
  Eigen::VectorXd flat() const;
};

inline Eigen::MatrixXd reshape_direction(const Eigen::VectorXd& flat, int n, int m) {
  return Eigen::Map<const Eigen::MatrixXd>(flat.data(), n, m);
}

// Support oracle of the projection body: the p-th root of the boundary sum
// of h_Q(nu^T x)^p (z . nu)^{1-p}.  Exact for facet representations,
// spherical quadrature at `inner_level` otherwise (a coarser element set is
// kept for two-level error estimates).
class ProjectionBody {
 public:
  ProjectionBody(const StarBody& k, QBody q, double p, int inner_level = 4);

  int n() const { return n_; }
  int m() const { return m_; }
  double p() const { return p_; }
  bool exact() const { return coarse_.empty(); }

  double support(const Eigen::MatrixXd& x) const;
  double support_flat(const Eigen::VectorXd& flat) const;
  // Value with the inner-quadrature error bound (zero on exact paths).
  Estimate support_estimate(const Eigen::MatrixXd& x) const;
  double support_coarse_flat(const Eigen::VectorXd& flat) const;

 private:
  double support_on(const std::vector<BoundaryElement>& els,
                    const Eigen::MatrixXd& x) const;

  int n_ = 0, m_ = 0;
  double p_ = 1.0;
  QBody q_;
  std::vector<BoundaryElement> elements_, coarse_;
};

double h_projection(const StarBody& k, const QBody& q, double p,
                    const Eigen::MatrixXd& u, int inner_level = 4);

// Same support value through the radial route: the p-th root of
// n * int_K h_Q((grad gauge)^T x)^p dy, reduced to a sphere integral of
// h_Q(grad^T x)^p rho^n.  Ridge nodes are jittered and counted.
Estimate h_projection_radial(const StarBody& k, const QBody& q, double p,
                             const Eigen::MatrixXd& x, const SphereRule& rule);

// Volume of the polar of the projection body via the negative power moment
// of its support over S^{nm-1}; inner and outer quadrature errors combined.
Estimate polar_volume_projection(const ProjectionBody& pb, const SphereRule& outer);

// (n omega_n)^{-1} (nm V_{nm}(polar proj body of the unit ball))^{-p/(nm)}.
Estimate d_np(const QBody& q, int n, double p, const SphereRule& outer,
              int inner_level = 4);

// Outer-sphere rule on S^{nm-1} matching the project defaults (product
// Gauss when nm <= 4, randomized QMC beyond).
SphereRule default_outer_rule(int n, int m, int level, std::uint64_t seed);

}  // namespace affcap
