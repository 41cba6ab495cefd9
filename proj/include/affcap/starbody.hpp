// Star bodies K in R^n: polytopes, ellipsoids, l_q balls and radial tables,
// with radial/gauge oracles, boundary decompositions and exact volumes.
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

#include "affcap/quadrature.hpp"
#include "affcap/types.hpp"

namespace affcap {

// One piece of a boundary decomposition: a point z on the boundary with its
// outward unit normal nu, an (n-1)-measure weight w and the cosine
// c = z . nu > 0.  Sum of w*c/n over a full decomposition is the volume.
struct BoundaryElement {
  Eigen::VectorXd point;
  Eigen::VectorXd normal;
  double weight = 0.0;
  double cosine = 0.0;
};

// Invertible linear map with cached inverse and |det|.
class LinearMap {
 public:
  explicit LinearMap(Eigen::MatrixXd phi);
  static LinearMap identity(int n);

  const Eigen::MatrixXd& matrix() const { return phi_; }
  const Eigen::MatrixXd& inverse() const { return inv_; }
  double abs_det() const { return abs_det_; }
  int dim() const { return static_cast<int>(phi_.rows()); }

 private:
  Eigen::MatrixXd phi_, inv_;
  double abs_det_ = 0.0;
};

struct Facet {
  Eigen::VectorXd normal;    // unit outward
  double measure = 0.0;      // (n-1)-measure
  double offset = 0.0;       // support value h(normal) = z . normal on the facet
  Eigen::VectorXd centroid;
  Eigen::VectorXi vertex_ids;  // defining vertices when known (hull-built reps)
};

enum class StarRep { Polytope, Ellipsoid, LqBall, StarMesh };

// Star body about the origin.  Convex polytopes and star meshes carry an
// explicit facet list (exact paths); ellipsoids and l_q balls are analytic.
class StarBody {
 public:
  static StarBody cube(int n, double half_width);
  static StarBody ball(int n, double radius);
  static StarBody ellipsoid(Eigen::MatrixXd a);       // K = A . B_2^n, A invertible
  static StarBody simplex(Eigen::MatrixXd vertices);  // n x (n+1)
  static StarBody polytope_hull(Eigen::MatrixXd points);  // n in {2,3}
  static StarBody lq_ball(int n, double q, double radius);
  // Piecewise-linear star interpolant of the sampled radial values on the
  // builtin grid (uniform angles for n=2, subdivided icosahedron for n=3).
  static StarBody radial_table(int n, int grid_level, Eigen::VectorXd values);
  static Eigen::MatrixXd radial_grid(int n, int grid_level);  // n x N directions

  int dim() const { return n_; }
  StarRep rep() const;
  bool is_ball() const;

  double radial(const Eigen::VectorXd& theta) const;  // |theta| = 1
  double gauge(const Eigen::VectorXd& y) const;       // 1/radial, gauge(0) = 0
  // Gradient of the gauge, constant along rays; second value reports
  // whether the node sat on a ridge and had to be jittered.
  std::pair<Eigen::VectorXd, bool> gauge_gradient(const Eigen::VectorXd& theta) const;
  // Support function; exact for polytopes/ellipsoids/l_q balls, defined for
  // convex representations only.
  double support(const Eigen::VectorXd& x) const;

  // Exact one-element-per-facet decomposition for polytopal reps; spherical
  // pushforward of a product-Gauss rule at `level` for analytic reps.
  std::vector<BoundaryElement> boundary_elements(int level) const;

  // Volume: exact facet formula for polytopal reps, radial quadrature with
  // an error bound otherwise.
  Estimate volume(int level) const;
  // Radial-integral volume (1/n) * int rho^n, for cross-checks.
  Estimate volume_radial(const SphereRule& rule) const;

  StarBody linear_image(const LinearMap& map) const;

  double min_radial() const;  // distance from o to the boundary (lower bound)

  // Representation access for specialised integrators.
  const std::vector<Facet>& facets() const;
  const Eigen::MatrixXd& vertices() const;
  const Eigen::MatrixXd& ellipsoid_matrix() const;  // A
  std::pair<double, double> lq_params() const;      // (q, radius)

 private:
  struct Polytope {
    Eigen::MatrixXd vertices;  // n x V
    std::vector<Facet> facets;
  };
  struct Ellipsoid {
    Eigen::MatrixXd a;     // K = a . B
    Eigen::MatrixXd m;     // a^{-T} a^{-1}
    double abs_det;
    bool isotropic;        // a = r I
    double radius;         // valid when isotropic
  };
  struct LqBall {
    double q;
    double radius;
  };
  struct StarMesh {
    Eigen::MatrixXd vertices;  // n x V, radial samples rho_i * theta_i
    std::vector<Facet> facets;
    int grid_level;
  };
  using Rep = std::variant<Polytope, Ellipsoid, LqBall, StarMesh>;

  StarBody(int n, Rep rep) : n_(n), rep_(std::move(rep)) {}
  static StarBody from_facet_mesh(int n, Eigen::MatrixXd vertices,
                                  std::vector<Facet> facets, bool convex,
                                  int grid_level);

  int n_ = 0;
  Rep rep_;
};

// Facet list of the convex hull of a point cloud (n = 2: ordered edges,
// n = 3: outward triangles).
std::vector<int> convex_hull_2d(const Eigen::MatrixXd& pts);
std::vector<std::array<int, 3>> convex_hull_3d(const Eigen::MatrixXd& pts);

}  // namespace affcap
