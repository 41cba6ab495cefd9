// Property harness and independent oracles: exact polygon pipeline, shell
// energies, and randomized invariance suites with seeded reproducibility.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "affcap/functionals.hpp"

namespace affcap {

// Exact value of the integral affine surface area for a convex polygon K
// (n = 2) with segment Q = [a,b] and p = 1: the projection body is built
// vertex-by-vertex from the piecewise-linear support sum, its polar polygon
// is intersected exactly, and the value is (2 Area)^{-1/2}.
double oracle_polygon_phi(const StarBody& k, double a, double b);

// One element of the Steiner decomposition of {0 < dist(x,K) < eps}: the
// outward direction of the nearest boundary point and the measure it
// carries.  Weights sum to the exact shell volume.
struct ShellElement {
  Eigen::VectorXd normal;
  double weight = 0.0;
};

std::vector<ShellElement> shell_elements(const StarBody& k, double eps, int level);

// Finite-thickness shell energy at p = 1 for convex K (ball, ellipsoid or
// polytope): the outer-sphere functional of the shell integral of
// h_Q(grad f_eps^T u) with f_eps the linear ramp of width eps.  Decreases
// to phi as eps -> 0.
Estimate shell_energy(const StarBody& k, const QBody& q, double eps,
                      const QuadConfig& cfg = {});

std::vector<Estimate> shell_energy_convergence(const StarBody& k, const QBody& q,
                                               const std::vector<double>& eps_list,
                                               const QuadConfig& cfg = {});

struct PropertyReport {
  std::string name;
  int fixtures = 0;
  double max_violation = 0.0;  // positive = violated (tolerance already subtracted)
  std::uint64_t seed = 0;
  bool pass = false;
  std::string worst_fixture;
  std::vector<std::string> diagnostics;
};

// Registered property names accepted by check_property.
const std::vector<std::string>& property_names();

// Run one named randomized property suite; deterministic given the seed.
PropertyReport check_property(const std::string& name, int trials,
                              std::uint64_t seed, const QuadConfig& cfg = {});

// Seeded fixture generators shared by the suites and the acceptance tests.
StarBody random_polytope(int n, std::mt19937_64& gen);
StarBody random_ellipsoid(int n, std::mt19937_64& gen);
QBody random_qbody(int m, std::mt19937_64& gen);
LinearMap random_linear_map(int n, std::mt19937_64& gen);
Eigen::MatrixXd random_direction(int n, int m, std::mt19937_64& gen);

}  // namespace affcap
