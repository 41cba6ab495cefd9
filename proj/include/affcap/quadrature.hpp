// Quadrature and Monte Carlo integration on unit spheres S^{d-1}.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "affcap/types.hpp"

namespace affcap {

enum class RuleKind { ProductGauss, MonteCarlo, RandomizedQmc };

// Nodes/weights on S^{d-1}.  Weights are positive and sum to the surface
// measure of the sphere.  Stochastic rules are antithetic (nodes come in
// +/- pairs) and carry replicate structure for error estimation.
struct SphereRule {
  int dim = 0;
  RuleKind kind = RuleKind::ProductGauss;
  int level = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd nodes;    // dim x N, unit columns
  Eigen::VectorXd weights;  // N, positive
  int replicates = 1;       // contiguous equal blocks of nodes

  std::int64_t node_count() const { return nodes.cols(); }
};

// Deterministic product rule; supported for d in {2,3,4}.
SphereRule gauss_rule(int d, int level);

// Plain Monte Carlo from normalized Gaussian samples, antithetic pairs.
SphereRule mc_rule(int d, int level, std::uint64_t seed);

// Randomized (shifted) Halton sequence mapped through the inverse normal
// CDF and normalized; three independent replicates furnish the error bar.
SphereRule qmc_rule(int d, int level, std::uint64_t seed);

// Product Gauss for d <= 4, randomized QMC beyond.
SphereRule sphere_rule(int d, int level, std::uint64_t seed = 0);

// Same-kind rule one level coarser, used for two-level error estimates.
SphereRule coarser_rule(const SphereRule& rule);

using SphereFn = std::function<double(const Eigen::VectorXd&)>;

// Plain weighted sum over the rule nodes with the fixed pairwise reduction
// tree; no error estimate.  Throws IntegrandError on non-finite values.
double integrate_nodes(const SphereFn& f, const SphereRule& rule);

// Integral of f over S^{d-1} with an error bound: two-level difference for
// deterministic rules, pair/replicate standard error for stochastic ones.
Estimate integrate_sphere(const SphereFn& f, const SphereRule& rule);

// (1/d) * integral of h^{-d}: the volume of the polar body of the convex
// body with support function h.  h must exceed the positivity floor at
// every node; violations raise IntegrandError naming the node.
Estimate neg_power_moment(const SphereFn& h, int d, const SphereRule& rule);

inline constexpr double kPositivityFloor = 1e-12;

// Deterministic pairwise summation (result independent of thread count).
double pairwise_sum(const std::vector<double>& x);

// Worker cap for node evaluation; 0 restores the hardware default.
void set_max_threads(int n);
int max_threads();

// Evaluate fn(i) for i in [0, n) into a vector, possibly in parallel.
std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn);

namespace detail {
// Inverse of the standard normal CDF, accurate to ~1e-15 after polishing.
double inverse_normal_cdf(double p);
// b-ary radical inverse of index i (Halton component).
double radical_inverse(std::uint64_t i, int base);
}  // namespace detail

}  // namespace affcap
