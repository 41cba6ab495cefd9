// Scalar functionals: integral affine surface area, L_p surface area,
// closed-form ball capacities and the two-sided capacity sandwich.
#pragma once

#include <string>

#include "affcap/projection.hpp"
#include "affcap/qbody.hpp"
#include "affcap/starbody.hpp"
#include "affcap/types.hpp"

namespace affcap {

// Quadrature configuration shared by the functionals: inner sphere rules on
// S^{n-1}, outer rules on S^{nm-1} (product Gauss up to dimension 4, then
// randomized QMC at `qmc_level` with the given seed).
struct QuadConfig {
  int inner_level = 4;
  int outer_level = 4;
  int qmc_level = 2;
  std::uint64_t seed = 7;

  SphereRule outer_rule(int n, int m) const {
    const int d = n * m;
    return d <= 4 ? gauss_rule(d, outer_level) : qmc_rule(d, qmc_level, seed);
  }
};

// Integral affine surface area: (nm V_{nm}(polar projection body))^{-p/(nm)}.
Estimate phi(const StarBody& k, const QBody& q, double p, const QuadConfig& cfg = {});

// L_p surface area: boundary integral of (z . nu)^{1-p}.  Exact for facet
// representations and for balls (analytic), quadrature otherwise.
Estimate sp_surface(const StarBody& k, double p, int inner_level = 4);

// Classical variational p-capacity of the unit ball (closed form).
double cap_p_variational_ball(int n, double p);

// Optimal value ((n-p)/(p-1))^{p-1} of the radial profile energy
// J(g) = int_1^inf |g'|^p s^{n-1} ds; requires 1 < p < n.
double profile_optimal_j(int n, double p);

// Monotone piecewise-linear profile on a geometric grid.
struct Profile {
  Eigen::VectorXd grid;    // s_0 = 1 < ... < s_N = s_max
  Eigen::VectorXd values;  // 1 = g_0 >= ... >= g_N = 0
  double p = 2.0;
};

struct ProfileResult {
  Profile profile;
  double j_value = 0.0;     // discrete minimum, always >= the true optimum
  double tail_bound = 0.0;  // analytic bound on the neglected tail energy
  int iterations = 0;
};

// Minimize the discrete profile energy over monotone profiles with
// g(1) = 1 and g(s_max) = 0 (convex problem; interior stationary point
// polished by projected gradient descent).
ProfileResult profile_optimize_j(int n, double p, int grid_size, double s_max);

// Capacity of the unit ball: n omega_n d_{n,p}(Q) ((n-p)/(p-1))^{p-1} for
// p in (1,n), n omega_n d_{n,1}(Q) at p = 1, and 0 for p >= n.
Estimate cap_ball_closed_form(int n, int m, double p, const QBody& q,
                              const QuadConfig& cfg = {});

// Certified lower bound: cap_ball * (V_n(K)/omega_n)^{(n-p)/n}.
Estimate cap_lower(const StarBody& k, const QBody& q, double p,
                   const QuadConfig& cfg = {});

// Certified upper bound from the radial profile family: J* phi for
// p in (1,n) and phi itself at p = 1 (vanishing shell limit).
Estimate cap_upper(const StarBody& k, const QBody& q, double p,
                   const QuadConfig& cfg = {});

// Upper bound on the classical p-capacity by the same radial family:
// J* S_p(K) for p in (1,n), S_1(K) at p = 1.
Estimate cap_p_upper_radial(const StarBody& k, double p, int inner_level = 4);

struct CapacitySandwich {
  Estimate lower, upper;
  std::string lower_method = "volume lower bound";
  std::string upper_method = "radial-profile upper bound";
};

// Both bounds at once; throws NumericalError if the certified order
// lower <= upper is violated beyond the combined error bars.
CapacitySandwich cap_sandwich(const StarBody& k, const QBody& q, double p,
                              const QuadConfig& cfg = {});

}  // namespace affcap
