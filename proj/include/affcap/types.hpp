// Common scalar types, error taxonomy and dimensional constants.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace affcap {

inline constexpr const char* kVersion = "0.1.0";

// Invalid user input (dimension mismatch, bad parameter range, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometric precondition violated (origin not interior, degenerate facet, ...).
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical process failed (non-convergence, invalid intermediate value).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integrand returned a non-finite or out-of-domain value at a quadrature node.
struct IntegrandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical value with an attached error bound and provenance metadata.
// `err` is a standard error for stochastic rules and a two-level difference
// heuristic for deterministic rules.  Independent estimates combine their
// errors in quadrature.
struct Estimate {
  double value = 0.0;
  double err = 0.0;
  std::int64_t nodes_used = 0;
  std::uint64_t seed = 0;
  int jittered_nodes = 0;  // nodes perturbed off gauge-gradient ridges

  static Estimate exact(double v) { return Estimate{v, 0.0, 0, 0, 0}; }
};

inline Estimate est_add(const Estimate& a, const Estimate& b) {
  return {a.value + b.value, std::hypot(a.err, b.err),
          a.nodes_used + b.nodes_used, a.seed, a.jittered_nodes + b.jittered_nodes};
}

inline Estimate est_sub(const Estimate& a, const Estimate& b) {
  return {a.value - b.value, std::hypot(a.err, b.err),
          a.nodes_used + b.nodes_used, a.seed, a.jittered_nodes + b.jittered_nodes};
}

inline Estimate est_scale(const Estimate& a, double c) {
  return {c * a.value, std::abs(c) * a.err, a.nodes_used, a.seed, a.jittered_nodes};
}

inline Estimate est_mul(const Estimate& a, const Estimate& b) {
  const double v = a.value * b.value;
  const double rel = std::hypot(a.value != 0 ? a.err / a.value : 0.0,
                                b.value != 0 ? b.err / b.value : 0.0);
  return {v, std::abs(v) * rel, a.nodes_used + b.nodes_used, a.seed,
          a.jittered_nodes + b.jittered_nodes};
}

// First-order error propagation through x -> x^t (requires value > 0).
inline Estimate est_pow(const Estimate& a, double t) {
  const double v = std::pow(a.value, t);
  const double rel = a.value > 0 ? a.err / a.value : 0.0;
  return {v, std::abs(v * t) * rel, a.nodes_used, a.seed, a.jittered_nodes};
}

// Volume of the unit Euclidean ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Surface measure of the unit sphere S^{d-1}, i.e. d * omega_d.
inline double sphere_surface(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace affcap
