// Convex bodies Q in R^m containing the origin, given by support oracles.
#pragma once

#include <Eigen/Dense>
#include <memory>
#include <variant>

#include "affcap/types.hpp"

namespace affcap {

// A convex body in R^m with o in Q (possibly on the boundary), exposed
// through its support function h_Q(x) = max{x.y : y in Q}.  Polytopes and
// the named analytic families are evaluated exactly; L_p sums and
// reflections wrap other bodies as oracles.
class QBody {
 public:
  static QBody segment(double a, double b);           // [a,b] in R^1, a <= 0 <= b
  static QBody box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  static QBody cube(int m, double half_width);        // [-hw, hw]^m
  static QBody polytope(Eigen::MatrixXd vertices);    // m x V vertex list
  static QBody simplex(Eigen::MatrixXd vertices);     // m x (m+1) vertex list
  static QBody ball(Eigen::VectorXd center, double radius);
  // Segment whose p-th support power realizes the asymmetric weight
  // (1+tau)/2 * t_+^p + (1-tau)/2 * t_-^p.
  static QBody tau_segment(double tau, double p);

  int dim() const { return m_; }
  double support(const Eigen::VectorXd& x) const;

  friend QBody lp_sum(const QBody& q1, const QBody& q2, double lambda, double p);
  friend QBody negate(const QBody& q);
  friend QBody scale(const QBody& q, double factor);

 private:
  struct Polytope {
    Eigen::MatrixXd vertices;
  };
  struct Box {
    Eigen::VectorXd lo, hi;
  };
  struct Ball {
    Eigen::VectorXd center;
    double radius;
  };
  struct LpSum {
    std::shared_ptr<const QBody> q1, q2;
    double lambda, p;
  };
  struct Negated {
    std::shared_ptr<const QBody> q;
  };
  struct Scaled {
    std::shared_ptr<const QBody> q;
    double factor;
  };
  using Rep = std::variant<Polytope, Box, Ball, LpSum, Negated, Scaled>;

  QBody(int m, Rep rep) : m_(m), rep_(std::move(rep)) {}
  void check_contains_origin() const;

  int m_ = 0;
  Rep rep_;
};

// Support function of the L_p sum (lambda . h1^p + (1-lambda) . h2^p)^{1/p}.
QBody lp_sum(const QBody& q1, const QBody& q2, double lambda, double p);

// Reflection -Q, with h_{-Q}(x) = h_Q(-x).
QBody negate(const QBody& q);

// Dilate b*Q for b > 0, with h_{bQ}(x) = b h_Q(x).
QBody scale(const QBody& q, double factor);

}  // namespace affcap
