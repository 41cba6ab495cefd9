#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "affcap/qbody.hpp"
#include "affcap/starbody.hpp"
#include "affcap/verify.hpp"

using namespace affcap;

namespace {
Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}
}  // namespace

TEST_CASE("segment and polytope supports match brute force") {
  const QBody seg = QBody::segment(-0.5, 0.5);
  CHECK(seg.support(vec1(1.0)) == doctest::Approx(0.5));
  CHECK(seg.support(vec1(0.0)) == 0.0);

  Eigen::MatrixXd sq(2, 4);
  sq << -1, 1, 1, -1, -1, -1, 1, 1;
  const QBody square = QBody::polytope(sq);
  Eigen::VectorXd x(2);
  x << 1, 1;
  double brute = -1e300;
  for (int j = 0; j < 4; ++j) brute = std::max(brute, sq.col(j).dot(x));
  CHECK(square.support(x) == doctest::Approx(brute));
  CHECK(square.support(x) == doctest::Approx(2.0));
}

TEST_CASE("support oracles are positively homogeneous and subadditive") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> tu(0.1, 5.0);
  for (int m : {1, 2, 3}) {
    const QBody q = m == 1 ? QBody::segment(-0.3, 1.1) : random_qbody(m, gen);
    for (int trial = 0; trial < 64; ++trial) {
      Eigen::VectorXd x(m), y(m);
      for (int i = 0; i < m; ++i) {
        x[i] = nd(gen);
        y[i] = nd(gen);
      }
      const double t = tu(gen);
      CHECK(q.support(t * x) == doctest::Approx(t * q.support(x)).epsilon(1e-12));
      CHECK(q.support(x + y) <= q.support(x) + q.support(y) + 1e-12);
      CHECK(q.support(x) + q.support(-x) > 0.0);
    }
  }
}

TEST_CASE("lp sums follow the support power formula") {
  const QBody q1 = QBody::segment(0.0, 1.0);
  const QBody q2 = QBody::segment(-1.0, 0.0);
  const QBody half = lp_sum(q1, q2, 0.5, 1.0);
  CHECK(half.support(vec1(1.0)) == doctest::Approx(0.5));

  const QBody all1 = lp_sum(q1, q2, 1.0, 2.0);
  CHECK(all1.support(vec1(1.0)) == doctest::Approx(q1.support(vec1(1.0))));
  CHECK(all1.support(vec1(-1.0)) == doctest::Approx(q1.support(vec1(-1.0))));

  const QBody same = lp_sum(q1, q1, 0.3, 2.0);
  for (double x : {-2.0, -0.5, 0.7, 3.0})
    CHECK(same.support(vec1(x)) == doctest::Approx(q1.support(vec1(x))));
}

TEST_CASE("negation and scaling wrap the oracle") {
  const QBody q = QBody::segment(-0.25, 1.0);
  const QBody nq = negate(q);
  CHECK(nq.support(vec1(1.0)) == doctest::Approx(q.support(vec1(-1.0))));
  const QBody bq = scale(q, 3.0);
  CHECK(bq.support(vec1(-2.0)) == doctest::Approx(3.0 * q.support(vec1(-2.0))));
}

TEST_CASE("tau segments realize the asymmetric weight") {
  for (double tau : {-1.0, 0.0, 0.5, 1.0}) {
    for (double p : {1.0, 2.0}) {
      const QBody q = QBody::tau_segment(tau, p);
      for (double t : {-1.7, -0.2, 0.0, 0.4, 2.2}) {
        const double tp = std::max(t, 0.0), tm = std::max(-t, 0.0);
        const double weight =
            0.5 * (1.0 + tau) * std::pow(tp, p) + 0.5 * (1.0 - tau) * std::pow(tm, p);
        CHECK(std::pow(q.support(vec1(t)), p) == doctest::Approx(weight).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("q bodies must contain the origin") {
  CHECK_THROWS_AS(QBody::segment(0.5, 1.0), InputError);
  Eigen::VectorXd lo(2), hi(2);
  lo << 0.1, -1.0;
  hi << 1.0, 1.0;
  CHECK_THROWS_AS(QBody::box(lo, hi), InputError);
  Eigen::VectorXd c(2);
  c << 3.0, 0.0;
  CHECK_THROWS_AS(QBody::ball(c, 1.0), InputError);
  Eigen::MatrixXd far(2, 3);
  far << 1, 2, 1, 1, 1, 2;
  CHECK_THROWS_AS(QBody::polytope(far), GeometryError);
}

TEST_CASE("radial functions of the named families") {
  const StarBody ball = StarBody::ball(3, 1.0);
  const StarBody cube3 = StarBody::cube(3, 1.0);
  const StarBody cube2 = StarBody::cube(2, 1.0);
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(3, 0);
  CHECK(ball.radial(e1) == doctest::Approx(1.0));
  CHECK(cube3.radial(e1) == doctest::Approx(1.0));
  Eigen::VectorXd diag(2);
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(cube2.radial(diag) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const StarBody l3 = StarBody::lq_ball(2, 3.0, 2.0);
  Eigen::VectorXd d2 = diag;
  const double expected = 2.0 / std::pow(2.0 * std::pow(d2[0], 3.0), 1.0 / 3.0);
  CHECK(l3.radial(d2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gauge and radial are reciprocal along rays") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd(0.0, 1.0);
  const StarBody poly = random_polytope(3, gen);
  const StarBody ell = random_ellipsoid(3, gen);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd y(3);
    for (int j = 0; j < 3; ++j) y[j] = nd(gen);
    if (y.norm() < 1e-6) continue;
    for (const StarBody* k : {&poly, &ell}) {
      const double lhs = k->gauge(y) * k->radial(y.normalized());
      CHECK(lhs == doctest::Approx(y.norm()).epsilon(1e-12));
    }
  }
  CHECK(poly.gauge(Eigen::VectorXd::Zero(3)) == 0.0);
}

TEST_CASE("boundary elements of the square and disk") {
  const StarBody cube2 = StarBody::cube(2, 1.0);
  const auto els = cube2.boundary_elements(3);
  REQUIRE(els.size() == 4);
  for (const auto& el : els) {
    CHECK(el.weight == doctest::Approx(2.0));
    CHECK(el.cosine == doctest::Approx(1.0));
    CHECK(std::abs(el.normal.norm() - 1.0) < 1e-12);
  }

  const StarBody disk = StarBody::ball(2, 1.0);
  const auto dels = disk.boundary_elements(4);
  double total = 0.0;
  for (const auto& el : dels) {
    CHECK(el.cosine == doctest::Approx(1.0));
    total += el.weight;
  }
  CHECK(total == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("simplex boundary reproduces the shoelace area") {
  Eigen::MatrixXd v(2, 3);
  v << 2, 0, -1, 0, 2, -1;
  const StarBody sim = StarBody::simplex(v);
  const auto els = sim.boundary_elements(0);
  REQUIRE(els.size() == 3);
  double acc = 0.0;
  for (const auto& el : els) acc += el.weight * el.cosine;
  CHECK(acc / 2.0 == doctest::Approx(4.0).epsilon(1e-12));  // shoelace of the triangle
  CHECK(sim.volume(0).value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("volumes: exact facet paths and quadrature paths") {
  CHECK(StarBody::cube(3, 1.0).volume(0).value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(StarBody::cube(4, 0.5).volume(0).value == doctest::Approx(1.0).epsilon(1e-12));

  const Estimate vball = StarBody::ball(3, 1.0).volume(4);
  CHECK(vball.value == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-10));

  Eigen::MatrixXd a = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  const Estimate vell = StarBody::ellipsoid(a).volume(4);
  CHECK(vell.value ==
        doctest::Approx(6.0 * unit_ball_volume(3)).epsilon(1e-8));  // det times omega_n

  const double q = 3.0, r = 1.3;
  const Estimate vlq = StarBody::lq_ball(2, q, r).volume(5);
  const double analytic = std::pow(2.0 * r, 2.0) *
                          std::pow(std::tgamma(1.0 + 1.0 / q), 2.0) /
                          std::tgamma(1.0 + 2.0 / q);
  CHECK(vlq.value == doctest::Approx(analytic).epsilon(1e-8));
}

TEST_CASE("radial and facet volumes agree on random polytopes") {
  std::mt19937_64 gen(17);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 4; ++rep) {
      const StarBody k = random_polytope(n, gen);
      const double exact = k.volume(0).value;
      const Estimate quad = k.volume_radial(gauss_rule(n, 5));
      CHECK(std::abs(quad.value - exact) <= 3.0 * quad.err + 1e-6 * exact);
    }
  }
}

TEST_CASE("linear images act exactly on polytopes and ellipsoids") {
  const StarBody cube2 = StarBody::cube(2, 1.0);
  const StarBody same = cube2.linear_image(LinearMap::identity(2));
  Eigen::VectorXd d(2);
  d << 0.6, -0.8;
  CHECK(same.radial(d) == doctest::Approx(cube2.radial(d)).epsilon(1e-12));

  const StarBody disk2 = StarBody::ball(2, 1.0).linear_image(
      LinearMap(2.0 * Eigen::MatrixXd::Identity(2, 2)));
  CHECK(disk2.radial(d) == doctest::Approx(2.0).epsilon(1e-12));

  const double ang = M_PI / 6.0;
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
  const StarBody turned = cube2.linear_image(LinearMap(rot));
  CHECK(turned.volume(0).value == doctest::Approx(4.0).epsilon(1e-10));

  // rho_{phi K}(theta) = rho_K(phi^{-1} theta / |phi^{-1} theta|) / |phi^{-1} theta|
  std::mt19937_64 gen(23);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int n : {2, 3}) {
    const StarBody k = n == 2 ? StarBody::cube(2, 1.0) : random_polytope(3, gen);
    const LinearMap map = random_linear_map(n, gen);
    const StarBody img = k.linear_image(map);
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXd theta(n);
      for (int j = 0; j < n; ++j) theta[j] = nd(gen);
      theta.normalize();
      const Eigen::VectorXd back = map.inverse() * theta;
      const double expected = k.radial(back.normalized()) / back.norm();
      CHECK(img.radial(theta) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("lq balls reject general linear images") {
  const StarBody lq = StarBody::lq_ball(2, 3.0, 1.0);
  std::mt19937_64 gen(5);
  CHECK_THROWS_AS(lq.linear_image(random_linear_map(2, gen)), InputError);
}

TEST_CASE("radial tables interpolate their samples") {
  for (int n : {2, 3}) {
    const int level = n == 2 ? 1 : 1;
    const Eigen::MatrixXd grid = StarBody::radial_grid(n, level);
    Eigen::VectorXd values(grid.cols());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    a(0, 0) = 1.5;
    const StarBody ell = StarBody::ellipsoid(a);
    for (int i = 0; i < grid.cols(); ++i) values[i] = ell.radial(grid.col(i));
    const StarBody table = StarBody::radial_table(n, level, values);
    for (int i = 0; i < grid.cols(); ++i)
      CHECK(table.radial(grid.col(i)) == doctest::Approx(values[i]).epsilon(1e-9));
    // volume consistency between the facet formula and radial quadrature
    const double exact = table.volume(0).value;
    const Estimate quad = table.volume_radial(gauss_rule(n, 5));
    CHECK(std::abs(quad.value - exact) <= 3.0 * quad.err + 2e-4 * exact);
    CHECK(exact < ell.volume(4).value);  // inscribed interpolant of a convex body
  }
  CHECK_THROWS_AS(StarBody::radial_table(2, 1, Eigen::VectorXd::Zero(32)),
                  GeometryError);
}

TEST_CASE("hull of a cloud contains all its points") {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int n : {2, 3}) {
    Eigen::MatrixXd pts(n, 20);
    for (int j = 0; j < 20; ++j)
      for (int i = 0; i < n; ++i) pts(i, j) = nd(gen);
    const StarBody hull = StarBody::polytope_hull(pts);
    for (const auto& f : hull.facets())
      for (int j = 0; j < 20; ++j)
        CHECK(f.normal.dot(pts.col(j)) <= f.offset + 1e-9);
  }
}

TEST_CASE("origin outside the hull raises a geometry error") {
  Eigen::MatrixXd pts(2, 4);
  pts << 2, 3, 3, 2, 2, 2, 3, 3;
  CHECK_THROWS_AS(StarBody::polytope_hull(pts), GeometryError);
}

TEST_CASE("min_radial lower-bounds the boundary distance") {
  CHECK(StarBody::cube(3, 1.0).min_radial() == doctest::Approx(1.0));
  Eigen::MatrixXd a = Eigen::Vector2d(0.5, 2.0).asDiagonal();
  CHECK(StarBody::ellipsoid(a).min_radial() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(StarBody::lq_ball(2, 1.0, 1.0).min_radial() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}
