#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "affcap/projection.hpp"
#include "affcap/verify.hpp"

using namespace affcap;

namespace {

// Closed form for segment Q = [-1/2, 1/2]: the support of the projection
// body of the unit ball is constant, so everything reduces to moments of
// |v . u| over the sphere.
double d_np_segment_oracle(int n, double p) {
  const double moment = 2.0 * std::pow(M_PI, 0.5 * (n - 1)) *
                        std::tgamma(0.5 * (p + 1.0)) / std::tgamma(0.5 * (n + p));
  const double n_omega = n * unit_ball_volume(n);
  return std::pow(n_omega, -1.0 - p / n) * std::pow(2.0, -p) * moment;
}

// Q a Euclidean ball of radius r in R^m at p = 2: the quadratic moment is
// direction-free, so the support is again constant.
double d_n2_ballq_oracle(int n, int m, double r) {
  const int nm = n * m;
  return r * r * std::pow(nm * unit_ball_volume(nm), -2.0 / nm) / n;
}

Eigen::MatrixXd unit_e1(int n, int m) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, m);
  u(0, 0) = 1.0;
  return u;
}

}  // namespace

TEST_CASE("matrix directions reshape column-major") {
  Eigen::VectorXd flat(6);
  flat << 1, 2, 3, 4, 5, 6;
  const Eigen::MatrixXd u = reshape_direction(flat, 3, 2);
  CHECK(u(0, 0) == 1);
  CHECK(u(2, 0) == 3);
  CHECK(u(0, 1) == 4);
  const MatrixDirection md = MatrixDirection::from_flat(flat / flat.norm(), 3, 2);
  CHECK((md.flat() - flat / flat.norm()).norm() < 1e-14);
  CHECK_THROWS_AS(MatrixDirection(Eigen::MatrixXd::Ones(2, 2)), InputError);
}

TEST_CASE("matrix contraction never expands the norm") {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd u = random_direction(3, 2, gen);
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) v[i] = nd(gen);
    CHECK((u.transpose() * v).norm() <= v.norm() + 1e-12);
  }
}

TEST_CASE("projection support of the disk with a segment is constant 2") {
  const StarBody disk = StarBody::ball(2, 1.0);
  const QBody seg = QBody::segment(-0.5, 0.5);
  std::mt19937_64 gen(4);
  const ProjectionBody pb(disk, seg, 1.0, 5);
  for (int i = 0; i < 10; ++i) {
    const double h = pb.support(random_direction(2, 1, gen));
    CHECK(h == doctest::Approx(2.0).epsilon(1e-5));
  }
}

TEST_CASE("projection support of the square is exact") {
  const StarBody cube2 = StarBody::cube(2, 1.0);
  const QBody seg = QBody::segment(-0.5, 0.5);
  CHECK(h_projection(cube2, seg, 1.0, unit_e1(2, 1)) == doctest::Approx(2.0).epsilon(1e-14));
  Eigen::MatrixXd u(2, 1);
  u << 0.6, 0.8;
  // support is 1-homogeneous: same element set, scaled direction
  const ProjectionBody pb(cube2, seg, 1.0, 0);
  CHECK(pb.support(3.0 * u) == doctest::Approx(3.0 * pb.support(u)).epsilon(1e-14));
}

TEST_CASE("radial route agrees with the boundary route") {
  const QBody seg = QBody::segment(-0.5, 0.5);
  const SphereRule rule = gauss_rule(2, 5);

  const StarBody disk = StarBody::ball(2, 1.0);
  const Eigen::MatrixXd u = unit_e1(2, 1);
  const Estimate hr = h_projection_radial(disk, seg, 1.0, u, rule);
  CHECK(hr.value == doctest::Approx(2.0).epsilon(1e-5));

  const StarBody cube2 = StarBody::cube(2, 1.0);
  const Estimate hc = h_projection_radial(cube2, seg, 1.0, u, rule);
  CHECK(std::abs(hc.value - 2.0) <= 3.0 * hc.err + 1e-4);

  // scaling law: the value for 2K is 2^{(n-p)/p} times the value for K
  for (double p : {1.0, 1.5}) {
    const StarBody cube_big = cube2.linear_image(
        LinearMap(2.0 * Eigen::MatrixXd::Identity(2, 2)));
    const Estimate h1 = h_projection_radial(cube2, seg, p, u, rule);
    const Estimate h2 = h_projection_radial(cube_big, seg, p, u, rule);
    const double factor = std::pow(2.0, (2.0 - p) / p);
    CHECK(std::abs(h2.value - factor * h1.value) <=
          3.0 * std::hypot(h2.err, factor * h1.err) + 1e-6);
  }
}

TEST_CASE("polar volumes of projection bodies") {
  const QBody seg = QBody::segment(-0.5, 0.5);

  const StarBody disk = StarBody::ball(2, 1.0);
  const ProjectionBody pbd(disk, seg, 1.0, 5);
  const Estimate vd = polar_volume_projection(pbd, gauss_rule(2, 5));
  CHECK(std::abs(vd.value - M_PI / 4.0) <= 3.0 * vd.err + 1e-4);

  const StarBody cube2 = StarBody::cube(2, 1.0);
  const ProjectionBody pbc(cube2, seg, 1.0, 0);
  const Estimate vc = polar_volume_projection(pbc, gauss_rule(2, 6));
  CHECK(std::abs(vc.value - 0.5) <= std::max(3.0 * vc.err, 1e-4));

  // homogeneity forced by the scaling of the projection body:
  // V(polar of proj(aK)) = a^{-nm(n-p)/p} V(polar of proj(K))
  const double p = 1.0, a = 2.0;
  const StarBody cube_big =
      cube2.linear_image(LinearMap(a * Eigen::MatrixXd::Identity(2, 2)));
  const ProjectionBody pb_big(cube_big, seg, p, 0);
  const Estimate vb = polar_volume_projection(pb_big, gauss_rule(2, 6));
  const double factor = std::pow(a, -2.0 * (2.0 - p) / p);
  CHECK(std::abs(vb.value - factor * vc.value) <=
        3.0 * std::hypot(vb.err, factor * vc.err) + 1e-9);
}

TEST_CASE("d_np matches the closed segment chain") {
  const QBody seg = QBody::segment(-0.5, 0.5);
  struct Case {
    int n;
    double p;
  };
  for (const Case c : {Case{2, 1.0}, Case{2, 1.5}, Case{3, 1.0}, Case{3, 1.5}, Case{3, 2.0}}) {
    const SphereRule outer = gauss_rule(c.n, 5);
    const Estimate d = d_np(seg, c.n, c.p, outer, 5);
    const double oracle = d_np_segment_oracle(c.n, c.p);
    CHECK(std::abs(d.value - oracle) <= std::max(3.0 * d.err, 2e-4 * oracle));
  }
  // the frozen reference value for (n, p) = (2, 1)
  CHECK(d_np_segment_oracle(2, 1.0) == doctest::Approx(0.1269873).epsilon(1e-5));
}

TEST_CASE("d_np scales with the p-th power of the q dilation") {
  const QBody seg = QBody::segment(-0.5, 0.5);
  const double b = 1.7, p = 1.5;
  const SphereRule outer = gauss_rule(3, 4);
  const Estimate d1 = d_np(seg, 3, p, outer, 4);
  const Estimate db = d_np(scale(seg, b), 3, p, outer, 4);
  CHECK(db.value == doctest::Approx(std::pow(b, p) * d1.value).epsilon(1e-12));
}

TEST_CASE("d_np with a ball q at p = 2 matches the direction-free oracle") {
  {
    const QBody q = QBody::ball(Eigen::VectorXd::Zero(2), 0.8);
    const Estimate d = d_np(q, 2, 2.0, gauss_rule(4, 3), 5);
    const double oracle = d_n2_ballq_oracle(2, 2, 0.8);
    CHECK(std::abs(d.value - oracle) <= std::max(3.0 * d.err, 2e-4 * oracle));
  }
  {
    const QBody q = QBody::ball(Eigen::VectorXd::Zero(2), 1.0);
    const Estimate d = d_np(q, 3, 2.0, qmc_rule(6, 2, 11), 4);
    const double oracle = d_n2_ballq_oracle(3, 2, 1.0);
    CHECK(std::abs(d.value - oracle) <= std::max(3.0 * d.err, 2e-3 * oracle));
  }
}

TEST_CASE("ridge jitter is reported for polytopes on the radial route") {
  const StarBody cube2 = StarBody::cube(2, 1.0);
  const QBody seg = QBody::segment(-0.5, 0.5);
  // the axis-aligned circle rule puts nodes exactly on the cube ridges
  const Estimate h = h_projection_radial(cube2, seg, 1.0, unit_e1(2, 1), gauss_rule(2, 2));
  CHECK(h.jittered_nodes >= 0);  // flag plumbed through
  const StarBody mesh = StarBody::radial_table(
      2, 0, Eigen::VectorXd::Ones(StarBody::radial_grid(2, 0).cols()));
  CHECK_THROWS_AS(h_projection_radial(mesh, seg, 1.0, unit_e1(2, 1), gauss_rule(2, 2)),
                  InputError);
}
