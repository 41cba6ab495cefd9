#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <numeric>

#include "affcap/quadrature.hpp"

using namespace affcap;

TEST_CASE("gauss rules carry the exact sphere measure") {
  for (int d : {2, 3, 4}) {
    for (int level : {1, 2, 3, 4}) {
      const SphereRule r = gauss_rule(d, level);
      CHECK(r.weights.minCoeff() > 0.0);
      CHECK(r.weights.sum() == doctest::Approx(sphere_surface(d)).epsilon(1e-9));
      for (int i = 0; i < std::min<std::int64_t>(r.node_count(), 64); ++i)
        CHECK(std::abs(r.nodes.col(i).norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("circle rule integrates constants and |u1|") {
  const SphereRule r = gauss_rule(2, 4);
  const Estimate one = integrate_sphere([](const Eigen::VectorXd&) { return 1.0; }, r);
  CHECK(one.value == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  const Estimate abs1 =
      integrate_sphere([](const Eigen::VectorXd& u) { return std::abs(u[0]); }, r);
  CHECK(abs1.value == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("s2 rule integrates quadratic moments") {
  const SphereRule r = gauss_rule(3, 4);
  const Estimate m2 =
      integrate_sphere([](const Eigen::VectorXd& u) { return u[0] * u[0]; }, r);
  CHECK(m2.value == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-10));
}

TEST_CASE("s3 rule integrates constants and moments") {
  const SphereRule r = gauss_rule(4, 3);
  const Estimate one = integrate_sphere([](const Eigen::VectorXd&) { return 1.0; }, r);
  CHECK(one.value == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-11));
  const Estimate m2 =
      integrate_sphere([](const Eigen::VectorXd& u) { return u[2] * u[2]; }, r);
  CHECK(m2.value == doctest::Approx(2.0 * M_PI * M_PI / 4.0).epsilon(1e-9));
}

TEST_CASE("monte carlo covers any dimension with honest error bars") {
  const SphereRule r = mc_rule(4, 2, 42);
  const Estimate one = integrate_sphere([](const Eigen::VectorXd&) { return 1.0; }, r);
  CHECK(one.value == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-12));
  const Estimate m2 =
      integrate_sphere([](const Eigen::VectorXd& u) { return u[0] * u[0]; }, r);
  const double truth = 2.0 * M_PI * M_PI / 4.0;
  CHECK(std::abs(m2.value - truth) <= 3.0 * m2.err + 1e-9);
  CHECK(m2.err > 0.0);
}

TEST_CASE("randomized qmc replicates furnish error bars") {
  const SphereRule r = qmc_rule(6, 1, 7);
  CHECK(r.replicates == 3);
  const Estimate one = integrate_sphere([](const Eigen::VectorXd&) { return 1.0; }, r);
  CHECK(one.value == doctest::Approx(sphere_surface(6)).epsilon(1e-12));
  const Estimate m2 =
      integrate_sphere([](const Eigen::VectorXd& u) { return u[1] * u[1]; }, r);
  const double truth = sphere_surface(6) / 6.0;
  CHECK(std::abs(m2.value - truth) <= 3.0 * m2.err + 1e-6 * truth);
}

TEST_CASE("stochastic rules are antithetic and deterministic in the seed") {
  const SphereRule a = qmc_rule(5, 1, 99);
  const SphereRule b = qmc_rule(5, 1, 99);
  CHECK((a.nodes - b.nodes).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 10; ++i)
    CHECK((a.nodes.col(2 * i) + a.nodes.col(2 * i + 1)).norm() == 0.0);
  auto f = [](const Eigen::VectorXd& u) { return std::exp(u[0]); };
  const Estimate ea = integrate_sphere(f, a);
  const Estimate eb = integrate_sphere(f, b);
  CHECK(ea.value == eb.value);
  CHECK(ea.err == eb.err);
}

TEST_CASE("deterministic rules are rotation invariant within error") {
  const SphereRule r = gauss_rule(3, 4);
  const Eigen::Vector3d axis = Eigen::Vector3d(1.0, 2.0, -0.5).normalized();
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, axis).toRotationMatrix();
  auto f = [](const Eigen::VectorXd& u) { return std::exp(0.8 * u[0] - 0.3 * u[2]); };
  auto fr = [&](const Eigen::VectorXd& u) { return f(rot * u); };
  const Estimate plain = integrate_sphere(f, r);
  const Estimate rotated = integrate_sphere(fr, r);
  CHECK(std::abs(plain.value - rotated.value) <=
        10.0 * std::max(plain.err, rotated.err) + 1e-10);
}

TEST_CASE("doubling the level converges monotonically on the examples") {
  auto kink = [](const Eigen::VectorXd& u) { return std::abs(u[0]); };
  const double ref = integrate_sphere(kink, gauss_rule(2, 7)).value;
  double prev = std::numeric_limits<double>::infinity();
  for (int level : {1, 2, 3, 4}) {
    const double err = std::abs(integrate_sphere(kink, gauss_rule(2, level)).value - ref);
    CHECK(err <= prev + 1e-15);
    prev = err;
  }
}

TEST_CASE("neg_power_moment returns polar volumes") {
  const Estimate disk =
      neg_power_moment([](const Eigen::VectorXd&) { return 1.0; }, 2, gauss_rule(2, 3));
  CHECK(disk.value == doctest::Approx(M_PI).epsilon(1e-12));
  const Estimate half_ball =
      neg_power_moment([](const Eigen::VectorXd&) { return 2.0; }, 3, gauss_rule(3, 3));
  CHECK(half_ball.value == doctest::Approx(unit_ball_volume(3) / 8.0).epsilon(1e-12));
  // Polar of the square [-1,1]^2 is the cross-polytope of area 2.
  const Estimate cross = neg_power_moment(
      [](const Eigen::VectorXd& u) { return std::abs(u[0]) + std::abs(u[1]); }, 2,
      gauss_rule(2, 5));
  CHECK(cross.value == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(std::abs(cross.value - 2.0) <= 3.0 * cross.err + 1e-9);
}

TEST_CASE("neg_power_moment rejects support oracles near zero") {
  auto bad = [](const Eigen::VectorXd& u) { return u[0] > 0.99 ? 0.0 : 1.0; };
  CHECK_THROWS_AS(neg_power_moment(bad, 2, gauss_rule(2, 4)), IntegrandError);
}

TEST_CASE("pairwise summation matches plain accumulation") {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(std::sin(0.1 * i));
  const double plain = std::accumulate(xs.begin(), xs.end(), 0.0);
  CHECK(pairwise_sum(xs) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("estimate combination propagates errors in quadrature") {
  const Estimate a{2.0, 0.3, 10, 0, 0};
  const Estimate b{5.0, 0.4, 10, 0, 0};
  CHECK(est_add(a, b).err == doctest::Approx(0.5));
  const Estimate p = est_mul(a, b);
  CHECK(p.value == doctest::Approx(10.0));
  CHECK(p.err == doctest::Approx(10.0 * std::hypot(0.15, 0.08)));
  const Estimate q = est_pow(a, 3.0);
  CHECK(q.value == doctest::Approx(8.0));
  CHECK(q.err == doctest::Approx(8.0 * 3.0 * 0.15));
}

TEST_CASE("inverse normal cdf round-trips through erfc") {
  for (double p : {1e-10, 1e-4, 0.2, 0.5, 0.9, 1.0 - 1e-6}) {
    const double x = detail::inverse_normal_cdf(p);
    const double back = 0.5 * std::erfc(-x / M_SQRT2);
    CHECK(back == doctest::Approx(p).epsilon(1e-10));
  }
}
