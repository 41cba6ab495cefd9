// Acceptance suite: one numbered criterion per invocation, each printing a
// single PASS/FAIL line with the measured values.
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "affcap/verify.hpp"

using namespace affcap;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
  bool pass = true;
  std::ostringstream detail;
};

void report(int id, const Line& line) {
  std::cout << "criterion " << id << ": " << (line.pass ? "PASS" : "FAIL") << " — "
            << line.detail.str() << "\n";
}

const QBody kSeg = QBody::segment(-0.5, 0.5);
const QBody kSquare = QBody::cube(2, 0.5);  // unit square in R^2

// 1. Ball closed form: lower, upper and closed-form capacities of the unit
// ball agree pairwise within 1% with independently seeded rules.
bool criterion1() {
  struct Triple {
    int n, m;
    double p;
  };
  const std::vector<Triple> triples = {{3, 1, 2.0}, {3, 2, 1.5}, {2, 2, 1.5}};
  Line line;
  for (const Triple t : triples) {
    const QBody& q = t.m == 1 ? kSeg : kSquare;
    const auto t0 = Clock::now();
    QuadConfig ball_cfg{4, 4, 3, 11};
    QuadConfig up_cfg{4, 4, 3, 22};
    QuadConfig lo_cfg{4, 4, 3, 33};
    const StarBody ball = StarBody::ball(t.n, 1.0);
    const Estimate cb = cap_ball_closed_form(t.n, t.m, t.p, q, ball_cfg);
    const Estimate up = cap_upper(ball, q, t.p, up_cfg);
    const Estimate lo = cap_lower(ball, q, t.p, lo_cfg);
    const double secs = seconds_since(t0);

    auto rel = [](double x, double y) { return std::abs(x - y) / std::abs(y); };
    const double worst = std::max({rel(cb.value, up.value), rel(cb.value, lo.value),
                                   rel(up.value, lo.value)});
    bool ok = worst <= 0.01 && secs <= 60.0;
    if (t.n * t.m > 4) {
      for (const Estimate* e : {&cb, &up, &lo})
        ok = ok && e->err / e->value <= 0.005;
    }
    line.pass = line.pass && ok;
    line.detail << "(n=" << t.n << ",m=" << t.m << ",p=" << t.p << "): cap_ball="
                << cb.value << " upper=" << up.value << " lower=" << lo.value
                << " worst_rel=" << worst << " t=" << secs << "s; ";
  }
  return line.pass ? (report(1, line), true) : (report(1, line), false);
}

// 2. Classical reduction: radial upper bound at the ball hits 4 pi exactly
// and matches the closed-form variational capacity to 1e-12.
bool criterion2() {
  Line line;
  const double radial = cap_p_upper_radial(StarBody::ball(3, 1.0), 2.0).value;
  const double closed = cap_p_variational_ball(3, 2.0);
  const double four_pi = 4.0 * M_PI;
  line.pass = std::abs(radial - four_pi) <= 1e-12 * four_pi &&
              std::abs(radial - closed) <= 1e-12 * four_pi;
  line.detail << "cap_p_upper_radial(B_2^3, p=2)=" << radial << " vs 4pi=" << four_pi
              << " vs closed=" << closed;
  report(2, line);
  return line.pass;
}

// 3. Profile optimizer reaches the closed-form optimum within 5e-3.
bool criterion3() {
  struct Case {
    int n;
    double p;
  };
  Line line;
  for (const Case c : {Case{3, 1.5}, Case{3, 2.0}, Case{4, 2.0}, Case{2, 1.5}}) {
    const auto t0 = Clock::now();
    const ProfileResult res = profile_optimize_j(c.n, c.p, 400, 1e3);
    const double secs = seconds_since(t0);
    const double target = profile_optimal_j(c.n, c.p);
    const bool ok = std::abs(res.j_value - target) <= 5e-3 && secs <= 5.0;
    line.pass = line.pass && ok;
    line.detail << "(n=" << c.n << ",p=" << c.p << "): J=" << res.j_value
                << " J*=" << target << " t=" << secs << "s; ";
  }
  report(3, line);
  return line.pass;
}

// 4. Exact polygon oracle vs quadrature on 25 seeded polygons; the square
// fixture is exactly 1.
bool criterion4() {
  Line line;
  const double square = oracle_polygon_phi(StarBody::cube(2, 1.0), -0.5, 0.5);
  line.pass = std::abs(square - 1.0) <= 1e-12;
  line.detail << "square oracle=" << square << "; ";

  std::mt19937_64 gen(424242);
  QuadConfig cfg;
  cfg.outer_level = 5;
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 25; ++i) {
    const StarBody k = random_polytope(2, gen);
    const double oracle = oracle_polygon_phi(k, -0.5, 0.5);
    const Estimate quad = phi(k, kSeg, 1.0, cfg);
    const double tol = std::max(1e-3 * oracle, 3.0 * quad.err);
    const double gap = std::abs(quad.value - oracle);
    worst = std::max(worst, gap / oracle);
    if (gap > tol) ++failures;
  }
  line.pass = line.pass && failures == 0;
  line.detail << "25 polygons, worst rel gap=" << worst << ", failures=" << failures;
  report(4, line);
  return line.pass;
}

// 5. Normalized inequality chain on 50 seeded fixtures: zero violations.
bool criterion5() {
  QuadConfig cfg{4, 3, 2, 7};
  const PropertyReport rep = check_property("chain", 50, 5, cfg);
  Line line;
  line.pass = rep.pass;
  line.detail << "fixtures=" << rep.fixtures << " max_violation=" << rep.max_violation
              << (rep.pass ? "" : " worst: " + rep.worst_fixture);
  report(5, line);
  return line.pass;
}

// 6. Invariance suite at trials = 20, seed = 7, within ten minutes.
bool criterion6() {
  const std::vector<std::string> suite = {
      "proj-affine",    "phi-affine",     "phi-homog",       "phi-symmetry",
      "phi-concavity",  "proj-sublinear", "proj-positivity", "two-formula-agreement",
      "sandwich-order", "nested-consistency", "thm42-bound",  "tau-reduction"};
  QuadConfig cfg{4, 3, 2, 7};
  Line line;
  const auto t0 = Clock::now();
  for (const auto& name : suite) {
    const PropertyReport rep = check_property(name, 20, 7, cfg);
    line.pass = line.pass && rep.pass;
    line.detail << name << (rep.pass ? " ok" : " FAIL(" + rep.worst_fixture + ")")
                << "; ";
  }
  const double secs = seconds_since(t0);
  line.pass = line.pass && secs <= 600.0;
  line.detail << "total t=" << secs << "s";
  report(6, line);
  return line.pass;
}

// 7. Relative drift of d_{3,p}(Q) from d_{3,1}(Q) at p = 1.1 and 1.01,
// required within 5% and 1%.
bool criterion7() {
  Line line;
  struct QCase {
    const QBody* q;
    int m;
    const char* tag;
  };
  for (const QCase qc : {QCase{&kSeg, 1, "segment"}, QCase{&kSquare, 2, "square"}}) {
    QuadConfig cfg{5, 5, 3, 17};
    const SphereRule outer = cfg.outer_rule(3, qc.m);
    const Estimate d1 = d_np(*qc.q, 3, 1.0, outer, cfg.inner_level);
    for (const auto& [p, tol] : std::vector<std::pair<double, double>>{{1.1, 0.05},
                                                                       {1.01, 0.01}}) {
      const Estimate dp = d_np(*qc.q, 3, p, outer, cfg.inner_level);
      const double drift = std::abs(dp.value - d1.value) / d1.value;
      const bool ok = drift <= tol;
      line.pass = line.pass && ok;
      line.detail << qc.tag << " p=" << p << ": drift=" << drift << " (limit " << tol
                  << (ok ? ") ok; " : ") exceeded; ");
    }
  }
  report(7, line);
  return line.pass;
}

// 8. Shell energy of the unit disk at eps = 1 reproduces the ramp factor
// ((1+eps)^n - 1)/(n eps) = 1.5 within 0.5%.
bool criterion8() {
  QuadConfig cfg{5, 5, 2, 7};
  const StarBody disk = StarBody::ball(2, 1.0);
  const Estimate energy = shell_energy(disk, kSeg, 1.0, cfg);
  const Estimate base = phi(disk, kSeg, 1.0, cfg);
  const double ratio = energy.value / base.value;
  Line line;
  line.pass = std::abs(ratio - 1.5) <= 0.005 * 1.5;
  line.detail << "shell/phi ratio=" << ratio << " vs 1.5";
  report(8, line);
  return line.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i + 1 < argc; i += 2)
    if (std::strcmp(argv[i], "--criterion") == 0) which = std::atoi(argv[i + 1]);

  bool (*const steps[])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8};
  bool ok = true;
  if (which >= 1 && which <= 8) {
    ok = steps[which - 1]();
  } else {
    for (auto* step : steps) ok = step() && ok;
  }
  return ok ? 0 : 1;
}
