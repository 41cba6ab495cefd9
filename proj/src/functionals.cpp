#include "affcap/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace affcap {

Estimate phi(const StarBody& k, const QBody& q, double p, const QuadConfig& cfg) {
  if (!(p >= 1.0)) throw InputError("phi: p >= 1 required");
  const ProjectionBody pb(k, q, p, cfg.inner_level);
  const SphereRule outer = cfg.outer_rule(k.dim(), q.dim());
  const Estimate vol = polar_volume_projection(pb, outer);
  const int nm = k.dim() * q.dim();
  Estimate e = est_pow(est_scale(vol, double(nm)), -p / double(nm));
  e.seed = outer.seed;
  return e;
}

Estimate sp_surface(const StarBody& k, double p, int inner_level) {
  if (!(p >= 1.0)) throw InputError("sp_surface: p >= 1 required");
  const int n = k.dim();
  if (k.is_ball()) {
    const double r = k.ellipsoid_matrix()(0, 0);
    return Estimate::exact(n * unit_ball_volume(n) * std::pow(r, double(n) - p));
  }
  auto sum_elements = [&](const std::vector<BoundaryElement>& els) {
    std::vector<double> terms(els.size());
    for (std::size_t i = 0; i < els.size(); ++i)
      terms[i] = p == 1.0 ? els[i].weight
                          : std::pow(els[i].cosine, 1.0 - p) * els[i].weight;
    return pairwise_sum(terms);
  };
  const StarRep rep = k.rep();
  const double fine = sum_elements(k.boundary_elements(inner_level));
  if (rep == StarRep::Polytope || rep == StarRep::StarMesh)
    return Estimate::exact(fine);
  const double coarse = sum_elements(k.boundary_elements(std::max(0, inner_level - 1)));
  Estimate e;
  e.value = fine;
  e.err = std::abs(fine - coarse);
  return e;
}

double cap_p_variational_ball(int n, double p) {
  if (!(p >= 1.0)) throw InputError("cap_p_variational_ball: p >= 1 required");
  if (p >= n) return 0.0;
  const double n_omega = n * unit_ball_volume(n);
  if (p == 1.0) return n_omega;
  return n_omega * std::pow((n - p) / (p - 1.0), p - 1.0);
}

double profile_optimal_j(int n, double p) {
  if (!(p > 1.0 && p < n)) throw InputError("profile_optimal_j: need 1 < p < n");
  return std::pow((n - p) / (p - 1.0), p - 1.0);
}

ProfileResult profile_optimize_j(int n, double p, int grid_size, double s_max) {
  if (!(p > 1.0 && p < n)) throw InputError("profile_optimize_j: need 1 < p < n");
  if (grid_size < 16) throw InputError("profile_optimize_j: grid_size >= 16 required");
  if (!(s_max > 1.0)) throw InputError("profile_optimize_j: s_max > 1 required");
  const int nseg = grid_size;

  Eigen::VectorXd s(nseg + 1);
  for (int i = 0; i <= nseg; ++i) s[i] = std::pow(s_max, double(i) / nseg);

  // Segment cost J = sum c_i d_i^p over decrements d_i >= 0, sum d_i = 1.
  Eigen::VectorXd c(nseg);
  for (int i = 0; i < nseg; ++i) {
    const double moment = (std::pow(s[i + 1], n) - std::pow(s[i], n)) / n;
    c[i] = moment / std::pow(s[i + 1] - s[i], p);
  }

  // Interior stationary point d_i proportional to c_i^{-1/(p-1)}, computed
  // in log space to survive p near 1.
  Eigen::VectorXd logd(nseg);
  for (int i = 0; i < nseg; ++i) logd[i] = -std::log(c[i]) / (p - 1.0);
  const double mx = logd.maxCoeff();
  double z = 0.0;
  for (int i = 0; i < nseg; ++i) z += std::exp(logd[i] - mx);
  Eigen::VectorXd d(nseg);
  for (int i = 0; i < nseg; ++i) d[i] = std::exp(logd[i] - mx) / z;

  auto energy = [&](const Eigen::VectorXd& dd) {
    double j = 0.0;
    for (int i = 0; i < nseg; ++i) j += c[i] * std::pow(dd[i], p);
    return j;
  };
  auto project_simplex = [&](Eigen::VectorXd v) {
    // Euclidean projection onto the probability simplex.
    Eigen::VectorXd u = v;
    std::sort(u.data(), u.data() + u.size(), std::greater<double>());
    double css = 0.0, tau = 0.0;
    int rho = 0;
    for (int i = 0; i < u.size(); ++i) {
      css += u[i];
      const double t = (css - 1.0) / (i + 1);
      if (u[i] - t > 0) {
        rho = i + 1;
        tau = t;
      }
    }
    (void)rho;
    for (int i = 0; i < v.size(); ++i) v[i] = std::max(0.0, v[i] - tau);
    return v;
  };

  // Projected gradient polish with Armijo backtracking.
  const int max_iter = 500;
  const double kkt_tol = 1e-10;
  int it = 0;
  double j = energy(d);
  for (; it < max_iter; ++it) {
    Eigen::VectorXd grad(nseg);
    for (int i = 0; i < nseg; ++i) grad[i] = p * c[i] * std::pow(d[i], p - 1.0);
    double lambda = 0.0;
    int active = 0;
    for (int i = 0; i < nseg; ++i)
      if (d[i] > 1e-300) {
        lambda += grad[i];
        ++active;
      }
    lambda /= std::max(1, active);
    double resid = 0.0;
    for (int i = 0; i < nseg; ++i)
      if (d[i] > 1e-300) resid = std::max(resid, std::abs(grad[i] - lambda));
    if (resid <= kkt_tol * std::max(1.0, std::abs(lambda))) break;

    double step = 1.0 / std::max(1e-300, grad.maxCoeff());
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Eigen::VectorXd trial = project_simplex(d - step * grad);
      const double jt = energy(trial);
      if (jt < j - 1e-16 * std::abs(j)) {
        d = trial;
        j = jt;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  if (it == max_iter) {
    std::ostringstream os;
    os << "profile_optimize_j: no convergence after " << max_iter
       << " iterations (n=" << n << ", p=" << p << ", J=" << j << ")";
    throw NumericalError(os.str());
  }

  Profile prof;
  prof.grid = s;
  prof.p = p;
  prof.values.resize(nseg + 1);
  prof.values[0] = 1.0;
  for (int i = 0; i < nseg; ++i) prof.values[i + 1] = prof.values[i] - d[i];
  prof.values[nseg] = 0.0;

  ProfileResult res;
  res.profile = std::move(prof);
  res.j_value = j;
  res.tail_bound = profile_optimal_j(n, p) * std::pow(s_max, -(n - p) / (p - 1.0));
  res.iterations = it;
  return res;
}

Estimate cap_ball_closed_form(int n, int m, double p, const QBody& q,
                              const QuadConfig& cfg) {
  if (!(p >= 1.0)) throw InputError("cap_ball_closed_form: p >= 1 required");
  if (q.dim() != m) throw InputError("cap_ball_closed_form: q dimension mismatch");
  if (p >= n) return Estimate::exact(0.0);
  const SphereRule outer = cfg.outer_rule(n, m);
  const Estimate d = d_np(q, n, p, outer, cfg.inner_level);
  const double jstar = p == 1.0 ? 1.0 : profile_optimal_j(n, p);
  return est_scale(d, n * unit_ball_volume(n) * jstar);
}

Estimate cap_lower(const StarBody& k, const QBody& q, double p, const QuadConfig& cfg) {
  const int n = k.dim();
  if (!(p >= 1.0 && p < n)) throw InputError("cap_lower: p in [1, n) required");
  const Estimate ball = cap_ball_closed_form(n, q.dim(), p, q, cfg);
  const Estimate vol = k.volume(cfg.inner_level);
  const Estimate ratio =
      est_pow(est_scale(vol, 1.0 / unit_ball_volume(n)), (n - p) / double(n));
  return est_mul(ball, ratio);
}

Estimate cap_upper(const StarBody& k, const QBody& q, double p, const QuadConfig& cfg) {
  const int n = k.dim();
  if (!(p >= 1.0 && p < n)) throw InputError("cap_upper: p in [1, n) required");
  const Estimate ph = phi(k, q, p, cfg);
  const double jstar = p == 1.0 ? 1.0 : profile_optimal_j(n, p);
  return est_scale(ph, jstar);
}

Estimate cap_p_upper_radial(const StarBody& k, double p, int inner_level) {
  const int n = k.dim();
  if (!(p >= 1.0 && p < n)) throw InputError("cap_p_upper_radial: p in [1, n) required");
  const Estimate sp = sp_surface(k, p, inner_level);
  const double jstar = p == 1.0 ? 1.0 : profile_optimal_j(n, p);
  return est_scale(sp, jstar);
}

CapacitySandwich cap_sandwich(const StarBody& k, const QBody& q, double p,
                              const QuadConfig& cfg) {
  CapacitySandwich s;
  s.lower = cap_lower(k, q, p, cfg);
  s.upper = cap_upper(k, q, p, cfg);
  const double slack = 3.0 * std::hypot(s.lower.err, s.upper.err) +
                       1e-9 * std::abs(s.upper.value);
  if (s.lower.value > s.upper.value + slack) {
    std::ostringstream os;
    os << "capacity sandwich inverted: lower " << s.lower.value << " > upper "
       << s.upper.value << " (combined slack " << slack << ")";
    throw NumericalError(os.str());
  }
  return s;
}

}  // namespace affcap
