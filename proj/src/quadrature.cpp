#include "affcap/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace affcap {

namespace {

int g_max_threads = 0;  // 0 = hardware default

int effective_threads() {
  if (g_max_threads > 0) return g_max_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

SphereRule circle_rule(int level) {
  SphereRule r;
  r.dim = 2;
  r.kind = RuleKind::ProductGauss;
  r.level = level;
  const int n = 64 << std::max(0, level);
  r.nodes.resize(2, n);
  r.weights = Eigen::VectorXd::Constant(n, 2.0 * M_PI / n);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    r.nodes.col(i) << std::cos(a), std::sin(a);
  }
  return r;
}

// Gauss-Legendre in the polar cosine times a uniform azimuth grid.
SphereRule s2_rule(int level) {
  SphereRule r;
  r.dim = 3;
  r.kind = RuleKind::ProductGauss;
  r.level = level;
  const int np = 2 << std::max(0, level);
  const int na = 2 * np;
  std::vector<double> t, wt;
  gauss_legendre(np, t, wt);
  r.nodes.resize(3, np * na);
  r.weights.resize(np * na);
  int k = 0;
  for (int i = 0; i < np; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
    for (int j = 0; j < na; ++j, ++k) {
      const double a = 2.0 * M_PI * (j + 0.5) / na;
      r.nodes.col(k) << s * std::cos(a), s * std::sin(a), t[i];
      r.weights[k] = wt[i] * 2.0 * M_PI / na;
    }
  }
  return r;
}

// S^3 as (t, sqrt(1-t^2) * omega): Gauss-Chebyshev (2nd kind) in t crossed
// with an S^2 rule.
SphereRule s3_rule(int level) {
  SphereRule r;
  r.dim = 4;
  r.kind = RuleKind::ProductGauss;
  r.level = level;
  const SphereRule base = s2_rule(level);
  const int nt = 2 << std::max(0, level);
  const int nb = static_cast<int>(base.node_count());
  r.nodes.resize(4, nt * nb);
  r.weights.resize(nt * nb);
  int k = 0;
  for (int i = 1; i <= nt; ++i) {
    const double ang = M_PI * i / (nt + 1.0);
    const double t = std::cos(ang);
    const double s = std::sin(ang);
    const double wt = M_PI / (nt + 1.0) * s * s;
    for (int j = 0; j < nb; ++j, ++k) {
      r.nodes(0, k) = t;
      r.nodes.col(k).tail(3) = s * base.nodes.col(j);
      r.weights[k] = wt * base.weights[j];
    }
  }
  return r;
}

constexpr int kHaltonBases[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                23, 29, 31, 37, 41, 43, 47, 53};

std::int64_t stochastic_node_target(int level) {
  return 1000LL << (2 * std::max(0, level));
}

// Fill a stochastic rule from per-replicate uniform samples in [0,1)^d
// mapped through the inverse normal CDF, normalized, antithetic.
SphereRule build_stochastic(int d, int level, std::uint64_t seed, bool qmc) {
  SphereRule r;
  r.dim = d;
  r.kind = qmc ? RuleKind::RandomizedQmc : RuleKind::MonteCarlo;
  r.level = level;
  r.seed = seed;
  r.replicates = qmc ? 3 : 1;
  if (qmc && d > static_cast<int>(std::size(kHaltonBases)))
    throw InputError("qmc rule: dimension exceeds Halton base table");

  const std::int64_t target = stochastic_node_target(level);
  const std::int64_t pairs_per_rep =
      std::max<std::int64_t>(1, target / (2 * r.replicates));
  const std::int64_t per_rep = 2 * pairs_per_rep;
  const std::int64_t total = per_rep * r.replicates;
  r.nodes.resize(d, total);
  r.weights = Eigen::VectorXd::Constant(total, sphere_surface(d) / double(total));

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd g(d), shift(d);
  std::int64_t col = 0;
  for (int rep = 0; rep < r.replicates; ++rep) {
    for (int j = 0; j < d; ++j) shift[j] = unif(gen);
    for (std::int64_t i = 0; i < pairs_per_rep; ++i) {
      for (int j = 0; j < d; ++j) {
        double u = qmc ? detail::radical_inverse(std::uint64_t(i) + 1, kHaltonBases[j])
                       : unif(gen);
        if (qmc) {
          u += shift[j];
          u -= std::floor(u);
        }
        u = std::min(std::max(u, 1e-16), 1.0 - 1e-16);
        g[j] = detail::inverse_normal_cdf(u);
      }
      double nrm = g.norm();
      if (nrm < 1e-300) {
        g.setZero();
        g[0] = 1.0;
        nrm = 1.0;
      }
      r.nodes.col(col++) = g / nrm;
      r.nodes.col(col++) = -g / nrm;
    }
  }
  return r;
}

}  // namespace

SphereRule gauss_rule(int d, int level) {
  if (level < 0) throw InputError("gauss_rule: level must be >= 0");
  switch (d) {
    case 2:
      return circle_rule(level);
    case 3:
      return s2_rule(level);
    case 4:
      return s3_rule(level);
    default:
      throw InputError("gauss_rule: product rules exist for d in {2,3,4}");
  }
}

SphereRule mc_rule(int d, int level, std::uint64_t seed) {
  if (d < 2) throw InputError("mc_rule: dimension must be >= 2");
  return build_stochastic(d, level, seed, false);
}

SphereRule qmc_rule(int d, int level, std::uint64_t seed) {
  if (d < 2) throw InputError("qmc_rule: dimension must be >= 2");
  return build_stochastic(d, level, seed, true);
}

SphereRule sphere_rule(int d, int level, std::uint64_t seed) {
  if (d < 2) throw InputError("sphere_rule: dimension must be >= 2");
  if (d <= 4) return gauss_rule(d, level);
  return qmc_rule(d, level, seed);
}

SphereRule coarser_rule(const SphereRule& rule) {
  const int lvl = std::max(0, rule.level - 1);
  switch (rule.kind) {
    case RuleKind::ProductGauss:
      return gauss_rule(rule.dim, lvl);
    case RuleKind::MonteCarlo:
      return mc_rule(rule.dim, lvl, rule.seed + 1);
    case RuleKind::RandomizedQmc:
      return qmc_rule(rule.dim, lvl, rule.seed + 1);
  }
  throw NumericalError("coarser_rule: unknown kind");
}

double pairwise_sum(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  std::vector<double> buf(x);
  std::size_t n = buf.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) {
      buf[half] = buf[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return buf[0];
}

void set_max_threads(int n) { g_max_threads = n < 0 ? 0 : n; }
int max_threads() { return effective_threads(); }

std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n);
  const int nt = std::min<std::size_t>(effective_threads(), n == 0 ? 1 : n);
  if (nt <= 1 || n < 2048) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  const std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      try {
        for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
      } catch (...) {
        std::scoped_lock lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

double integrate_nodes(const SphereFn& f, const SphereRule& rule) {
  const std::size_t n = rule.node_count();
  std::vector<double> terms = parallel_map(n, [&](std::size_t i) {
    const double v = f(rule.nodes.col(i));
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand non-finite at node " << i << " = ["
         << rule.nodes.col(i).transpose() << "]";
      throw IntegrandError(os.str());
    }
    return rule.weights[i] * v;
  });
  return pairwise_sum(terms);
}

namespace {

// Replicate means and spread for stochastic rules.
Estimate stochastic_estimate(const SphereFn& f, const SphereRule& rule) {
  const std::int64_t n = rule.node_count();
  std::vector<double> terms = parallel_map(n, [&](std::size_t i) {
    const double v = f(rule.nodes.col(i));
    if (!std::isfinite(v)) throw IntegrandError("integrand non-finite at stochastic node");
    return rule.weights[i] * v;
  });

  Estimate e;
  e.nodes_used = n;
  e.seed = rule.seed;
  if (rule.kind == RuleKind::RandomizedQmc && rule.replicates > 1) {
    const std::int64_t per = n / rule.replicates;
    std::vector<double> means(rule.replicates);
    for (int r = 0; r < rule.replicates; ++r) {
      std::vector<double> block(terms.begin() + r * per, terms.begin() + (r + 1) * per);
      means[r] = rule.replicates * pairwise_sum(block);
    }
    double m = 0.0;
    for (double v : means) m += v;
    m /= rule.replicates;
    double s2 = 0.0;
    for (double v : means) s2 += (v - m) * (v - m);
    s2 /= (rule.replicates - 1);
    e.value = m;
    e.err = std::sqrt(s2 / rule.replicates);
  } else {
    // Antithetic pairs are the independent sampling unit.
    const std::int64_t pairs = n / 2;
    std::vector<double> pm(pairs);
    for (std::int64_t i = 0; i < pairs; ++i)
      pm[i] = (terms[2 * i] + terms[2 * i + 1]) * (double(n) / 2.0);
    const double total = pairwise_sum(terms);
    double m = total;
    double s2 = 0.0;
    for (double v : pm) s2 += (v - m) * (v - m);
    s2 /= pairs > 1 ? (pairs - 1) : 1;
    e.value = total;
    e.err = std::sqrt(s2 / pairs);
  }
  return e;
}

}  // namespace

Estimate integrate_sphere(const SphereFn& f, const SphereRule& rule) {
  if (rule.kind != RuleKind::ProductGauss) return stochastic_estimate(f, rule);
  Estimate e;
  e.value = integrate_nodes(f, rule);
  e.nodes_used = rule.node_count();
  if (rule.level > 0) {
    const SphereRule coarse = coarser_rule(rule);
    const double cv = integrate_nodes(f, coarse);
    e.err = std::abs(e.value - cv);
    e.nodes_used += coarse.node_count();
  } else {
    e.err = 0.0;
  }
  return e;
}

Estimate neg_power_moment(const SphereFn& h, int d, const SphereRule& rule) {
  auto integrand = [&h, d](const Eigen::VectorXd& u) {
    const double hv = h(u);
    if (!(hv > kPositivityFloor)) {
      std::ostringstream os;
      os << "support oracle violated the positivity floor (h = " << hv
         << ") at node [" << u.transpose() << "]";
      throw IntegrandError(os.str());
    }
    return std::pow(hv, -double(d));
  };
  Estimate e = integrate_sphere(integrand, rule);
  return est_scale(e, 1.0 / d);
}

namespace detail {

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * double(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Acklam's rational approximation plus one Halley refinement.
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw NumericalError("inverse_normal_cdf: p out of (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / M_SQRT2) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace detail

}  // namespace affcap
