#include "riqs/lattice.hpp"

#include <cmath>
#include <limits>

namespace riqs {
namespace lattice {

static constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

static double log_sum_exp(double a, double b) {
  if (a == NEG_INF) return b;
  if (b == NEG_INF) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

StepProbabilities transition_probs(const LatticeParams& p) {
  const double pr = p.p();
  const double g = std::exp(-p.beta * p.E);
  return {pr * g / (1.0 + g), 1.0 - pr, pr / (1.0 + g)};
}

double WalkDistribution::prob(long offset) const {
  if (offset < -n || offset > n) return 0.0;
  return std::exp(log_prob[offset + n]);
}

double WalkDistribution::mean() const {
  double m = 0.0;
  for (long k = -n; k <= n; ++k) m += k * prob(k);
  return m;
}

double WalkDistribution::variance() const {
  double m = mean(), v = 0.0;
  for (long k = -n; k <= n; ++k) v += (k - m) * (k - m) * prob(k);
  return v;
}

double WalkDistribution::log_tail_geq(double x) const {
  double acc = NEG_INF;
  long start = static_cast<long>(std::ceil(x - 1e-12));
  for (long k = std::max(start, -n); k <= n; ++k)
    acc = log_sum_exp(acc, log_prob[k + n]);
  return acc;
}

double WalkDistribution::standardized_cdf_distance() const {
  const double m = mean(), sd = std::sqrt(variance());
  double cdf = 0.0, worst = 0.0;
  for (long k = -n; k <= n; ++k) {
    cdf += prob(k);
    // continuity correction: compare at the midpoint k + 1/2
    double z = (double(k) + 0.5 - m) / sd;
    double normal = 0.5 * std::erfc(-z / std::sqrt(2.0));
    worst = std::max(worst, std::abs(cdf - normal));
  }
  return worst;
}

WalkDistribution exact_distribution(const LatticeParams& p, long n) {
  if (n < 0) throw Error("exact_distribution: negative step count");
  auto [pm, p0, pp] = transition_probs(p);
  const double lm = pm > 0 ? std::log(pm) : NEG_INF;
  const double l0 = p0 > 0 ? std::log(p0) : NEG_INF;
  const double lp = pp > 0 ? std::log(pp) : NEG_INF;

  WalkDistribution d;
  d.n = n;
  d.log_prob.assign(2 * n + 1, NEG_INF);
  d.log_prob[n] = 0.0;  // delta at the origin
  std::vector<double> next(2 * n + 1, NEG_INF);
  for (long step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), NEG_INF);
    for (long i = 0; i < 2 * n + 1; ++i) {
      if (d.log_prob[i] == NEG_INF) continue;
      if (i > 0) next[i - 1] = log_sum_exp(next[i - 1], d.log_prob[i] + lm);
      next[i] = log_sum_exp(next[i], d.log_prob[i] + l0);
      if (i < 2 * n) next[i + 1] = log_sum_exp(next[i + 1], d.log_prob[i] + lp);
    }
    d.log_prob.swap(next);
  }
  return d;
}

Transport transport(const LatticeParams& p) {
  Transport t;
  const double pr = p.p();
  const double th = std::tanh(p.beta * p.E / 2.0);
  t.drift = pr / p.tau * th;
  t.diffusion = pr / (2.0 * p.tau) * (1.0 - pr * th * th);
  const double s = std::sin(p.lambda * p.tau);
  t.mobility = p.beta * s * s / (2.0 * p.tau);
  return t;
}

double einstein_diffusion_limit(const LatticeParams& base, double f_start) {
  auto d_at = [&](double f) {
    LatticeParams q = base;
    q.E = f;
    q.F = f;
    return transport(q).diffusion;
  };
  // D(F) is even in F to leading correction; one Richardson step on (F, F/2)
  double d1 = d_at(f_start), d2 = d_at(f_start / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

double legendre_numeric(const std::function<double(double)>& e, double x) {
  // sup_alpha (alpha x - e(alpha)): the objective is concave; golden-section
  // search on an expanding bracket
  auto f = [&](double a) { return a * x - e(a); };
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    if (f(lo) < f(lo + 1e-6)) break;
    lo *= 2.0;
  }
  for (int i = 0; i < 80; ++i) {
    if (f(hi) < f(hi - 1e-6)) break;
    hi *= 2.0;
  }
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi));
       ++i) {
    if (f(c) > f(d)) {
      hi = d;
      d = c;
      c = hi - gr * (hi - lo);
    } else {
      lo = c;
      c = d;
      d = lo + gr * (hi - lo);
    }
  }
  return f((lo + hi) / 2.0);
}

RateFunction rate_function(const LatticeParams& params) {
  const double pr = params.p();
  const double be = params.beta * params.E;
  auto efun = [pr, be](double alpha) {
    return std::log((1.0 - pr) +
                    pr * std::cosh(be / 2.0 + alpha) / std::cosh(be / 2.0));
  };

  RateFunction rf;
  rf.e = efun;
  if (pr < 1.0) {
    // Legendre-Fenchel transform in closed form: the supremum is at
    // u = artanh(x) + arcsinh(x / (a sqrt(1-x^2))) with u = beta E/2 + alpha,
    // which gives I = alpha x - log((1-p)(1+R)/(1-x^2)),
    // R(x) = sqrt(x^2 + a^2 (1-x^2)).
    const double a = pr / ((1.0 - pr) * std::cosh(be / 2.0));
    rf.i = [a, be, pr](double x) {
      if (x < -1.0 || x > 1.0) return std::numeric_limits<double>::infinity();
      if (std::abs(x) == 1.0) {
        // boundary limit: only the extreme path survives
        double g = std::exp(-be);
        double step = x > 0 ? pr / (1.0 + g) : pr * g / (1.0 + g);
        return -std::log(step);
      }
      double r = std::sqrt(x * x + a * a * (1.0 - x * x));
      double alpha = -be / 2.0 + 0.5 * std::log((1.0 + x) / (1.0 - x)) +
                     std::log((x + r) / (a * std::sqrt(1.0 - x * x)));
      return alpha * x - std::log((1.0 - pr) * (1.0 + r) / (1.0 - x * x));
    };
  } else {
    // degenerate p = 1: fall back to the direct Legendre transform
    rf.i = [efun](double x) {
      if (x < -1.0 || x > 1.0) return std::numeric_limits<double>::infinity();
      return legendre_numeric(efun, x);
    };
  }
  return rf;
}

double EmpiricalWalk::mean() const {
  double m = 0.0;
  for (size_t i = 0; i < counts.size(); ++i)
    m += double(long(i) - n) * counts[i];
  return m / double(trials);
}

double EmpiricalWalk::variance() const {
  double m = mean(), v = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    double d = double(long(i) - n) - m;
    v += d * d * counts[i];
  }
  return v / double(trials);
}

double EmpiricalWalk::ks_distance(const WalkDistribution& exact) const {
  double c_emp = 0.0, c_ex = 0.0, worst = 0.0;
  for (long k = -n; k <= n; ++k) {
    c_emp += double(counts[k + n]) / double(trials);
    c_ex += exact.prob(k);
    worst = std::max(worst, std::abs(c_emp - c_ex));
  }
  return worst;
}

EmpiricalWalk simulate_walk(const LatticeParams& p, long n, long trials,
                            uint64_t seed) {
  if (trials < 1) throw Error("simulate_walk: need at least one trial");
  auto [pm, p0, pp] = transition_probs(p);
  EmpiricalWalk w;
  w.n = n;
  w.trials = trials;
  w.counts.assign(2 * n + 1, 0);
  for (long t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<uint64_t>(t));
    long pos = 0;
    for (long s = 0; s < n; ++s) {
      double u = rng.next_double();
      if (u < pm)
        --pos;
      else if (u >= pm + p0)
        ++pos;
    }
    ++w.counts[pos + n];
  }
  return w;
}

}  // namespace lattice
}  // namespace riqs
