#pragma once

#include <functional>

#include "riqs/qops.hpp"
#include "riqs/rng.hpp"

namespace riqs {
namespace lattice {

// Tight-binding electron in a static field, kicked by a beam of two-level
// atoms. The diagonal sector of the reduced dynamics is an exact classical
// walk on the Wannier ladder index with a three-point step distribution.
struct LatticeParams {
  double E = 1.0;       // atomic Bohr frequency
  double F = 0.5;       // field strength > 0
  double lambda = 0.4;  // coupling
  double tau = 1.0;     // interaction time
  double beta = 1.0;    // atomic inverse temperature

  double omega0() const {
    return std::sqrt((E - F) * (E - F) + 4.0 * lambda * lambda);
  }
  double p() const {
    double w = omega0();
    if (w == 0.0) return 0.0;
    double s = std::sin(w * tau / 2.0);
    return 4.0 * lambda * lambda / (w * w) * s * s;
  }
};

struct StepProbabilities {
  double down, stay, up;  // p_-, p_0, p_+
};

StepProbabilities transition_probs(const LatticeParams& p);

struct WalkDistribution {
  long n = 0;                     // step count; support is [-n, n]
  std::vector<double> log_prob;   // log probabilities, index 0 <-> offset -n
  double prob(long offset) const;
  double mean() const;
  double variance() const;
  // P(X >= x), evaluated in log space
  double log_tail_geq(double x) const;
  // sup-distance between the standardized CDF and the standard normal CDF,
  // evaluated with midpoint continuity correction
  double standardized_cdf_distance() const;
};

// Exact n-fold convolution of the trinomial step, carried in log space so
// deep tails stay meaningful.
WalkDistribution exact_distribution(const LatticeParams& p, long n);

struct Transport {
  double drift;       // v_d
  double diffusion;   // D
  double mobility;    // mu at E = F
};

Transport transport(const LatticeParams& p);

// Richardson-extrapolated limit of D(E=F, F) as F -> 0; the Einstein
// relation asserts this equals mobility / beta.
double einstein_diffusion_limit(const LatticeParams& base, double f_start);

struct RateFunction {
  std::function<double(double)> e;  // scaled cumulant generating function
  std::function<double(double)> i;  // Legendre-Fenchel transform
};

// e(alpha) = log((1-p) + p cosh(beta E/2 + alpha)/cosh(beta E/2)); I by the
// closed form when p < 1 and by direct numerical Legendre transform in the
// degenerate p = 1 case.
RateFunction rate_function(const LatticeParams& p);

// Numerical sup_alpha (alpha x - e(alpha)) used as the cross-check route.
double legendre_numeric(const std::function<double(double)>& e, double x);

struct EmpiricalWalk {
  std::vector<long> counts;  // index 0 <-> offset -n
  long n = 0;
  long trials = 0;
  double mean() const;
  double variance() const;
  double ks_distance(const WalkDistribution& exact) const;
};

EmpiricalWalk simulate_walk(const LatticeParams& p, long n, long trials,
                            uint64_t seed);

}  // namespace lattice
}  // namespace riqs
