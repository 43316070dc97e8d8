#pragma once

#include "riqs/rdm.hpp"
#include "riqs/rng.hpp"
#include "riqs/spectral.hpp"

namespace riqs {
namespace measure {

// Projective measurement of a probe observable after each interaction. The
// probe reference state is model.rho_env (the incoming state omega_in).
struct MeasurementSetup {
  RIModel model;
  CMatrix m_op;  // Hermitian observable on the probe

  int dim_sys() const { return model.dim_sys(); }
};

struct Outcome {
  double value;   // eigenvalue of the measurement operator
  CMatrix projector;  // spectral projector on the probe
};

// Distinct eigenvalues of the measurement operator with their spectral
// projectors (eigenvalues closer than tol are merged).
std::vector<Outcome> outcomes(const CMatrix& m_op, double tol = 1e-10);

// Outcome-indexed family of sub-normalized completely positive maps
// I_m(rho) = Tr_P[(1 (x) E_m) U (rho (x) omega_in) U^* (1 (x) E_m)],
// summing to the measurement-free channel.
struct Instrument {
  std::vector<Outcome> outs;
  std::vector<Superoperator> maps;   // one per outcome
  Superoperator channel;             // sum of the maps

  Superoperator set_map(const std::vector<int>& outcome_indices) const;
};

Instrument build_instrument(const MeasurementSetup& setup);

// P(X_1 in S_1, ..., X_n in S_n) = tr(I_{S_n} ... I_{S_1}(rho0)); sets are
// lists of outcome indices, applied in time order (S_1 first).
double joint_probability(const Instrument& inst, const DensityMatrix& rho0,
                         const std::vector<std::vector<int>>& sets);

struct Statistics {
  std::vector<double> frequencies;  // f_m per outcome
  double mean;                      // mu_infinity
  DensityMatrix invariant_state;
};

// Almost-sure outcome frequencies f_m = tr[(rho_+ (x) omega_in) e^{i tau h}
// (1 (x) E_m) e^{-i tau h}] and the asymptotic mean. Requires (E).
Statistics asymptotic_statistics(const MeasurementSetup& setup);

// Samples measurement trajectories; returns empirical frequencies and their
// standard errors over the trials.
struct SampledFrequencies {
  std::vector<double> frequencies;
  std::vector<double> std_errors;
};
SampledFrequencies sample_frequencies(const Instrument& inst,
                                      const DensityMatrix& rho0, int n_steps,
                                      int trials, uint64_t seed);

struct CorrelationDecay {
  std::vector<int> gaps;          // m - l
  std::vector<double> lhs;        // |P(A and B) - P(A) P(B)|
  double fitted_gamma = 0.0;      // decay rate from log-linear fit
  double channel_gamma = 0.0;     // -log |second eigenvalue| of the channel
};

// Exact correlation between the events {X_l in A} and {X_m in B} as the gap
// m - l sweeps gaps, with a log-linear fit of the decay rate.
CorrelationDecay correlation_decay(const Instrument& inst,
                                   const DensityMatrix& rho0, int l,
                                   const std::vector<int>& set_a,
                                   const std::vector<int>& set_b,
                                   const std::vector<int>& gaps);

// P(X_n in S eventually) through Riesz projections of the channel and the
// set map at eigenvalue 1; exactly 0 when the set map's spectral radius is
// below 1 - 1e-8.
double eventually_probability(const Instrument& inst,
                              const DensityMatrix& rho0,
                              const std::vector<int>& set_s);

struct LdpResult {
  std::vector<double> alphas;
  std::vector<double> log_mgf;      // Lambda(alpha)
  std::vector<bool> simple;         // leading eigenvalue simple at the node
  // Legendre transform on a grid of x values
  std::vector<double> xs;
  std::vector<double> rate;         // Lambda^*(x)
  double quadratic_coefficient = 0.0;  // 1/(2 Lambda''(0)) at the mean
};

// Lambda(alpha) = log spectral radius of the deformed channel
// sum_m e^{alpha m} I_m, and its Legendre transform by monotone bracketing
// of Lambda'(alpha) = x (bisection; the grid is extended as needed).
LdpResult ldp(const Instrument& inst, const std::vector<double>& alphas,
              const std::vector<double>& xs);

// Two-level scatterer / two-level probe exchange model with both
// Hamiltonians sigma_z; incoming probe state diag(p, 1-p).
MeasurementSetup spin_spin_setup(double p, double lambda, double tau,
                                 const CMatrix& m_op);

// Closed-form one-step operator for a probe operator X, as a 4x4 matrix in
// the row-major matrix-unit basis {E_11, E_12, E_21, E_22}; equals the
// matrix of A -> Tr_P[(1 (x) omega_in) U^* (A (x) X) U].
CMatrix spin_spin_explicit(double p, const CMatrix& x, double lambda,
                           double tau);

}  // namespace measure
}  // namespace riqs
