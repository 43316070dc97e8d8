#pragma once

#include <optional>

#include "riqs/rdm.hpp"
#include "riqs/spectral.hpp"

namespace riqs {
namespace maser {

// One cavity mode (truncated at n_trunc photons) driven by a beam of
// two-level atoms through the rotating-wave coupling (a^* (x) b + a (x) b^*)/2.
struct MaserParams {
  double E = 1.0;       // cavity frequency
  double E0 = 1.0;      // atomic Bohr frequency
  double lambda = 0.5;  // coupling
  double tau = 1.0;     // interaction time
  double beta = 1.0;    // atomic inverse temperature
  int n_trunc = 10;     // photon-number cutoff

  double delta() const { return E - E0; }
  double eta() const {
    double x = delta() * tau / (2.0 * std::numbers::pi);
    return x * x;
  }
  double xi() const {
    double x = lambda * tau / (2.0 * std::numbers::pi);
    return x * x;
  }
  double beta_star() const { return beta * E0 / E; }
};

enum class Resonance { NonResonant, SimplyResonant, FullyResonant };

struct RabiStructure {
  std::vector<long> resonances;  // R(eta,xi) within [1, n_max]
  // contiguous sectors [first, last] covering {0..n_max}, split at resonances
  std::vector<std::pair<long, long>> sectors;
  Resonance classification = Resonance::NonResonant;
  bool degenerate = false;
  bool exact_arithmetic = true;  // false when resonances were detected by a
                                 // floating tolerance test
};

// Enumerates Rabi resonances: n in [1, n_max] with xi*n + eta a perfect
// square. Exact rational arithmetic when eta and xi are given as fractions;
// the floating-point entry tests dist(xi n + eta, nearest square) < 1e-9 and
// flags the result approximate.
RabiStructure rabi_resonances(long eta_num, long eta_den, long xi_num,
                              long xi_den, long n_max);
RabiStructure rabi_resonances(double eta, double xi, long n_max);

// Truncated creation/annihilation operators, a |n> = sqrt(n) |n-1>.
CMatrix lowering(int n_trunc);
CMatrix raising(int n_trunc);
CMatrix number_op(int n_trunc);

RIModel build(const MaserParams& p);

struct JcChannel {
  std::vector<CMatrix> kraus;  // V_00, V_01, V_10, V_11 on the cavity
  Superoperator channel;
  // trace defect of the dual on the identity, restricted to states supported
  // strictly below the top two levels (zero there; the truncation only leaks
  // through the boundary populations)
  double boundary_leakage = 0.0;
};

// Closed-form one-step cavity channel via the Rabi-angle functions
// C(N), S(N); cross-checkable against the numerically assembled map.
JcChannel jc_rdm(const MaserParams& p);

// D(n) of the diagonal-sector birth/death form; zero exactly on {0} u R.
double d_coefficient(const MaserParams& p, long n);

// Matrix of the channel restricted to the d-th gauge sector, acting on the
// off-diagonal strip x_n = rho_{n, n+d}; also reports the largest matrix
// element mapped outside the strip (gauge-invariance defect).
struct GaugeBlock {
  CMatrix block;          // (n_trunc+1-|d|)^2 action on the strip
  double cross_leakage;   // max |element| reaching other strips
};
GaugeBlock gauge_block(const Superoperator& channel, int d);

// Extracts the d-th strip of an operator (vector of length dim-|d|).
CVector strip_of(const CMatrix& x, int d);
CMatrix embed_strip(const CVector& v, int d, int dim);

// Per-sector thermal states e^{-beta* E N} P_k / tr on each Rabi sector.
// Throws for beta <= 0 when the sector is terminated by the cutoff rather
// than a resonance (no invariant state exists there). Reports the weight the
// untruncated Gibbs tail would carry beyond the cutoff.
struct SectorStates {
  std::vector<DensityMatrix> states;
  double cutoff_tail_weight = 0.0;
};
SectorStates sector_invariant_states(const MaserParams& p,
                                     const RabiStructure& structure);

struct RelaxationReport {
  std::vector<double> initial_weights;   // rho0(P_k)
  std::vector<double> weight_drift;      // max_n |rho_n(P_k) - rho_0(P_k)|
  DensityMatrix ergodic_mean;
  DensityMatrix predicted_limit;         // sum_k rho0(P_k) rho^(k)
  double mean_distance;                  // ||ergodic mean - predicted||_1
};

// Ergodic-mean relaxation towards the sector mixture. Refuses degenerate
// resonance structures unless the extra phase condition
// e^{i(tau E + xi pi) d} != 1 holds for all admissible d.
RelaxationReport relax_in_mean(const MaserParams& p,
                               const RabiStructure& structure,
                               const DensityMatrix& rho0, int n_terms);

}  // namespace maser
}  // namespace riqs
