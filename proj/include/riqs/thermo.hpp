#pragma once

#include "riqs/dynamics.hpp"

namespace riqs {
namespace thermo {

// Tr[(rho_sys (x) rho_env) X] on the product space.
double product_expectation(const CMatrix& rho_sys, const CMatrix& rho_env,
                           const CMatrix& x);

// \int_0^tau e^{i s h} X e^{-i s h} ds, evaluated exactly in the eigenbasis
// of h: entry (a,b) is multiplied by (e^{i tau (E_a-E_b)} - 1)/(i (E_a-E_b)),
// with the diagonal limit tau.
CMatrix time_ordered_integral(const CMatrix& h, const CMatrix& x, double tau);

// Energy flux observable of one interaction block, Phi = [iv, h_env],
// integrated over the interaction window in the coupled eigenbasis.
CMatrix integrated_flux_observable(const RIModel& model);

// Probe energy gain observable e^{i tau h} h_env e^{-i tau h} - h_env
// (equal to the integrated flux; kept as the cross-check route).
CMatrix probe_gain_observable(const RIModel& model);

// delta E(n): two-trace work increment for the step rho_prev -> L_n(rho_prev)
// followed by the switch to model_next.
double work_step(const DensityMatrix& rho_prev, const RIModel& model_n,
                 const RIModel& model_next);

struct ThermoLedger {
  std::vector<double> work_steps;    // delta E(n), n = 1 .. N-1
  double total_work = 0.0;           // sum of work_steps
  std::vector<double> probe_gains;   // energy gained by probe k, k = 1 .. N
  std::vector<double> entropy_increments;  // -beta_k * probe_gain_k
  double entropy_change = 0.0;       // Delta S(N) incl. reference boundary
  double bookkeeping_defect = 0.0;   // work ledger vs energy ledger
};

// Replays a trajectory's step records; rho_ref is the reference state used
// in the relative-entropy boundary term. Requires recorded probe inverse
// temperatures (beta_env) on every step for the entropy columns.
ThermoLedger replay(const dynamics::Trajectory& traj, const CMatrix& rho_ref);

// Mean work per unit time at the invariant state of an ideal schedule,
// (1/tau) Tr[(rho_+ (x) rho_E)(v - e^{i tau h} v e^{-i tau h})]; with
// flux_form the same quantity through the integrated flux observable.
double mean_work_ideal(const RIModel& model, const DensityMatrix& rho_plus,
                       bool flux_form = false);

// Random i.i.d. schedule with finite support: evaluates the mixture
// expectation exactly at the invariant state of E[L].
double mean_work_random(const std::vector<std::pair<RIModel, double>>& atoms,
                        const DensityMatrix& rho_plus, bool flux_form = false);

// Ideal entropy production rate beta * Delta W (flux form); throws unless
// the probe state is Gibbs at the recorded beta_env.
double entropy_production_ideal(const RIModel& model,
                                const DensityMatrix& rho_plus);

// Random case: E[beta * flux expectation] / E[tau] at the invariant state
// of E[L].
double entropy_production_random(
    const std::vector<std::pair<RIModel, double>>& atoms,
    const DensityMatrix& rho_plus);

struct BeamFluxReport {
  std::vector<double> fluxes;              // phi_j, one per beam
  std::vector<DensityMatrix> pre_states;   // system state entering beam j
  double mean_work = 0.0;                  // Delta W via the work route
  double entropy_rate = 0.0;               // Delta S = -sum_j beta_j phi_j
  double work_identity_defect = 0.0;       // |Delta W + sum_j phi_j|
};

// Deterministic K-beam cycle: beam j's flux is evaluated in the stationary
// state seen at the start of its interaction slot (the fixed point of the
// cyclic composition ending with beam j-1).
BeamFluxReport beam_fluxes_deterministic(const std::vector<RIModel>& beams);

// Uniformly random beam selection: all fluxes are evaluated at the single
// invariant state of E[L] = (1/K) sum_j L_j.
BeamFluxReport beam_fluxes_random_uniform(const std::vector<RIModel>& beams);

struct KineticCoefficients {
  std::vector<std::vector<double>> l;          // L_jk
  std::vector<std::vector<double>> asymmetry;  // |L_jk - L_kj|
  double richardson_spread = 0.0;  // max |step - half-step| difference seen
};

// L_jk = d phi_j / d X_k at X = 0 with thermodynamic forces X_k = beta -
// beta_k, by central differences with one Richardson extrapolation step.
KineticCoefficients kinetic_coefficients(
    const std::function<std::vector<double>(const std::vector<double>&)>&
        flux_of_betas,
    double beta, int n_beams, double h);

}  // namespace thermo
}  // namespace riqs
