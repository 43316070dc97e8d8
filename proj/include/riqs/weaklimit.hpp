#pragma once

#include "riqs/rdm.hpp"
#include "riqs/spectral.hpp"

namespace riqs {
namespace weaklimit {

// Small system coupled in sequence to (n+1)-level probes with level offsets
// delta_1..delta_n and system operators V_1..V_n through
// W = sum_i V_i^* (x) a_i + V_i (x) a_i^*.
struct ChainCoupling {
  CMatrix h_sys;
  std::vector<double> deltas;
  std::vector<CMatrix> vs;
  double beta = 1.0;
  double tau = 1.0;
  double lambda = 0.1;

  int dim_sys() const { return static_cast<int>(h_sys.rows()); }
  int dim_probe() const { return static_cast<int>(deltas.size()) + 1; }
  double z_beta() const;
  // free Hamiltonian and coupling on the product space (system factor slow)
  CMatrix h0_full() const;
  CMatrix w_full() const;
  // probe Gibbs state diag(1, e^{-beta delta_1}, ...)/Z
  CMatrix probe_state() const;
  RIModel to_model(double lambda_override, double tau_override) const;
};

// Heisenberg one-step transfer operator on system observables,
// U_beta(lambda, tau)(B) = Z^{-1} sum_{l,m} e^{-beta delta_m} U_lm^* B U_lm
// with probe-index blocks U_lm of e^{-i tau (H0 + lambda W)}. Equals the
// dual of the Schroedinger reduced map for the same model.
Superoperator heisenberg_transfer(const ChainCoupling& c);
Superoperator heisenberg_transfer(const ChainCoupling& c, double lambda,
                                  double tau);

struct SecondOrder {
  CMatrix f_plus, f_minus;  // F(tau), F(-tau) on the product space
  CMatrix g_plus, g_minus;  // G(tau), G(-tau)
  Superoperator t_beta;     // second-order coefficient of U_beta in lambda^2
};

// First and second order terms of e^{-i tau (H0 + lambda W)} as exact
// time-ordered integrals in the H0 eigenbasis (divided differences, analytic
// limits at coinciding eigenvalues), and the operator T_beta with
// U_beta = U00(0) + lambda^2 Z^{-1} T_beta + O(lambda^4 tau^4).
// Requires W off-diagonal with respect to the probe vacuum projection.
SecondOrder second_order_terms(const ChainCoupling& c);

struct Generators {
  Superoperator free_step;        // U00(0) = e^{i tau [h_S, .]}
  Superoperator gamma_weak;       // Z^{-1} (U00(0)^{-1} T_beta)^#
  Superoperator gamma_dissipator; // Gamma_beta, Heisenberg dissipator
  Superoperator lindbladian;      // i[h_S, .] + Gamma_beta
  std::vector<CMatrix> lindblad_ops;  // the 2m jump operators
};

Generators generators(const ChainCoupling& c);

// Heisenberg dissipator at beta = infinity (vacuum probes).
Superoperator gamma_infinity(const ChainCoupling& c);

struct ScalingRow {
  double parameter;  // lambda or tau
  double error;
  long steps;        // t/lambda^2 (weak) or t/tau (critical), after rounding
  double rounding;   // |t/x - steps|
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double fitted_order = 0.0;  // least-squares slope of log err vs log param
};

// Weak-coupling sweep: err(lambda) =
//   || U00(0)^{-t/l^2} U_beta(lambda,tau)^{t/l^2} - e^{t Gamma_w} ||.
ScalingStudy weak_coupling_study(const ChainCoupling& c,
                                 const std::vector<double>& lambdas, double t);

// Critical sweep (lambda^2 tau = 1): err(tau) =
//   || (U_beta(1/sqrt(tau), tau) - Id)/tau - (i[h_S,.] + Gamma_beta) ||.
ScalingStudy critical_study(const ChainCoupling& c,
                            const std::vector<double>& taus);

}  // namespace weaklimit
}  // namespace riqs
