#pragma once

#include "riqs/rdm.hpp"

namespace riqs {
namespace spinmodel {

// Two-level system exchanging energy with a beam of two-level probes:
// h_S = diag(0,E), h_E = diag(0,E0), v = (lambda/2)(a (x) b^* + a^* (x) b),
// probe in the Gibbs state at inverse temperature beta.
struct SpinParams {
  double E = 1.0;
  double E0 = 1.0;
  double lambda = 0.5;
  double tau = 1.0;
  double beta = 1.0;

  double delta() const { return E - E0; }
  double nu() const { return std::sqrt(delta() * delta() + lambda * lambda); }
  // gap of the doubly-excited sector, relevant for the full dipole coupling
  double mu() const {
    return std::sqrt((E + E0) * (E + E0) + lambda * lambda);
  }
  double z_beta() const { return 1.0 + std::exp(-beta * E0); }
  double beta_star() const { return beta * E0 / E; }
  // second-largest eigenvalue modulus squared of the exchange channel
  double e0() const {
    const double n = nu();
    if (n == 0.0) return 1.0;
    double s = std::sin(n * tau / 2.0);
    return 1.0 - (lambda * lambda) / (n * n) * s * s;
  }
};

// 2x2 ladder operators, ground state first: a|1> = |0>.
CMatrix lowering();
CMatrix raising();

RIModel build(const SpinParams& p);

// Same parameters but with the full dipole coupling
// v = (lambda/2)(a + a^*) (x) (b + b^*).
RIModel build_full_dipole(const SpinParams& p);

// The four Kraus operators V_{s's} of the one-step channel, in the order
// V_00, V_01, V_10, V_11.
std::vector<CMatrix> closed_form_kraus(const SpinParams& p);

struct SpinSpectrum {
  cxd one;
  cxd e_plus;
  cxd e_minus;
  double e0;
  double beta_star;
};

SpinSpectrum closed_form_spectrum(const SpinParams& p);

// Gibbs state of h_S at the renormalized inverse temperature beta*.
DensityMatrix invariant_state(const SpinParams& p);

}  // namespace spinmodel
}  // namespace riqs
