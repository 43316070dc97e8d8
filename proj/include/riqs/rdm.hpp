#pragma once

#include "riqs/qops.hpp"

namespace riqs {

// One interaction block: system Hamiltonian, probe Hamiltonian, coupling v
// on the product space, interaction duration tau and the probe state. The
// probe state is expected to commute with h_env; models violating this are
// accepted with a warning and the given rho_env is used at every step.
struct RIModel {
  CMatrix h_sys;
  CMatrix h_env;
  CMatrix v;  // Hermitian on the product space, system factor first
  double tau = 0.0;
  CMatrix rho_env;
  // inverse temperature of the probe Gibbs state when applicable (NaN if the
  // probe state was not declared thermal); used by entropy accounting
  double beta_env = std::numeric_limits<double>::quiet_NaN();

  int dim_sys() const { return static_cast<int>(h_sys.rows()); }
  int dim_env() const { return static_cast<int>(h_env.rows()); }

  // h = h_S (x) 1 + 1 (x) h_E + v on the product space
  CMatrix coupled_hamiltonian() const;
  double rho_env_commutator_norm() const;
  void validate() const;  // throws on dimension/Hermiticity violations
};

class ReducedMap {
 public:
  ReducedMap() = default;
  ReducedMap(Superoperator s, RIModel m) : superop_(std::move(s)), model_(std::move(m)) {}

  const Superoperator& superop() const { return superop_; }
  const RIModel& model() const { return model_; }
  int dim() const { return superop_.dim(); }

 private:
  Superoperator superop_;
  RIModel model_;
};

// L(rho) = Tr_E[ e^{-i tau h} (rho (x) rho_E) e^{i tau h} ], assembled as a
// superoperator by pushing a full matrix-unit basis through the formula.
ReducedMap build_rdm(const RIModel& model);

// One step of the reduced dynamics; output is Hermitized and validated.
DensityMatrix apply(const ReducedMap& map, const DensityMatrix& rho);

// Heisenberg-picture dual of the map.
Superoperator dual(const ReducedMap& map);

}  // namespace riqs
