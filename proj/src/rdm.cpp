#include "riqs/rdm.hpp"

#include <iostream>

namespace riqs {

CMatrix RIModel::coupled_hamiltonian() const {
  const int ds = dim_sys(), de = dim_env();
  return kron(h_sys, CMatrix::Identity(de, de)) +
         kron(CMatrix::Identity(ds, ds), h_env) + v;
}

double RIModel::rho_env_commutator_norm() const {
  return (h_env * rho_env - rho_env * h_env).cwiseAbs().maxCoeff();
}

void RIModel::validate() const {
  const int ds = dim_sys(), de = dim_env();
  if (h_sys.cols() != ds || h_env.cols() != de)
    throw Error("RIModel: Hamiltonians must be square");
  if (v.rows() != long(ds) * de || v.cols() != v.rows())
    throw Error("RIModel: v must act on the product space");
  if (rho_env.rows() != de || rho_env.cols() != de)
    throw Error("RIModel: rho_env dimension mismatch");
  if (!is_hermitian(h_sys) || !is_hermitian(h_env) || !is_hermitian(v))
    throw Error("RIModel: non-Hermitian data");
  if (tau <= 0) throw Error("RIModel: tau must be positive");
  DensityMatrix::from(rho_env);  // validates the probe state
}

ReducedMap build_rdm(const RIModel& model) {
  model.validate();
  if (model.rho_env_commutator_norm() > 1e-10)
    std::cerr << "riqs: warning: [h_env, rho_env] != 0 (norm "
              << model.rho_env_commutator_norm()
              << "); using rho_env as given at every step\n";

  const int ds = model.dim_sys(), de = model.dim_env();
  const CMatrix u = propagator(model.coupled_hamiltonian(), model.tau);

  // Columns of the superoperator are vec(L(E_ij)).
  CMatrix sm(long(ds) * ds, long(ds) * ds);
  CMatrix eij = CMatrix::Zero(ds, ds);
  for (int j = 0; j < ds; ++j)
    for (int i = 0; i < ds; ++i) {
      eij(i, j) = 1.0;
      CMatrix big = u * kron(eij, model.rho_env) * u.adjoint();
      sm.col(long(j) * ds + i) = vec(partial_trace(big, {ds, de}, 0));
      eij(i, j) = 0.0;
    }
  return {Superoperator(ds, std::move(sm)), model};
}

DensityMatrix apply(const ReducedMap& map, const DensityMatrix& rho) {
  if (rho.dim() != map.dim()) throw Error("apply: dimension mismatch");
  return map.superop().apply(rho);
}

Superoperator dual(const ReducedMap& map) { return map.superop().dual(); }

}  // namespace riqs
