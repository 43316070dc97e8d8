#include "riqs/thermo.hpp"

#include <cmath>

namespace riqs {
namespace thermo {

double product_expectation(const CMatrix& rho_sys, const CMatrix& rho_env,
                           const CMatrix& x) {
  return (kron(rho_sys, rho_env) * x).trace().real();
}

CMatrix time_ordered_integral(const CMatrix& h, const CMatrix& x, double tau) {
  if (!is_hermitian(h)) throw Error("time_ordered_integral: h not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& w = es.eigenvalues();
  const CMatrix& u = es.eigenvectors();
  CMatrix xt = u.adjoint() * x * u;
  for (Eigen::Index a = 0; a < w.size(); ++a)
    for (Eigen::Index b = 0; b < w.size(); ++b) {
      double d = w[a] - w[b];
      if (std::abs(d) * tau < 1e-12)
        xt(a, b) *= tau;
      else
        xt(a, b) *= (std::exp(cxd(0.0, tau * d)) - 1.0) / cxd(0.0, d);
    }
  return u * xt * u.adjoint();
}

static CMatrix env_hamiltonian_lifted(const RIModel& m) {
  return kron(CMatrix::Identity(m.dim_sys(), m.dim_sys()), m.h_env);
}

CMatrix integrated_flux_observable(const RIModel& model) {
  const CMatrix he = env_hamiltonian_lifted(model);
  const CMatrix phi = cxd(0.0, 1.0) * (model.v * he - he * model.v);
  return time_ordered_integral(model.coupled_hamiltonian(), phi, model.tau);
}

CMatrix probe_gain_observable(const RIModel& model) {
  const CMatrix he = env_hamiltonian_lifted(model);
  const CMatrix u = propagator(model.coupled_hamiltonian(), model.tau);
  return u.adjoint() * he * u - he;
}

double work_step(const DensityMatrix& rho_prev, const RIModel& model_n,
                 const RIModel& model_next) {
  const DensityMatrix rho_n = apply(build_rdm(model_n), rho_prev);
  const CMatrix u = propagator(model_n.coupled_hamiltonian(), model_n.tau);
  const CMatrix v_rot = u.adjoint() * model_n.v * u;
  return product_expectation(rho_n.matrix(), model_next.rho_env, model_next.v) -
         product_expectation(rho_prev.matrix(), model_n.rho_env, v_rot);
}

static void require_gibbs_probe(const RIModel& m) {
  if (std::isnan(m.beta_env))
    throw Error("thermo: probe inverse temperature not recorded");
  if ((m.rho_env - gibbs(m.h_env, m.beta_env)).cwiseAbs().maxCoeff() > 1e-10)
    throw Error("thermo: probe state is not Gibbs at the recorded beta");
}

ThermoLedger replay(const dynamics::Trajectory& traj, const CMatrix& rho_ref) {
  const auto& models = traj.step_records;
  const auto& states = traj.states;
  if (models.empty()) throw Error("replay: empty trajectory");
  if (states.size() != models.size() + 1)
    throw Error("replay: trajectory records and states are inconsistent");

  ThermoLedger led;
  const size_t n = models.size();
  for (size_t k = 0; k + 1 < n; ++k) {
    led.work_steps.push_back(
        work_step(states[k], models[k], models[k + 1]));
    led.total_work += led.work_steps.back();
  }
  for (size_t k = 0; k < n; ++k) {
    double gain = product_expectation(states[k].matrix(), models[k].rho_env,
                                      probe_gain_observable(models[k]));
    led.probe_gains.push_back(gain);
    require_gibbs_probe(models[k]);
    led.entropy_increments.push_back(-models[k].beta_env * gain);
  }

  // Delta S(n) with the reference boundary term, log through eigenvalues
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_ref);
  if (es.eigenvalues().minCoeff() <= 0)
    throw Error("replay: reference state must be strictly positive");
  CMatrix log_ref = es.eigenvectors() *
                    es.eigenvalues().array().log().matrix().cast<cxd>().asDiagonal() *
                    es.eigenvectors().adjoint();
  double boundary =
      ((states[n].matrix() - states[0].matrix()) * log_ref).trace().real();
  double gains_weighted = 0.0;
  for (double e : led.entropy_increments) gains_weighted += e;
  led.entropy_change = boundary + gains_weighted;

  // energy-ledger route for the same total work
  const RIModel& first = models[0];
  const CMatrix h_s = first.h_sys;
  double rhs = 0.0;
  for (size_t k = 0; k + 1 < n; ++k) rhs += led.probe_gains[k];
  rhs += ((states[n - 1].matrix() - states[0].matrix()) * h_s).trace().real();
  rhs += product_expectation(states[n - 1].matrix(), models[n - 1].rho_env,
                             models[n - 1].v);
  rhs -= product_expectation(states[0].matrix(), models[0].rho_env,
                             models[0].v);
  led.bookkeeping_defect = std::abs(led.total_work - rhs);
  return led;
}

double mean_work_ideal(const RIModel& model, const DensityMatrix& rho_plus,
                       bool flux_form) {
  if (flux_form)
    return product_expectation(rho_plus.matrix(), model.rho_env,
                               integrated_flux_observable(model)) /
           model.tau;
  const CMatrix u = propagator(model.coupled_hamiltonian(), model.tau);
  const CMatrix diff = model.v - u.adjoint() * model.v * u;
  return product_expectation(rho_plus.matrix(), model.rho_env, diff) /
         model.tau;
}

double mean_work_random(const std::vector<std::pair<RIModel, double>>& atoms,
                        const DensityMatrix& rho_plus, bool flux_form) {
  double num = 0.0, mean_tau = 0.0;
  for (const auto& [m, p] : atoms) {
    num += p * mean_work_ideal(m, rho_plus, flux_form) * m.tau;
    mean_tau += p * m.tau;
  }
  return num / mean_tau;
}

double entropy_production_ideal(const RIModel& model,
                                const DensityMatrix& rho_plus) {
  require_gibbs_probe(model);
  return model.beta_env * mean_work_ideal(model, rho_plus, true);
}

double entropy_production_random(
    const std::vector<std::pair<RIModel, double>>& atoms,
    const DensityMatrix& rho_plus) {
  double num = 0.0, mean_tau = 0.0;
  for (const auto& [m, p] : atoms) {
    require_gibbs_probe(m);
    num += p * m.beta_env *
           product_expectation(rho_plus.matrix(), m.rho_env,
                               integrated_flux_observable(m));
    mean_tau += p * m.tau;
  }
  return num / mean_tau;
}

static double beam_flux_at(const RIModel& beam, const DensityMatrix& state,
                           double cycle_time) {
  return -product_expectation(state.matrix(), beam.rho_env,
                              integrated_flux_observable(beam)) /
         cycle_time;
}

BeamFluxReport beam_fluxes_deterministic(const std::vector<RIModel>& beams) {
  const int k = static_cast<int>(beams.size());
  std::vector<ReducedMap> maps;
  for (const auto& b : beams) maps.push_back(build_rdm(b));
  auto tilde = dynamics::kbeam_effective_maps(maps);

  double cycle = 0.0;
  for (const auto& b : beams) cycle += b.tau;

  BeamFluxReport rep;
  double work = 0.0;
  for (int j = 0; j < k; ++j) {
    // state entering beam j: fixed point of the cycle ending with beam j-1
    auto sr = spectral::analyze(tilde[(j + k - 1) % k]);
    if (!sr.satisfies_E)
      throw Error("beam_fluxes: effective map fails condition (E)");
    const DensityMatrix pre = *sr.invariant_state;
    rep.pre_states.push_back(pre);
    rep.fluxes.push_back(beam_flux_at(beams[j], pre, cycle));

    const CMatrix u =
        propagator(beams[j].coupled_hamiltonian(), beams[j].tau);
    work += product_expectation(
        pre.matrix(), beams[j].rho_env,
        CMatrix(beams[j].v - u.adjoint() * beams[j].v * u));
  }
  rep.mean_work = work / cycle;
  double flux_sum = 0.0, entropy = 0.0;
  for (int j = 0; j < k; ++j) {
    require_gibbs_probe(beams[j]);
    flux_sum += rep.fluxes[j];
    entropy -= beams[j].beta_env * rep.fluxes[j];
  }
  rep.entropy_rate = entropy;
  rep.work_identity_defect = std::abs(rep.mean_work + flux_sum);
  return rep;
}

BeamFluxReport beam_fluxes_random_uniform(const std::vector<RIModel>& beams) {
  const int k = static_cast<int>(beams.size());
  std::vector<std::pair<RIModel, double>> atoms;
  for (const auto& b : beams) atoms.emplace_back(b, 1.0 / k);

  Superoperator mean = build_rdm(beams[0]).superop() * (1.0 / k);
  for (int j = 1; j < k; ++j)
    mean = mean + build_rdm(beams[j]).superop() * (1.0 / k);
  auto sr = spectral::analyze(mean);
  if (!sr.satisfies_E) throw Error("beam_fluxes: E[L] fails condition (E)");
  const DensityMatrix rho_plus = *sr.invariant_state;

  double cycle = 0.0;
  for (const auto& b : beams) cycle += b.tau;

  BeamFluxReport rep;
  for (int j = 0; j < k; ++j) {
    rep.pre_states.push_back(rho_plus);
    rep.fluxes.push_back(beam_flux_at(beams[j], rho_plus, cycle));
  }
  rep.mean_work = mean_work_random(atoms, rho_plus);
  double flux_sum = 0.0, entropy = 0.0;
  for (int j = 0; j < k; ++j) {
    require_gibbs_probe(beams[j]);
    flux_sum += rep.fluxes[j];
    entropy -= beams[j].beta_env * rep.fluxes[j];
  }
  rep.entropy_rate = entropy;
  rep.work_identity_defect = std::abs(rep.mean_work + flux_sum);
  return rep;
}

KineticCoefficients kinetic_coefficients(
    const std::function<std::vector<double>(const std::vector<double>&)>&
        flux_of_betas,
    double beta, int n_beams, double h) {
  auto diff_at = [&](double step) {
    std::vector<std::vector<double>> d(n_beams, std::vector<double>(n_beams));
    for (int k = 0; k < n_beams; ++k) {
      std::vector<double> up(n_beams, beta), dn(n_beams, beta);
      up[k] = beta - step;  // X_k = beta - beta_k = +step
      dn[k] = beta + step;
      auto fu = flux_of_betas(up), fd = flux_of_betas(dn);
      for (int j = 0; j < n_beams; ++j)
        d[j][k] = (fu[j] - fd[j]) / (2.0 * step);
    }
    return d;
  };

  auto dh = diff_at(h), dh2 = diff_at(h / 2.0);
  KineticCoefficients out;
  out.l.assign(n_beams, std::vector<double>(n_beams, 0.0));
  out.asymmetry.assign(n_beams, std::vector<double>(n_beams, 0.0));
  for (int j = 0; j < n_beams; ++j)
    for (int k = 0; k < n_beams; ++k) {
      out.l[j][k] = (4.0 * dh2[j][k] - dh[j][k]) / 3.0;
      out.richardson_spread =
          std::max(out.richardson_spread, std::abs(dh2[j][k] - dh[j][k]));
    }
  for (int j = 0; j < n_beams; ++j)
    for (int k = 0; k < n_beams; ++k)
      out.asymmetry[j][k] = std::abs(out.l[j][k] - out.l[k][j]);
  return out;
}

}  // namespace thermo
}  // namespace riqs
