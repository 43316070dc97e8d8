#include "riqs/dynamics.hpp"

#include <cmath>

namespace riqs {
namespace dynamics {

std::vector<std::pair<RIModel, double>> ModelSampler::atoms() const {
  throw Error("sampler has no finite support");
}

FiniteMixtureSampler::FiniteMixtureSampler(std::vector<RIModel> models,
                                           std::vector<double> probabilities)
    : models_(std::move(models)), probs_(std::move(probabilities)) {
  if (models_.empty() || models_.size() != probs_.size())
    throw Error("FiniteMixtureSampler: bad atom list");
  double acc = 0.0;
  for (double p : probs_) {
    if (p < 0) throw Error("FiniteMixtureSampler: negative probability");
    acc += p;
    cum_.push_back(acc);
  }
  if (std::abs(acc - 1.0) > 1e-12)
    throw Error("FiniteMixtureSampler: probabilities must sum to 1");
  cum_.back() = 1.0;
}

RIModel FiniteMixtureSampler::sample(CounterRng& rng) const {
  double u = rng.next_double();
  for (size_t i = 0; i < cum_.size(); ++i)
    if (u < cum_[i]) return models_[i];
  return models_.back();
}

std::vector<std::pair<RIModel, double>> FiniteMixtureSampler::atoms() const {
  std::vector<std::pair<RIModel, double>> out;
  for (size_t i = 0; i < models_.size(); ++i)
    out.emplace_back(models_[i], probs_[i]);
  return out;
}

TabulatedTauSampler::TabulatedTauSampler(
    std::function<RIModel(double)> model_of_tau, std::vector<double> tau_grid,
    std::vector<double> cdf_values)
    : model_of_tau_(std::move(model_of_tau)),
      taus_(std::move(tau_grid)),
      cdf_(std::move(cdf_values)) {
  if (taus_.size() < 2 || taus_.size() != cdf_.size())
    throw Error("TabulatedTauSampler: need matching grids of length >= 2");
  if (std::abs(cdf_.front()) > 1e-12 || std::abs(cdf_.back() - 1.0) > 1e-12)
    throw Error("TabulatedTauSampler: CDF must run from 0 to 1");
  for (size_t i = 1; i < cdf_.size(); ++i)
    if (cdf_[i] < cdf_[i - 1] || taus_[i] <= taus_[i - 1])
      throw Error("TabulatedTauSampler: grids must be increasing");
}

double TabulatedTauSampler::sample_tau(CounterRng& rng) const {
  double u = rng.next_double();
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return taus_.front();
  if (it == cdf_.end()) return taus_.back();
  size_t hi = it - cdf_.begin(), lo = hi - 1;
  double span = cdf_[hi] - cdf_[lo];
  double t = span > 0 ? (u - cdf_[lo]) / span : 0.0;
  return taus_[lo] + t * (taus_[hi] - taus_[lo]);
}

RIModel TabulatedTauSampler::sample(CounterRng& rng) const {
  return model_of_tau_(sample_tau(rng));
}

Trajectory run(const InteractionSchedule& schedule, const DensityMatrix& rho0,
               int n, uint64_t trajectory_index) {
  if (n < 0) throw Error("run: negative step count");
  Trajectory traj;
  traj.states.reserve(n + 1);
  traj.states.push_back(rho0);

  if (const auto* ideal = std::get_if<Ideal>(&schedule)) {
    for (int k = 0; k < n; ++k) {
      traj.states.push_back(apply(ideal->map, traj.states.back()));
      traj.step_records.push_back(ideal->map.model());
    }
  } else if (const auto* kb = std::get_if<KBeam>(&schedule)) {
    if (kb->maps.empty()) throw Error("run: KBeam needs at least one map");
    for (int k = 0; k < n; ++k) {
      const ReducedMap& m = kb->maps[k % kb->maps.size()];
      traj.states.push_back(apply(m, traj.states.back()));
      traj.step_records.push_back(m.model());
    }
  } else {
    const auto& rnd = std::get<Random>(schedule);
    CounterRng rng(rnd.seed, trajectory_index);
    for (int k = 0; k < n; ++k) {
      RIModel model = rnd.sampler->sample(rng);
      traj.states.push_back(apply(build_rdm(model), traj.states.back()));
      traj.step_records.push_back(std::move(model));
    }
  }
  return traj;
}

std::vector<Superoperator> kbeam_effective_maps(
    const std::vector<ReducedMap>& maps) {
  if (maps.empty()) throw Error("kbeam_effective_maps: empty beam list");
  const int k = static_cast<int>(maps.size());
  std::vector<Superoperator> tilde;
  tilde.reserve(k);
  for (int j = 0; j < k; ++j) {
    // apply order: j+1, j+2, ..., K-1, 0, 1, ..., j
    Superoperator acc = Superoperator::identity(maps[0].dim());
    for (int step = 1; step <= k; ++step)
      acc = maps[(j + step) % k].superop().compose(acc);
    tilde.push_back(std::move(acc));
  }
  return tilde;
}

Superoperator mean_map(const ModelSampler& sampler, uint64_t seed,
                       int mc_samples) {
  if (sampler.finite_support()) {
    auto atoms = sampler.atoms();
    Superoperator acc = build_rdm(atoms[0].first).superop() * atoms[0].second;
    for (size_t i = 1; i < atoms.size(); ++i)
      acc = acc + build_rdm(atoms[i].first).superop() * atoms[i].second;
    return acc;
  }
  CounterRng rng(seed, 0x6d65616eull);  // dedicated substream for E[L]
  Superoperator acc = build_rdm(sampler.sample(rng)).superop();
  for (int i = 1; i < mc_samples; ++i)
    acc = acc + build_rdm(sampler.sample(rng)).superop();
  return acc * (1.0 / mc_samples);
}

RandomAsymptotics random_asymptotics(
    const std::shared_ptr<const ModelSampler>& sampler,
    const DensityMatrix& rho0, int n_terms,
    const std::vector<uint64_t>& seeds, uint64_t base_seed) {
  // empirical check that maps satisfying (E) occur at all
  {
    CounterRng rng(base_seed, 0x70726f62ull);
    bool found = false;
    for (int i = 0; i < 32 && !found; ++i) {
      auto rep = spectral::analyze(build_rdm(sampler->sample(rng)).superop());
      found = rep.satisfies_E;
    }
    if (!found)
      throw Error("random_asymptotics: no sampled map satisfies (E)");
  }

  RandomAsymptotics out;
  out.mean_map = mean_map(*sampler, base_seed);
  auto rep = spectral::analyze(out.mean_map);
  if (!rep.satisfies_E)
    throw Error("random_asymptotics: E[L] fails condition (E)");
  out.mean_map_invariant = *rep.invariant_state;

  for (uint64_t s : seeds) {
    InteractionSchedule sched = Random{sampler, base_seed};
    Trajectory traj = run(sched, rho0, n_terms, s);
    CMatrix acc = CMatrix::Zero(rho0.dim(), rho0.dim());
    for (int n = 1; n <= n_terms; ++n) acc += traj.states[n].matrix();
    out.ergodic_means.push_back(DensityMatrix::from(acc / double(n_terms)));
  }
  return out;
}

}  // namespace dynamics
}  // namespace riqs
