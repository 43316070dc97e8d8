#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "riqs/rdm.hpp"
#include "riqs/rng.hpp"
#include "riqs/spectral.hpp"

namespace riqs {
namespace dynamics {

// Distribution over interaction models, i.i.d. across steps.
class ModelSampler {
 public:
  virtual ~ModelSampler() = default;
  virtual RIModel sample(CounterRng& rng) const = 0;
  virtual bool finite_support() const = 0;
  // atoms of a finitely supported sampler; throws otherwise
  virtual std::vector<std::pair<RIModel, double>> atoms() const;
};

class FiniteMixtureSampler : public ModelSampler {
 public:
  FiniteMixtureSampler(std::vector<RIModel> models,
                       std::vector<double> probabilities);
  RIModel sample(CounterRng& rng) const override;
  bool finite_support() const override { return true; }
  std::vector<std::pair<RIModel, double>> atoms() const override;

 private:
  std::vector<RIModel> models_;
  std::vector<double> cum_;  // cumulative probabilities
  std::vector<double> probs_;
};

// Continuous interaction-time distribution given by a tabulated CDF
// (tau_i, F_i); sampling is by inverse CDF with linear interpolation.
class TabulatedTauSampler : public ModelSampler {
 public:
  TabulatedTauSampler(std::function<RIModel(double)> model_of_tau,
                      std::vector<double> tau_grid,
                      std::vector<double> cdf_values);
  RIModel sample(CounterRng& rng) const override;
  bool finite_support() const override { return false; }
  double sample_tau(CounterRng& rng) const;

 private:
  std::function<RIModel(double)> model_of_tau_;
  std::vector<double> taus_, cdf_;
};

struct Ideal {
  ReducedMap map;
};
struct Random {
  std::shared_ptr<const ModelSampler> sampler;
  uint64_t seed = 0;
};
struct KBeam {
  std::vector<ReducedMap> maps;  // applied in cyclic order 1..K
};

using InteractionSchedule = std::variant<Ideal, Random, KBeam>;

struct Trajectory {
  std::vector<DensityMatrix> states;  // rho(0) .. rho(n)
  std::vector<RIModel> step_records;  // model used at step k -> states[k+1]
};

// Runs n interactions. Deterministic given (schedule, trajectory_index):
// random schedules draw from the substream (seed, trajectory_index).
Trajectory run(const InteractionSchedule& schedule, const DensityMatrix& rho0,
               int n, uint64_t trajectory_index = 0);

// K cyclic compositions tilde-L_j = L_j ... L_1 L_K ... L_{j+1}; index j of
// the result is the composition ending with maps[j].
std::vector<Superoperator> kbeam_effective_maps(
    const std::vector<ReducedMap>& maps);

// Mixture mean E[L]: exact for finitely supported samplers, Monte Carlo
// average of mc_samples draws otherwise.
Superoperator mean_map(const ModelSampler& sampler, uint64_t seed = 0,
                       int mc_samples = 2000);

struct RandomAsymptotics {
  Superoperator mean_map;
  DensityMatrix mean_map_invariant;       // invariant state of E[L]
  std::vector<DensityMatrix> ergodic_means;  // one per seed
};

// Per-seed ergodic means (1/N) sum_{n=1..N} rho(n) and the invariant state
// of E[L]. Checks empirically that condition (E) occurs with positive
// probability among sampled maps.
RandomAsymptotics random_asymptotics(
    const std::shared_ptr<const ModelSampler>& sampler,
    const DensityMatrix& rho0, int n_terms,
    const std::vector<uint64_t>& seeds, uint64_t base_seed = 0);

}  // namespace dynamics
}  // namespace riqs
