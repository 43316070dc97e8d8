#pragma once

#include <array>

#include "riqs/qops.hpp"
#include "riqs/rng.hpp"

namespace riqs {
namespace qwalk {

// Coined walk on Z^d with i.i.d. random coin updates. Coin space C^{2d};
// the jump function sends coin directions to lattice displacements.
struct WalkSpec {
  int dim = 1;                                   // lattice dimension (1 or 2)
  std::vector<std::array<int, 2>> jumps;         // one per coin direction
  std::vector<CMatrix> coins;                    // finite coin law
  std::vector<double> coin_probs;
  CMatrix coin_state;                            // initial coin density matrix

  int coin_dim() const { return 2 * dim; }
  void validate() const;
  // symmetric walk: jumps +-e_1, ..., +-e_d
  static WalkSpec symmetric(int d, std::vector<CMatrix> coins,
                            std::vector<double> probs,
                            const CMatrix& coin_state);
  // mean jump over directions, (1/2d) sum_tau r(tau)
  std::array<double, 2> mean_jump() const;
};

// Position-resolved coin operators J_k(n) for one realized coin sequence:
// J_k collects paths with total displacement k; unitarity means
// sum_k J_k^* J_k = 1.
struct Amplitudes {
  int n = 0;
  int dim = 1;
  // index offset: position k corresponds to window index k + n per axis
  std::vector<CMatrix> j_ops;  // row-major over the window [-n, n]^dim
  const CMatrix& at(int k1, int k2 = 0) const;
  double unitarity_defect() const;
};

Amplitudes amplitudes(const WalkSpec& spec,
                      const std::vector<CMatrix>& coin_sequence);

struct Moments {
  std::array<double, 2> mean{};        // <X_i>
  std::array<std::array<double, 2>, 2> covariance{};  // <X_i X_j> - mm
};

struct McMoments {
  Moments moments;            // averaged over trials
  std::array<double, 2> mean_std_error{};
  std::array<std::array<double, 2>, 2> cov_std_error{};
};

// Per-trial exact wavefunction evolution on the reachable window, averaged
// over random coin sequences.
McMoments mc_moments(const WalkSpec& spec, int n, int trials, uint64_t seed);

// Exact coin-averaged moments at step n through the momentum-space transfer
// matrices (d(-v) (x) d(v+y)) E[conj(C) (x) C]: the characteristic function
// is the Brillouin-zone average of the slice contractions, computed here
// with an exact trigonometric quadrature; y-derivatives by central
// differences with one Richardson step.
Moments transfer_moments(const WalkSpec& spec, int n, double y_step = 1e-3);

// Coin-pair transfer matrix at momenta (y1, y2); its y2 = -y1 family
// controls diffusive behaviour (unit-circle spectrum {1}, simple).
CMatrix transfer_matrix(const WalkSpec& spec, const std::array<double, 2>& y1,
                        const std::array<double, 2>& y2);

// Largest |eigenvalue| < 1 test over sampled momenta: true when every
// sampled slice has peripheral spectrum {1}, simple.
bool diffusive_spectral_check(const WalkSpec& spec, int samples_per_axis);

}  // namespace qwalk
}  // namespace riqs
