#pragma once

#include <optional>

#include "riqs/qops.hpp"

namespace riqs {
namespace spectral {

struct SpectralReport {
  std::vector<cxd> eigenvalues;  // descending modulus
  std::vector<cxd> peripheral;   // |lambda| > 1 - tol_peripheral
  bool satisfies_E = false;
  double gap = 0.0;  // -log(second largest modulus), per-step rate
  std::optional<DensityMatrix> invariant_state;
};

// Peripheral-spectrum classification of a (near-)contraction. Condition (E)
// holds when the peripheral spectrum is exactly {1}, simple; the invariant
// state is then the eigenvector at 1, Hermitized and trace-normalized.
// Simplicity is decided by counting eigenvalues in the peripheral cluster,
// with a residual check guarding defectiveness. Eigenvalues of the invariant
// candidate in [-1e-10, 0) are clipped to 0; anything more negative throws.
SpectralReport analyze(const Superoperator& map, double tol_peripheral = 1e-8);

struct ConvergenceRun {
  DensityMatrix final_state;
  std::vector<double> distances;  // trace-norm distance to rho_+ per step
  double fitted_slope = 0.0;      // least-squares slope of log(distance) vs n
};

// Iterates the map and records trace-norm distances to the invariant state.
// The slope is fitted on steps [fit_from, n] where the distance is still
// above 1e-13 (later entries are dominated by rounding).
ConvergenceRun power_converge(const Superoperator& map,
                              const DensityMatrix& rho0, int n,
                              int fit_from = 1);

// (1/N) sum_{n=burn_in}^{burn_in+N-1} map^n(rho0); Cesaro limit when
// peripheral eigenvalues other than 1 are present. No burn-in by default.
DensityMatrix ergodic_mean_converge(const Superoperator& map,
                                    const DensityMatrix& rho0, int n_terms,
                                    int burn_in = 0);

// Riesz spectral projection (1/2 pi i) \oint (z - M)^{-1} dz over the circle
// |z - center| = radius, by trapezoidal contour quadrature (exact for
// analytic integrands up to the node count); nodes are doubled from
// min_nodes until the projector residual ||P^2 - P|| falls below 1e-9.
Superoperator riesz_projection(const Superoperator& m, cxd center,
                               double radius, int min_nodes = 64);

// Spectral averaging K# = sum_j P_j K P_j over the eigenprojections of the
// free evolution rho -> e^{-i tau h0} rho e^{i tau h0}: index pairs (a,b) of
// h0-eigenvalues are grouped by the phase e^{i tau (E_a - E_b)} (clustered
// when closer than tol_cluster). Throws when the clustering is ambiguous,
// i.e. some inter-cluster gap falls inside [tol_cluster, 5 tol_cluster).
Superoperator sharp(const Superoperator& k, const CMatrix& h0, double tau,
                    double tol_cluster = 1e-9);

}  // namespace spectral
}  // namespace riqs
