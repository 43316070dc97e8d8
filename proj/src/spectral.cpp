#include "riqs/spectral.hpp"

#include <cmath>
#include <numbers>

namespace riqs {
namespace spectral {

static DensityMatrix normalize_invariant(const CMatrix& x) {
  CMatrix h = (x + x.adjoint()) / 2.0;
  if (std::abs(h.trace()) < 1e-12)
    throw Error("analyze: eigenvector at 1 has vanishing trace");
  h /= h.trace();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXd w = es.eigenvalues();
  if (w.minCoeff() < -1e-8)
    throw Error("analyze: invariant candidate not positive (min eig " +
                std::to_string(w.minCoeff()) + ")");
  // clip the numerical dust and renormalize
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::max(w[i], 0.0);
  w /= w.sum();
  CMatrix repaired = es.eigenvectors() * w.cast<cxd>().asDiagonal() *
                     es.eigenvectors().adjoint();
  return DensityMatrix::from(repaired);
}

SpectralReport analyze(const Superoperator& map, double tol_peripheral) {
  EigResult eig = eig_general(map.matrix());
  const double radius = std::abs(eig.values[0]);
  if (radius > 1.0 + 1e-8)
    throw Error("analyze: spectral radius " + std::to_string(radius) +
                " exceeds 1");

  SpectralReport rep;
  rep.eigenvalues = eig.values;

  int peripheral_count = 0;
  for (const auto& v : eig.values)
    if (std::abs(v) > 1.0 - tol_peripheral) ++peripheral_count;
  rep.peripheral.assign(eig.values.begin(),
                        eig.values.begin() + peripheral_count);

  const bool single = peripheral_count == 1 &&
                      std::abs(eig.values[0] - cxd(1.0, 0.0)) < 1e-6;
  if (single) {
    rep.satisfies_E = true;
    rep.invariant_state =
        normalize_invariant(unvec(eig.vectors.col(0)));
  } else if (peripheral_count >= 1 &&
             std::abs(eig.values[0] - cxd(1.0, 0.0)) < 1e-6) {
    // 1 is in the peripheral cluster but not alone; still expose an
    // invariant state when the eigenvector at 1 yields a valid one
    for (int k = 0; k < peripheral_count; ++k) {
      if (std::abs(eig.values[k] - cxd(1.0, 0.0)) < 1e-6) {
        try {
          rep.invariant_state = normalize_invariant(unvec(eig.vectors.col(k)));
        } catch (const Error&) {
        }
        break;
      }
    }
  }
  if (static_cast<size_t>(peripheral_count) < eig.values.size())
    rep.gap = -std::log(std::abs(eig.values[peripheral_count]));
  return rep;
}

ConvergenceRun power_converge(const Superoperator& map,
                              const DensityMatrix& rho0, int n, int fit_from) {
  SpectralReport rep = analyze(map);
  if (!rep.satisfies_E)
    throw Error("power_converge: map does not satisfy condition (E)");
  const DensityMatrix& target = *rep.invariant_state;

  ConvergenceRun run;
  DensityMatrix rho = rho0;
  run.distances.push_back(trace_distance(rho, target));
  for (int k = 1; k <= n; ++k) {
    rho = map.apply(rho);
    run.distances.push_back(trace_distance(rho, target));
  }
  run.final_state = rho;

  // least squares of log d_n against n over the clean decay window
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int k = fit_from; k <= n; ++k) {
    if (run.distances[k] < 1e-13) break;
    double x = k, y = std::log(run.distances[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2)
    run.fitted_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return run;
}

DensityMatrix ergodic_mean_converge(const Superoperator& map,
                                    const DensityMatrix& rho0, int n_terms,
                                    int burn_in) {
  if (n_terms < 1) throw Error("ergodic_mean_converge: need n_terms >= 1");
  if (burn_in < 0) throw Error("ergodic_mean_converge: negative burn-in");
  DensityMatrix rho = rho0;
  for (int k = 0; k < burn_in; ++k) rho = map.apply(rho);
  CMatrix acc = rho.matrix();
  for (int k = 1; k < n_terms; ++k) {
    rho = map.apply(rho);
    acc += rho.matrix();
  }
  return DensityMatrix::from(acc / double(n_terms));
}

Superoperator riesz_projection(const Superoperator& m, cxd center,
                               double radius, int min_nodes) {
  const Eigen::Index n = m.matrix().rows();
  // refuse contours passing through spectrum
  EigResult eig = eig_general(m.matrix());
  for (const auto& v : eig.values)
    if (std::abs(std::abs(v - center) - radius) < 1e-8)
      throw Error("riesz_projection: spectrum on the contour");

  int nodes = min_nodes;
  CMatrix proj;
  for (int round = 0; round < 6; ++round) {
    proj = CMatrix::Zero(n, n);
    for (int k = 0; k < nodes; ++k) {
      double th = 2.0 * std::numbers::pi * k / nodes;
      cxd z = center + radius * std::exp(cxd(0.0, th));
      CMatrix shifted = z * CMatrix::Identity(n, n) - m.matrix();
      // column of (z - M)^{-1} weighted by (z - center) / nodes
      proj += ((z - center) / double(nodes)) *
              shifted.partialPivLu().solve(CMatrix::Identity(n, n));
    }
    if ((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-9) break;
    nodes *= 2;
  }
  if ((proj * proj - proj).cwiseAbs().maxCoeff() >= 1e-9)
    throw Error("riesz_projection: projector residual not converged");
  return {m.dim(), std::move(proj)};
}

Superoperator sharp(const Superoperator& k, const CMatrix& h0, double tau,
                    double tol_cluster) {
  if (!is_hermitian(h0)) throw Error("sharp: h0 must be Hermitian");
  const int d = static_cast<int>(h0.rows());
  if (k.dim() != d) throw Error("sharp: dimension mismatch");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(h0);
  const auto& w = es.eigenvalues();
  const CMatrix& u = es.eigenvectors();

  struct Pair {
    int a, b;
    cxd phase;
  };
  std::vector<Pair> pairs;
  pairs.reserve(long(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      pairs.push_back({a, b, std::exp(cxd(0.0, tau * (w[a] - w[b])))});

  // cluster phases on the unit circle by angle
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::arg(x.phase) < std::arg(y.phase);
  });
  std::vector<std::vector<int>> clusters;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (clusters.empty() ||
        std::abs(pairs[i].phase - pairs[clusters.back().back()].phase) >
            tol_cluster)
      clusters.emplace_back();
    clusters.back().push_back(static_cast<int>(i));
  }
  // wraparound: merge last into first when they touch across -pi/pi
  if (clusters.size() > 1 &&
      std::abs(pairs[clusters.front().front()].phase -
               pairs[clusters.back().back()].phase) <= tol_cluster) {
    for (int i : clusters.back()) clusters.front().push_back(i);
    clusters.pop_back();
  }
  // ambiguity guard: an inter-cluster gap close to the threshold means the
  // grouping depends on the tolerance choice
  for (size_t c = 0; c < clusters.size(); ++c) {
    if (clusters.size() == 1) break;
    const auto& cur = clusters[c];
    const auto& nxt = clusters[(c + 1) % clusters.size()];
    double gap = std::abs(pairs[cur.back()].phase - pairs[nxt.front()].phase);
    if (gap >= tol_cluster && gap < 5.0 * tol_cluster)
      throw Error("sharp: ambiguous clustering (gap near tolerance)");
  }

  // P_j projects onto span{ u_a u_b^* : (a,b) in cluster j }; the grouped
  // eigenoperators are Hilbert-Schmidt orthonormal, so K# accumulates as
  // sum_j P_j K P_j from rank-one contributions.
  const CMatrix& km = k.matrix();
  CMatrix out = CMatrix::Zero(km.rows(), km.cols());
  for (const auto& cluster : clusters) {
    CMatrix basis(long(d) * d, cluster.size());
    for (size_t c = 0; c < cluster.size(); ++c) {
      const Pair& p = pairs[cluster[c]];
      basis.col(c) = vec(u.col(p.a) * u.col(p.b).adjoint());
    }
    CMatrix proj = basis * basis.adjoint();
    out += proj * km * proj;
  }
  return {d, std::move(out)};
}

}  // namespace spectral
}  // namespace riqs
