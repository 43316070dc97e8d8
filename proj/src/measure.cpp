#include "riqs/measure.hpp"

#include <cmath>

namespace riqs {
namespace measure {

std::vector<Outcome> outcomes(const CMatrix& m_op, double tol) {
  if (!is_hermitian(m_op)) throw Error("outcomes: observable not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_op);
  const auto& w = es.eigenvalues();
  const CMatrix& u = es.eigenvectors();
  std::vector<Outcome> outs;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (!outs.empty() && std::abs(w[k] - outs.back().value) < tol) {
      outs.back().projector += u.col(k) * u.col(k).adjoint();
    } else {
      outs.push_back({w[k], CMatrix(u.col(k) * u.col(k).adjoint())});
    }
  }
  return outs;
}

Instrument build_instrument(const MeasurementSetup& setup) {
  setup.model.validate();
  const int ds = setup.model.dim_sys(), de = setup.model.dim_env();
  if (setup.m_op.rows() != de)
    throw Error("build_instrument: observable must act on the probe");

  const CMatrix u = propagator(setup.model.coupled_hamiltonian(),
                               setup.model.tau);
  Instrument inst;
  inst.outs = outcomes(setup.m_op);

  const CMatrix id_s = CMatrix::Identity(ds, ds);
  for (const auto& out : inst.outs) {
    CMatrix proj_big = kron(id_s, out.projector);
    CMatrix sm(long(ds) * ds, long(ds) * ds);
    CMatrix eij = CMatrix::Zero(ds, ds);
    for (int j = 0; j < ds; ++j)
      for (int i = 0; i < ds; ++i) {
        eij(i, j) = 1.0;
        CMatrix big = proj_big * u * kron(eij, setup.model.rho_env) *
                      u.adjoint() * proj_big;
        sm.col(long(j) * ds + i) = vec(partial_trace(big, {ds, de}, 0));
        eij(i, j) = 0.0;
      }
    inst.maps.emplace_back(ds, std::move(sm));
  }
  inst.channel = inst.maps[0];
  for (size_t k = 1; k < inst.maps.size(); ++k)
    inst.channel = inst.channel + inst.maps[k];
  return inst;
}

Superoperator Instrument::set_map(const std::vector<int>& idx) const {
  if (idx.empty()) throw Error("set_map: empty outcome set");
  Superoperator acc = Superoperator::zero(maps[0].dim());
  for (int k : idx) {
    if (k < 0 || k >= static_cast<int>(maps.size()))
      throw Error("set_map: outcome index out of range");
    acc = acc + maps[k];
  }
  return acc;
}

double joint_probability(const Instrument& inst, const DensityMatrix& rho0,
                         const std::vector<std::vector<int>>& sets) {
  if (sets.empty()) throw Error("joint_probability: need at least one slot");
  CMatrix state = rho0.matrix();
  for (const auto& s : sets) state = inst.set_map(s).apply(state);
  double p = state.trace().real();
  if (p < -1e-10) throw Error("joint_probability: negative probability");
  return p;
}

Statistics asymptotic_statistics(const MeasurementSetup& setup) {
  Instrument inst = build_instrument(setup);
  auto rep = spectral::analyze(inst.channel);
  if (!rep.satisfies_E)
    throw Error("asymptotic_statistics: channel fails condition (E)");

  Statistics st;
  st.invariant_state = *rep.invariant_state;
  const int ds = setup.model.dim_sys();
  const CMatrix u = propagator(setup.model.coupled_hamiltonian(),
                               setup.model.tau);
  st.mean = 0.0;
  for (const auto& out : inst.outs) {
    CMatrix rotated =
        u.adjoint() * kron(CMatrix::Identity(ds, ds), out.projector) * u;
    double f = (kron(st.invariant_state.matrix(), setup.model.rho_env) *
                rotated)
                   .trace()
                   .real();
    st.frequencies.push_back(f);
    st.mean += out.value * f;
  }
  return st;
}

SampledFrequencies sample_frequencies(const Instrument& inst,
                                      const DensityMatrix& rho0, int n_steps,
                                      int trials, uint64_t seed) {
  const size_t n_out = inst.maps.size();
  std::vector<double> sum(n_out, 0.0), sumsq(n_out, 0.0);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<uint64_t>(t));
    CMatrix rho = rho0.matrix();
    std::vector<long> counts(n_out, 0);
    for (int s = 0; s < n_steps; ++s) {
      // outcome distribution for the current state
      double u = rng.next_double(), acc = 0.0;
      size_t pick = n_out - 1;
      std::vector<CMatrix> branch(n_out);
      for (size_t m = 0; m < n_out; ++m) {
        branch[m] = inst.maps[m].apply(rho);
        acc += branch[m].trace().real();
        if (u < acc) {
          pick = m;
          break;
        }
      }
      ++counts[pick];
      rho = branch[pick] / branch[pick].trace().real();
    }
    for (size_t m = 0; m < n_out; ++m) {
      double f = double(counts[m]) / n_steps;
      sum[m] += f;
      sumsq[m] += f * f;
    }
  }
  SampledFrequencies out;
  for (size_t m = 0; m < n_out; ++m) {
    double mean = sum[m] / trials;
    double var = std::max(0.0, sumsq[m] / trials - mean * mean);
    out.frequencies.push_back(mean);
    out.std_errors.push_back(std::sqrt(var / trials));
  }
  return out;
}

CorrelationDecay correlation_decay(const Instrument& inst,
                                   const DensityMatrix& rho0, int l,
                                   const std::vector<int>& set_a,
                                   const std::vector<int>& set_b,
                                   const std::vector<int>& gaps) {
  if (l < 1) throw Error("correlation_decay: need l >= 1");
  const Superoperator ia = inst.set_map(set_a), ib = inst.set_map(set_b);
  const Superoperator& phi = inst.channel;

  CorrelationDecay out;
  out.gaps = gaps;
  auto rep = spectral::analyze(phi);
  out.channel_gamma = rep.gap;

  const CMatrix to_l = phi.pow(l - 1).apply(rho0.matrix());
  const double pa = ia.apply(to_l).trace().real();
  const CMatrix after_a = ia.apply(to_l);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int g : gaps) {
    if (g < 1) throw Error("correlation_decay: gaps must be >= 1");
    const CMatrix at_m = phi.pow(g - 1).apply(after_a);
    const double pab = ib.apply(at_m).trace().real();
    const CMatrix free_m = phi.pow(l + g - 1).apply(rho0.matrix());
    const double pb = ib.apply(free_m).trace().real();
    const double lhs = std::abs(pab - pa * pb);
    out.lhs.push_back(lhs);
    if (lhs > 1e-14) {
      double x = g, y = std::log(lhs);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
  }
  if (cnt >= 2)
    out.fitted_gamma = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return out;
}

double eventually_probability(const Instrument& inst,
                              const DensityMatrix& rho0,
                              const std::vector<int>& set_s) {
  const Superoperator is = inst.set_map(set_s);
  EigResult eig = eig_general(is.matrix());
  const double lead = std::abs(eig.values[0]);
  if (lead < 1.0 - 1e-8) return 0.0;

  // eigenvalue 1 must be present and isolated for the contour construction
  double dist_to_one = std::abs(eig.values[0] - cxd(1.0, 0.0));
  if (dist_to_one > 1e-8)
    throw Error(
        "eventually_probability: leading eigenvalue on the unit circle but "
        "away from 1");
  double nearest = 2.0;
  for (size_t k = 1; k < eig.values.size(); ++k)
    nearest = std::min(nearest, std::abs(eig.values[k] - cxd(1.0, 0.0)));
  if (nearest < 1e-6)
    throw Error("eventually_probability: eigenvalue-1 cluster ambiguity");

  auto rep = spectral::analyze(inst.channel);
  if (!rep.satisfies_E)
    throw Error("eventually_probability: channel fails condition (E)");
  Superoperator pi_phi =
      spectral::riesz_projection(inst.channel, 1.0, rep.gap > 0 ? std::min(0.5, (1.0 - std::exp(-rep.gap)) / 2.0) : 0.25);
  Superoperator pi_s = spectral::riesz_projection(is, 1.0, nearest / 2.0);
  return pi_s.apply(pi_phi.apply(rho0.matrix())).trace().real();
}

LdpResult ldp(const Instrument& inst, const std::vector<double>& alphas,
              const std::vector<double>& xs) {
  auto deformed = [&](double alpha) {
    Superoperator acc = Superoperator::zero(inst.maps[0].dim());
    for (size_t m = 0; m < inst.maps.size(); ++m)
      acc = acc + inst.maps[m] * std::exp(alpha * inst.outs[m].value);
    return acc;
  };
  auto lambda_of = [&](double alpha, bool* simple) {
    EigResult eig = eig_general(deformed(alpha).matrix());
    if (simple)
      *simple = eig.values.size() < 2 ||
                std::abs(eig.values[1]) <
                    std::abs(eig.values[0]) * (1.0 - 1e-9);
    return std::log(std::abs(eig.values[0]));
  };

  LdpResult out;
  out.alphas = alphas;
  for (double a : alphas) {
    bool simple = true;
    out.log_mgf.push_back(lambda_of(a, &simple));
    out.simple.push_back(simple);
  }

  // derivative by central differences on the smooth spectral radius
  auto dlambda = [&](double a) {
    const double h = 1e-5;
    return (lambda_of(a + h, nullptr) - lambda_of(a - h, nullptr)) /
           (2.0 * h);
  };

  out.xs = xs;
  for (double x : xs) {
    // bracket alpha with dlambda(alpha) = x; Lambda' is increasing
    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 60 && dlambda(lo) > x; ++i) lo *= 2.0;
    for (int i = 0; i < 60 && dlambda(hi) < x; ++i) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi));
         ++i) {
      double mid = (lo + hi) / 2.0;
      (dlambda(mid) < x ? lo : hi) = mid;
    }
    double a = (lo + hi) / 2.0;
    out.rate.push_back(a * x - lambda_of(a, nullptr));
  }

  // local quadratic coefficient at the mean, 1/(2 Lambda''(0)), with one
  // Richardson step on the second difference
  auto second = [&](double h) {
    return (lambda_of(h, nullptr) - 2.0 * lambda_of(0.0, nullptr) +
            lambda_of(-h, nullptr)) /
           (h * h);
  };
  double d2 = (4.0 * second(5e-4) - second(1e-3)) / 3.0;
  out.quadratic_coefficient = 1.0 / (2.0 * d2);
  return out;
}

MeasurementSetup spin_spin_setup(double p, double lambda, double tau,
                                 const CMatrix& m_op) {
  if (p < 0.0 || p > 1.0) throw Error("spin_spin_setup: p must be in [0,1]");
  // basis {up, down}; sigma_z Hamiltonians, lowering a maps up to down
  CMatrix sz = CMatrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 0) = 1.0;

  MeasurementSetup setup;
  setup.model.h_sys = sz;
  setup.model.h_env = sz;
  setup.model.v =
      lambda * (kron(a.adjoint(), a) + kron(a, a.adjoint()));
  setup.model.tau = tau;
  CMatrix win = CMatrix::Zero(2, 2);
  win(0, 0) = p;
  win(1, 1) = 1.0 - p;
  setup.model.rho_env = win;
  setup.m_op = m_op;
  return setup;
}

CMatrix spin_spin_explicit(double p, const CMatrix& x, double lambda,
                           double tau) {
  const double st = std::sin(lambda * tau), ct = std::cos(lambda * tau);
  const cxd a(-st * st, 0.0);
  const cxd b(0.0, -st * ct);
  const cxd e2 = std::exp(cxd(0.0, 2.0 * tau));
  const cxd em2 = std::conj(e2);
  const cxd win_x = p * x(0, 0) + (1.0 - p) * x(1, 1);
  const cxd is(0.0, st);
  const double q = 1.0 - p;

  CMatrix m = CMatrix::Zero(4, 4);
  // free part omega_in(X) e^{i tau L_S} in the basis {E11, E12, E21, E22}
  m(0, 0) = win_x;
  m(1, 1) = win_x * e2;
  m(2, 2) = win_x * em2;
  m(3, 3) = win_x;
  // interaction correction
  m(0, 0) += q * x(1, 1) * a;
  m(0, 1) += q * x(1, 0) * b;
  m(0, 2) += -q * x(0, 1) * b;
  m(0, 3) += -q * x(0, 0) * a;
  m(1, 0) += -p * x(0, 1) * e2 * is;
  m(1, 1) += e2 * (ct - 1.0) * win_x;
  m(1, 3) += q * x(0, 1) * e2 * is;
  m(2, 0) += p * x(1, 0) * em2 * is;
  m(2, 2) += em2 * (ct - 1.0) * win_x;
  m(2, 3) += -q * x(1, 0) * em2 * is;
  m(3, 0) += -p * x(1, 1) * a;
  m(3, 1) += -p * x(1, 0) * b;
  m(3, 2) += p * x(0, 1) * b;
  m(3, 3) += p * x(0, 0) * a;
  return m;
}

}  // namespace measure
}  // namespace riqs
