#include <doctest.h>

#include "helpers.hpp"
#include "riqs/measure.hpp"
#include "riqs/thermo.hpp"

using namespace riqs;
using namespace riqs::measure;

static CMatrix spin_direction(double theta) {
  CMatrix m(2, 2);
  m << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  return m;
}

TEST_CASE("outcome decomposition") {
  auto outs = outcomes(spin_direction(0.7));
  CHECK(outs.size() == 2);
  CMatrix sum = outs[0].projector + outs[1].projector;
  CHECK((sum - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((outs[0].projector * outs[1].projector).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(outs[0].value + 1.0) < 1e-12);  // eigenvalues -1, +1 sorted
  CHECK(std::abs(outs[1].value - 1.0) < 1e-12);
}

TEST_CASE("instrument sums to the channel") {
  auto setup = spin_spin_setup(0.3, 0.37, 1.1, spin_direction(0.7));
  auto inst = build_instrument(setup);
  Superoperator rdm_channel = build_rdm(setup.model).superop();
  CHECK((inst.channel.matrix() - rdm_channel.matrix()).cwiseAbs().maxCoeff() <
        1e-12);
  for (const auto& m : inst.maps) {
    CHECK(m.choi_min_eigenvalue() > -1e-12);
    CHECK(m.spectral_radius() < 1.0 + 1e-10);
  }
}

TEST_CASE("joint probabilities") {
  auto setup = spin_spin_setup(0.4, 0.37, 1.1, spin_direction(0.7));
  auto inst = build_instrument(setup);
  DensityMatrix rho0 = DensityMatrix::maximally_mixed(2);

  // full-spectrum slot is certain
  CHECK(std::abs(joint_probability(inst, rho0, {{0, 1}}) - 1.0) < 1e-12);

  // Kolmogorov consistency: marginalizing the middle slot leaves the
  // measurement-free channel acting there
  double p3 = joint_probability(inst, rho0, {{0}, {0, 1}, {1}});
  CMatrix mid = inst.channel.apply(inst.maps[0].apply(rho0.matrix()));
  double p2 = inst.maps[1].apply(mid).trace().real();
  CHECK(std::abs(p3 - p2) < 1e-13);
  // insertion at the first slot as well
  double q3 = joint_probability(inst, rho0, {{0, 1}, {0}, {1}});
  CMatrix evolved = inst.channel.apply(rho0.matrix());
  double q2 = joint_probability(inst, DensityMatrix::from(evolved), {{0}, {1}});
  CHECK(std::abs(q3 - q2) < 1e-13);

  // additivity over a partition at a slot
  double pa = joint_probability(inst, rho0, {{0}, {0}});
  double pb = joint_probability(inst, rho0, {{0}, {1}});
  double pm = joint_probability(inst, rho0, {{0}});
  CHECK(std::abs(pa + pb - pm) < 1e-13);

  // probabilities stay in [0,1] and shrink under event refinement
  CHECK(pa >= 0.0);
  CHECK(pm <= 1.0 + 1e-12);
  CHECK(pa <= pm + 1e-13);
  CHECK(joint_probability(inst, rho0, {{0}, {0}, {1}}) <= pa + 1e-13);

  // averaged-state law: summing instruments over outcomes equals the channel
  CMatrix acc = CMatrix::Zero(2, 2);
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2) {
      CMatrix branch = inst.maps[m2].apply(inst.maps[m1].apply(rho0.matrix()));
      acc += branch;
    }
  CMatrix direct = inst.channel.pow(2).apply(rho0.matrix());
  CHECK((acc - direct).cwiseAbs().maxCoeff() < 1e-12);

  // resonant coupling makes outcomes independent with the incoming law
  {
    double tau_res = std::numbers::pi / 0.37;
    auto res_setup = spin_spin_setup(0.3, 0.37, tau_res, spin_direction(0.7));
    auto res_inst = build_instrument(res_setup);
    auto outs = outcomes(spin_direction(0.7));
    double win0 = (res_setup.model.rho_env * outs[0].projector).trace().real();
    double pj = joint_probability(res_inst, rho0, {{0}, {0}});
    CHECK(std::abs(pj - win0 * win0) < 1e-12);
  }

  // post-measurement state: the normalized instrument composition equals the
  // brute-force conditioned reduced state
  {
    const int n = 3;
    std::vector<std::vector<int>> path = {{0}, {1}, {0}};
    CMatrix cond = rho0.matrix();
    for (const auto& s : path) cond = inst.set_map(s).apply(cond);
    double prob = cond.trace().real();
    REQUIRE(prob > 1e-6);
    cond /= prob;

    CMatrix big = rho0.matrix();
    for (int s = 0; s < n; ++s) big = kron(big, setup.model.rho_env);
    const CMatrix u =
        propagator(setup.model.coupled_hamiltonian(), setup.model.tau);
    auto outs = outcomes(spin_direction(0.7));
    for (int s = 0; s < n; ++s) {
      // embed u on (system, probe s) and project the measured probe
      long dim = 2;
      for (int f = 0; f < n; ++f) dim *= 2;
      CMatrix ubig = CMatrix::Zero(dim, dim);
      long stride_sys = dim / 2, stride_probe = 1;
      for (int f = n - 1; f > s; --f) stride_probe *= 2;
      long env = dim / 4;
      for (long e = 0; e < env; ++e) {
        long rem = e, base = 0;
        for (int f = n - 1; f >= 0; --f) {
          if (f == s) continue;
          long stride = 1;
          for (int g = n - 1; g > f; --g) stride *= 2;
          base += (rem % 2) * stride;
          rem /= 2;
        }
        for (int i1 = 0; i1 < 2; ++i1)
          for (int i2 = 0; i2 < 2; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
              for (int j2 = 0; j2 < 2; ++j2)
                ubig(base + i1 * stride_sys + i2 * stride_probe,
                     base + j1 * stride_sys + j2 * stride_probe) =
                    u(i1 * 2 + i2, j1 * 2 + j2);
      }
      CMatrix proj = CMatrix::Identity(2, 2);
      for (int f = 0; f < n; ++f)
        proj = kron(proj, f == s ? outs[path[s][0]].projector
                                 : CMatrix::Identity(2, 2));
      big = proj * ubig * big * ubig.adjoint() * proj;
    }
    CMatrix reduced = partial_trace(big, {2, 2, 2, 2}, 0);
    reduced /= reduced.trace();
    CHECK((reduced - cond).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("explicit 4x4 operator and its properties") {
  const double lambda = 0.37, tau = 1.1;
  CounterRng rng(71, 0);
  for (int rep = 0; rep < 4; ++rep) {
    double p = rng.next_double();
    CMatrix x = test::random_matrix(rng, 2, 2);
    CMatrix closed = spin_spin_explicit(p, x, lambda, tau);

    // numeric dual instrument in the matrix-unit basis
    auto setup = spin_spin_setup(p, lambda, tau, test::sigma_z());
    const CMatrix u =
        propagator(setup.model.coupled_hamiltonian(), setup.model.tau);
    int pairs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CMatrix numeric(4, 4);
    for (int col = 0; col < 4; ++col) {
      CMatrix a = CMatrix::Zero(2, 2);
      a(pairs[col][0], pairs[col][1]) = 1.0;
      CMatrix big = kron(CMatrix::Identity(2, 2), setup.model.rho_env) *
                    u.adjoint() * kron(a, x) * u;
      CMatrix red = partial_trace(big, {2, 2}, 0);
      for (int row = 0; row < 4; ++row)
        numeric(row, col) = red(pairs[row][0], pairs[row][1]);
    }
    CHECK((closed - numeric).cwiseAbs().maxCoeff() < 1e-12);

    // adjoint eigenvector [p, 0, 0, 1-p] at omega_in(x)
    CVector v(4);
    v << p, 0.0, 0.0, 1.0 - p;
    cxd win_x = p * x(0, 0) + (1.0 - p) * x(1, 1);
    CHECK((closed.adjoint() * v - std::conj(win_x) * v).cwiseAbs().maxCoeff() <
          1e-12);
  }

  // X = identity: eigenvalue 1 present
  {
    CMatrix m = spin_spin_explicit(0.3, CMatrix::Identity(2, 2), lambda, tau);
    auto eig = eig_general(m);
    double best = 1e9;
    for (const auto& v : eig.values)
      best = std::min(best, std::abs(v - cxd(1.0, 0.0)));
    CHECK(best < 1e-12);
  }

  // p = 1 lower-triangular spectrum
  {
    CMatrix x = test::random_hermitian(rng, 2);
    auto eig = eig_general(spin_spin_explicit(1.0, x, lambda, tau));
    cxd x11 = x(0, 0);
    std::vector<cxd> expected = {
        x11, x11 * std::exp(cxd(0, 2 * tau)) * std::cos(lambda * tau),
        x11 * std::exp(cxd(0, -2 * tau)) * std::cos(lambda * tau),
        x11 * std::pow(std::cos(lambda * tau), 2)};
    std::vector<bool> used(4, false);
    for (const auto& ev : eig.values) {
      double best = 1e9;
      int arg = -1;
      for (int k = 0; k < 4; ++k)
        if (!used[k] && std::abs(ev - expected[k]) < best) {
          best = std::abs(ev - expected[k]);
          arg = k;
        }
      used[arg] = true;
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("asymptotic statistics") {
  // p = 1 transparency
  {
    auto setup = spin_spin_setup(1.0, 0.37, 1.1, spin_direction(0.7));
    auto st = asymptotic_statistics(setup);
    auto outs = outcomes(spin_direction(0.7));
    for (size_t m = 0; m < outs.size(); ++m)
      CHECK(std::abs(st.frequencies[m] - outs[m].projector(0, 0).real()) <
            1e-9);
    CHECK(std::abs(st.mean - std::cos(0.7)) < 1e-9);
  }

  // frequencies sum to one and match sampled trajectories
  {
    auto setup = spin_spin_setup(0.6, 0.5, 1.3, spin_direction(0.9));
    auto st = asymptotic_statistics(setup);
    double total = 0.0;
    for (double f : st.frequencies) total += f;
    CHECK(std::abs(total - 1.0) < 1e-12);

    auto inst = build_instrument(setup);
    auto emp = sample_frequencies(inst, DensityMatrix::maximally_mixed(2),
                                  400, 64, 5);
    for (size_t m = 0; m < st.frequencies.size(); ++m)
      CHECK(std::abs(emp.frequencies[m] - st.frequencies[m]) <=
            3.0 * emp.std_errors[m] + 5e-3);
  }

  // lambda = 0: no interaction, frequencies are the incoming law
  {
    auto setup = spin_spin_setup(0.6, 0.0, 1.3, spin_direction(0.9));
    auto inst = build_instrument(setup);
    auto outs = outcomes(spin_direction(0.9));
    DensityMatrix rho0 = DensityMatrix::maximally_mixed(2);
    double w0 = (setup.model.rho_env * outs[0].projector).trace().real();
    CHECK(std::abs(joint_probability(inst, rho0, {{0}}) - w0) < 1e-12);
    // independence: correlations vanish identically
    auto dec = correlation_decay(inst, rho0, 1, {0}, {1}, {1, 2, 3});
    for (double l : dec.lhs) CHECK(std::abs(l) < 1e-13);
  }
}

TEST_CASE("frequency flux expansion at weak coupling") {
  // f_m(lambda) = omega_in(E_m) + lambda omega_S (x) omega_in(i tau [V,
  // avg E_m]) + O(lambda^2), with omega_S the weak-coupling limit of the
  // invariant state and avg E_m the probe observable averaged over one
  // interaction period under the free probe dynamics.
  const double tau = std::numbers::pi, theta = 0.7, p = 0.7;
  CMatrix m_theta = spin_direction(theta);
  auto outs = outcomes(m_theta);

  auto freq = [&](double lam) {
    auto setup = spin_spin_setup(p, lam, tau, m_theta);
    return asymptotic_statistics(setup).frequencies;
  };
  // invariant state just inside the ergodic family approximates omega_S
  CMatrix omega_s;
  {
    auto setup = spin_spin_setup(p, 1e-4, tau, m_theta);
    omega_s = asymptotic_statistics(setup).invariant_state.matrix();
  }

  const double h = 1e-3;
  auto up = freq(h), dn = freq(-h);
  auto setup0 = spin_spin_setup(p, 1.0, tau, m_theta);  // V at unit coupling
  const CMatrix v_op = setup0.model.v;
  for (size_t m = 0; m < outs.size(); ++m) {
    double fd = (up[m] - dn[m]) / (2.0 * h);
    CMatrix avg_em =
        thermo::time_ordered_integral(test::sigma_z(), outs[m].projector,
                                      tau) /
        tau;
    CMatrix lifted = kron(CMatrix::Identity(2, 2), avg_em);
    CMatrix comm = cxd(0.0, tau) * (v_op * lifted - lifted * v_op);
    double formula = (kron(omega_s, setup0.model.rho_env) * comm)
                         .trace()
                         .real();
    CHECK(std::abs(fd - formula) < 1e-4);
    // zeroth order is the incoming law
    double win_e = (setup0.model.rho_env * outs[m].projector).trace().real();
    CHECK(std::abs((up[m] + dn[m]) / 2.0 - win_e) < 1e-5);
  }
}

TEST_CASE("correlations scale linearly with the coupling strength") {
  // the dependence generated by the interaction is O(||V||) uniformly in
  // the slot index
  auto max_lhs = [&](double lam) {
    auto setup = spin_spin_setup(0.6, lam, 1.1, spin_direction(0.7));
    auto inst = build_instrument(setup);
    DensityMatrix rho0 = DensityMatrix::maximally_mixed(2);
    double worst = 0.0;
    for (int n = 1; n <= 12; n += 3) {
      auto dec = correlation_decay(inst, rho0, n, {0}, {1}, {1});
      worst = std::max(worst, dec.lhs[0]);
    }
    return worst;
  };
  double l1 = max_lhs(0.05), l2 = max_lhs(0.025);
  CHECK(l2 <= 0.75 * l1);
}

TEST_CASE("correlation decay tracks the spectral gap") {
  auto setup = spin_spin_setup(0.7, 0.37, std::numbers::pi,
                               spin_direction(0.7));
  auto inst = build_instrument(setup);
  std::vector<int> gaps;
  for (int g = 2; g <= 14; g += 2) gaps.push_back(g);
  auto dec = correlation_decay(inst, DensityMatrix::maximally_mixed(2), 2,
                               {0}, {1}, gaps);
  CHECK(dec.fitted_gamma > 0.0);
  CHECK(std::abs(dec.fitted_gamma - dec.channel_gamma) <
        0.2 * dec.channel_gamma);
}

TEST_CASE("eventually probabilities") {
  const double lambda = 0.37, tau = 1.1;
  CVector up(2);
  up << 1.0, 0.0;

  // p = 1, measuring sigma_z: up eventually with probability one
  {
    auto setup = spin_spin_setup(1.0, lambda, tau, test::sigma_z());
    auto inst = build_instrument(setup);
    int up_idx = inst.outs[0].value > inst.outs[1].value ? 0 : 1;
    double pr = eventually_probability(inst, DensityMatrix::pure(up), {up_idx});
    CHECK(std::abs(pr - 1.0) < 1e-9);
    // the complementary set never stabilizes
    double pr_dn =
        eventually_probability(inst, DensityMatrix::pure(up), {1 - up_idx});
    CHECK(pr_dn == 0.0);
  }

  // tilted measurement direction: eventual stabilization impossible
  {
    auto setup = spin_spin_setup(1.0, lambda, tau, spin_direction(0.6));
    auto inst = build_instrument(setup);
    int plus_idx = inst.outs[0].value > inst.outs[1].value ? 0 : 1;
    CHECK(eventually_probability(inst, DensityMatrix::pure(up), {plus_idx}) ==
          0.0);
  }

  // small coupling with omega_in(E_S) < 1: probability zero
  {
    auto setup = spin_spin_setup(0.8, 0.05, tau, test::sigma_z());
    auto inst = build_instrument(setup);
    int up_idx = inst.outs[0].value > inst.outs[1].value ? 0 : 1;
    CHECK(eventually_probability(inst, DensityMatrix::pure(up), {up_idx}) ==
          0.0);
  }
}

TEST_CASE("large deviations") {
  const double lambda = 0.37, tau = 1.1, theta = 0.7;
  auto setup = spin_spin_setup(1.0, lambda, tau, spin_direction(theta));
  auto inst = build_instrument(setup);

  std::vector<double> alphas;
  for (double a = -2.0; a <= 2.0 + 1e-12; a += 0.5) alphas.push_back(a);
  std::vector<double> xs = {std::cos(theta)};
  auto ld = ldp(inst, alphas, xs);

  for (size_t i = 0; i < alphas.size(); ++i) {
    double a = alphas[i];
    double closed = std::log(std::cosh(a) + std::sinh(a) * std::cos(theta));
    CHECK(std::abs(ld.log_mgf[i] - closed) < 1e-8);
    CHECK(ld.simple[i]);
  }
  // Lambda(0) = 0 and the rate vanishes at the mean
  CHECK(std::abs(ld.log_mgf[4]) < 1e-10);
  CHECK(std::abs(ld.rate[0]) < 1e-8);
  // quadratic coefficient 1/(2 Var)
  double var = 1.0 - std::cos(theta) * std::cos(theta);
  CHECK(std::abs(ld.quadratic_coefficient - 1.0 / (2.0 * var)) < 1e-6);
}
