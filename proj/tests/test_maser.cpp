#include <doctest.h>

#include "helpers.hpp"
#include "riqs/maser.hpp"

using namespace riqs;
using namespace riqs::maser;

static MaserParams nonresonant_params() {
  MaserParams p;
  p.E = 1.1;
  p.E0 = 0.9;
  p.lambda = 0.7;
  p.tau = 1.3;
  p.beta = 0.6;
  p.n_trunc = 10;
  return p;
}

TEST_CASE("rabi resonance arithmetic") {
  // xi = 1, eta = 0: perfect squares
  auto st = rabi_resonances(0, 1, 1, 1, 20);
  CHECK(st.resonances == std::vector<long>{1, 4, 9, 16});
  CHECK(st.classification == Resonance::FullyResonant);
  CHECK(!st.degenerate);
  CHECK(st.exact_arithmetic);
  // sectors split exactly at resonances
  CHECK(st.sectors.front() == std::pair<long, long>{0, 0});
  CHECK(st.sectors[1] == std::pair<long, long>{1, 3});
  CHECK(st.sectors[2] == std::pair<long, long>{4, 8});

  // degenerate example: the consecutive pairs (1,2) and (52,53) both occur
  auto deg = rabi_resonances(1, 1, 840, 1, 60);
  CHECK(deg.resonances ==
        std::vector<long>{1, 2, 6, 23, 34, 39, 52, 53});
  CHECK(deg.degenerate);
  // 840 n + 1 is a perfect square at each listed n
  for (long n : deg.resonances) {
    long long x = 840 * n + 1;
    long long k = std::llround(std::sqrt(double(x)));
    CHECK(k * k == x);
  }

  // irrational coupling: no resonances under the floating test
  auto irr = rabi_resonances(0.0, std::sqrt(2.0), 50);
  CHECK(irr.resonances.empty());
  CHECK(irr.classification == Resonance::NonResonant);
  CHECK(!irr.exact_arithmetic);
}

TEST_CASE("closed-form channel against the numeric reduced map") {
  for (double e0 : {0.9, 1.4}) {  // both detuning signs
    MaserParams p = nonresonant_params();
    p.E0 = e0;
    JcChannel ch = jc_rdm(p);
    Superoperator numeric = build_rdm(build(p)).superop();

    // compare on matrix units supported away from the truncation boundary
    const int nt = p.n_trunc;
    double worst = 0.0;
    for (int i = 0; i <= nt - 2; ++i)
      for (int j = 0; j <= nt - 2; ++j) {
        CMatrix e = CMatrix::Zero(nt + 1, nt + 1);
        e(i, j) = 1.0;
        worst = std::max(worst, (ch.channel.apply(e) - numeric.apply(e))
                                    .cwiseAbs()
                                    .maxCoeff());
      }
    CHECK(worst < 1e-10);
    CHECK(ch.boundary_leakage < 1e-12);
  }
  MaserParams p = nonresonant_params();
  JcChannel ch = jc_rdm(p);

  // lambda = 0: free unitary channel
  MaserParams q = p;
  q.lambda = 0.0;
  JcChannel free_ch = jc_rdm(q);
  Superoperator u = Superoperator::conjugation(
      propagator(CMatrix(q.E * number_op(q.n_trunc)), q.tau));
  CHECK((free_ch.channel.matrix() - u.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("diagonal action reproduces the birth-death form") {
  MaserParams p = nonresonant_params();
  JcChannel ch = jc_rdm(p);
  auto diag = gauge_block(ch.channel, 0);
  const int nt = p.n_trunc;

  // 1 - grad^* D(N) e^{-beta E0 N} grad e^{beta E0 N} on the diagonal
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(nt + 1, nt + 1);
  Eigen::MatrixXd grad_star = Eigen::MatrixXd::Zero(nt + 1, nt + 1);
  for (int n = 0; n <= nt; ++n) {
    grad(n, n) = 1.0;
    if (n >= 1) grad(n, n - 1) = -1.0;
    grad_star(n, n) = 1.0;
    if (n + 1 <= nt) grad_star(n, n + 1) = -1.0;
  }
  Eigen::MatrixXd dmat = Eigen::MatrixXd::Zero(nt + 1, nt + 1);
  Eigen::MatrixXd em = dmat, ep = dmat;
  for (int n = 0; n <= nt; ++n) {
    dmat(n, n) = d_coefficient(p, n);
    em(n, n) = std::exp(-p.beta * p.E0 * n);
    ep(n, n) = std::exp(p.beta * p.E0 * n);
  }
  Eigen::MatrixXd l0 = Eigen::MatrixXd::Identity(nt + 1, nt + 1) -
                       grad_star * dmat * em * grad * ep;
  CHECK((diag.block.real() - l0).topLeftCorner(nt - 1, nt - 1)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(diag.block.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gauge symmetry: strips map to strips") {
  MaserParams p = nonresonant_params();
  JcChannel ch = jc_rdm(p);
  for (int d : {0, 1, 2, -3}) {
    auto gb = gauge_block(ch.channel, d);
    CHECK(gb.cross_leakage < 1e-12);
  }
  // strips reassemble the operator
  CounterRng rng(41, 0);
  CMatrix x = test::random_matrix(rng, p.n_trunc + 1, p.n_trunc + 1);
  CMatrix sum = CMatrix::Zero(p.n_trunc + 1, p.n_trunc + 1);
  for (int d = -p.n_trunc; d <= p.n_trunc; ++d)
    sum += embed_strip(strip_of(x, d), d, p.n_trunc + 1);
  CHECK((sum - x).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("nonresonant cavity relaxes to the truncated Gibbs state") {
  MaserParams p = nonresonant_params();
  // floating resonance scan: generic parameters are non-resonant
  auto st = rabi_resonances(p.eta(), p.xi(), p.n_trunc);
  CHECK(st.resonances.empty());
  auto sec = sector_invariant_states(p, st);
  CHECK(sec.states.size() == 1);
  // the single sector state is the truncated Gibbs state at beta*
  CMatrix g = CMatrix::Zero(p.n_trunc + 1, p.n_trunc + 1);
  double z = 0.0;
  for (int n = 0; n <= p.n_trunc; ++n) z += std::exp(-p.beta * p.E0 * n);
  for (int n = 0; n <= p.n_trunc; ++n)
    g(n, n) = std::exp(-p.beta * p.E0 * n) / z;
  CHECK((sec.states[0].matrix() - g).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(sec.cutoff_tail_weight > 0.0);

  // no invariant state on the unbounded sector at beta <= 0
  MaserParams neg = p;
  neg.beta = -0.2;
  CHECK_THROWS_AS(sector_invariant_states(neg, st), Error);
}

TEST_CASE("fully resonant sectors carry conserved weights") {
  MaserParams p;
  p.E = p.E0 = 1.1;   // eta = 0
  p.beta = 0.7;
  p.n_trunc = 9;
  p.tau = 2.2;
  p.lambda = 2.0 * std::numbers::pi / p.tau;  // xi = 1
  auto st = rabi_resonances(0, 1, 1, 1, p.n_trunc);
  REQUIRE(st.sectors.size() == 4);

  CMatrix rho0 = CMatrix::Zero(10, 10);
  rho0(0, 0) = 0.2;
  rho0(1, 1) = 0.3;
  rho0(2, 2) = 0.1;
  rho0(5, 5) = 0.4;
  auto rep = relax_in_mean(p, st, DensityMatrix::from(rho0), 3000);
  for (size_t k = 0; k + 1 < rep.weight_drift.size(); ++k)
    CHECK(rep.weight_drift[k] < 1e-10);
  CHECK(rep.mean_distance < 5e-3);

  // starting from the sector mixture keeps the ergodic mean there
  auto rep_fixed =
      relax_in_mean(p, st, rep.predicted_limit, 200);
  CHECK(rep_fixed.mean_distance < 1e-10);

  // per-sector states are fixed by the channel on interior sectors
  auto sec = sector_invariant_states(p, st);
  JcChannel ch = jc_rdm(p);
  for (size_t k = 0; k + 1 < sec.states.size(); ++k)
    CHECK(trace_norm(ch.channel.apply(sec.states[k].matrix()) -
                     sec.states[k].matrix()) < 1e-12);

  // a state supported in one finite sector mixes exponentially towards the
  // sector's thermal state
  {
    CMatrix r0 = CMatrix::Zero(10, 10);
    r0(1, 1) = 0.6;
    r0(3, 3) = 0.4;
    r0(1, 3) = r0(3, 1) = 0.3;  // coherence within sector [1,3]
    CMatrix state = r0;
    std::vector<double> dist;
    for (int n = 0; n < 80; ++n) {
      state = ch.channel.apply(state);
      dist.push_back(trace_norm(state - sec.states[1].matrix()));
    }
    CHECK(dist[79] < 1e-8);
    CHECK(dist[79] < dist[40]);
    CHECK(dist[40] < dist[10]);
  }
}

TEST_CASE("peripheral spectrum of the diagonal block is {1} per sector") {
  MaserParams p;
  p.E = p.E0 = 1.1;
  p.beta = 0.7;
  p.n_trunc = 9;
  p.tau = 2.2;
  p.lambda = 2.0 * std::numbers::pi / p.tau;
  auto st = rabi_resonances(0, 1, 1, 1, p.n_trunc);
  auto diag = gauge_block(jc_rdm(p).channel, 0);
  for (size_t k = 0; k + 1 < st.sectors.size(); ++k) {
    auto [first, last] = st.sectors[k];
    CMatrix block =
        diag.block.block(first, first, last - first + 1, last - first + 1);
    auto eig = eig_general(block);
    int peripheral = 0;
    for (const auto& v : eig.values)
      if (std::abs(v) > 1.0 - 1e-8) {
        ++peripheral;
        CHECK(std::abs(v - cxd(1.0, 0.0)) < 1e-8);
      }
    CHECK(peripheral == 1);
  }
}

TEST_CASE("peripheral eigenvectors give invariant moduli") {
  // the modulus of any peripheral eigenvector of a gauge block is invariant
  // under the diagonal block
  MaserParams p;
  p.E = p.E0 = 1.1;
  p.beta = 0.7;
  p.n_trunc = 9;
  p.tau = 2.2;
  p.lambda = 2.0 * std::numbers::pi / p.tau;
  JcChannel ch = jc_rdm(p);
  auto diag = gauge_block(ch.channel, 0);

  auto rep0 = eig_general(diag.block);
  for (size_t k = 0; k < rep0.values.size(); ++k) {
    if (std::abs(rep0.values[k]) < 1.0 - 1e-8) continue;
    CMatrix x = embed_strip(rep0.vectors.col(k), 0, p.n_trunc + 1);
    // |X| = sqrt(X^* X)
    Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(x.adjoint() * x));
    CMatrix mod = es.eigenvectors() *
                  es.eigenvalues().cwiseSqrt().cast<cxd>().asDiagonal() *
                  es.eigenvectors().adjoint();
    CMatrix out = ch.channel.apply(mod);
    CHECK((out - mod).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("degenerate structures are refused without the phase condition") {
  MaserParams p;
  p.E = p.E0 = 1.0;
  p.beta = 0.5;
  p.n_trunc = 3;
  // xi = 840 needs lambda tau = 2 pi sqrt(840); eta = 1 similarly; here we
  // just exercise the refusal logic on a synthetic degenerate structure
  RabiStructure st;
  st.resonances = {1, 2};
  st.sectors = {{0, 0}, {1, 1}, {2, 3}};
  st.classification = Resonance::FullyResonant;
  st.degenerate = true;
  // choose tau E so that the phase condition fails for d = 1:
  // (tau E + xi pi) = 2 pi  with xi = (lambda tau / 2 pi)^2
  p.tau = 1.0;
  p.lambda = 2.0 * std::numbers::pi;  // xi = 1
  p.E = 2.0 * std::numbers::pi - std::numbers::pi;  // tau E + pi = 2 pi
  CHECK_THROWS_AS(
      relax_in_mean(p, st, DensityMatrix::maximally_mixed(4), 10), Error);
}
