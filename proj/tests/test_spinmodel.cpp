#include <doctest.h>

#include "helpers.hpp"
#include "riqs/spinmodel.hpp"

using namespace riqs;
using namespace riqs::spinmodel;

TEST_CASE("interaction commutes with the total number operator") {
  SpinParams p;
  RIModel m = build(p);
  CMatrix n_tot = kron(raising() * lowering(), CMatrix::Identity(2, 2)) +
                  kron(CMatrix::Identity(2, 2), raising() * lowering());
  CHECK((m.v * n_tot - n_tot * m.v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("infinite-temperature probe is maximally mixed") {
  SpinParams p;
  p.beta = 0.0;
  RIModel m = build(p);
  CHECK((m.rho_env - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("closed-form Kraus operators") {
  CounterRng rng(21, 0);
  for (int rep = 0; rep < 6; ++rep) {
    SpinParams p;
    p.E = 0.5 + rng.next_double();
    p.E0 = 0.5 + rng.next_double();
    p.lambda = 0.2 + rng.next_double();
    p.tau = 0.5 + 2.0 * rng.next_double();
    p.beta = 0.2 + rng.next_double();

    auto kraus = closed_form_kraus(p);
    // completeness
    CMatrix acc = -CMatrix::Identity(2, 2);
    for (const auto& v : kraus) acc += v.adjoint() * v;
    CHECK(acc.cwiseAbs().maxCoeff() < 1e-12);

    // matches the numerically assembled channel entrywise
    Superoperator closed = Superoperator::from_kraus(kraus);
    Superoperator numeric = build_rdm(build(p)).superop();
    CHECK((closed.matrix() - numeric.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }

  // lambda = 0: the exchange Kraus pieces vanish, channel is unitary
  SpinParams p;
  p.lambda = 0.0;
  auto kraus = closed_form_kraus(p);
  CHECK(kraus[1].cwiseAbs().maxCoeff() == 0.0);  // V_01
  CHECK(kraus[2].cwiseAbs().maxCoeff() == 0.0);  // V_10
}

TEST_CASE("closed-form spectrum") {
  SpinParams p;
  p.E = 1.3;
  p.E0 = 0.9;
  p.lambda = 0.65;
  p.tau = 1.7;
  p.beta = 0.8;
  auto s = closed_form_spectrum(p);

  auto numeric = eig_general(build_rdm(build(p)).superop().matrix());
  std::vector<cxd> expected = {s.one, s.e_plus, s.e_minus, cxd(s.e0, 0.0)};
  std::vector<bool> used(4, false);
  for (const auto& ev : numeric.values) {
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

  // |e+-|^2 = e0 exactly
  CHECK(std::abs(std::norm(s.e_plus) - s.e0) < 1e-12);
  CHECK(std::abs(std::norm(s.e_minus) - s.e0) < 1e-12);
  CHECK(s.e0 >= 0.0);
  CHECK(s.e0 <= 1.0);

  // degenerate cases
  SpinParams q;
  q.E = q.E0 = 1.0;  // Delta = 0
  q.lambda = std::numbers::pi / q.tau;  // lambda tau = pi
  CHECK(std::abs(closed_form_spectrum(q).e0) < 1e-12);
  SpinParams u;
  u.lambda = 0.0;
  auto su = closed_form_spectrum(u);
  CHECK(su.e0 == 1.0);
  CHECK(std::abs(std::abs(su.e_plus) - 1.0) < 1e-14);
}

TEST_CASE("Gibbs fixed point at the renormalized temperature") {
  SpinParams p;
  p.E = 1.1;
  p.E0 = 0.7;
  p.lambda = 0.5;
  p.tau = 2.1;
  p.beta = 1.4;
  Superoperator l = Superoperator::from_kraus(closed_form_kraus(p));
  CMatrix g = invariant_state(p).matrix();
  CHECK((l.apply(g) - g).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("degenerate nu = 0 limit") {
  SpinParams p;
  p.E = 1.0;
  p.E0 = 1.0;
  p.lambda = 0.0;  // nu = 0
  auto kraus = closed_form_kraus(p);
  Superoperator closed = Superoperator::from_kraus(kraus);
  Superoperator numeric = build_rdm(build(p)).superop();
  CHECK((closed.matrix() - numeric.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}
