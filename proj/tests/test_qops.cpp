#include <doctest.h>

#include "helpers.hpp"
#include "riqs/qops.hpp"

using namespace riqs;

TEST_CASE("kron identities") {
  CMatrix i2 = CMatrix::Identity(2, 2);
  CHECK((kron(i2, i2) - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  // sigma_x (x) |0><0|: hand expansion puts ones at (2,0) and (0,2)
  CMatrix p0 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CMatrix k = kron(test::sigma_x(), p0);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(2, 0) = 1.0;
  expected(0, 2) = 1.0;
  CHECK((k - expected).cwiseAbs().maxCoeff() == 0.0);

  // mixed product on random inputs
  CounterRng rng(1, 0);
  for (int rep = 0; rep < 10; ++rep) {
    CMatrix a = test::random_matrix(rng, 2, 2), b = test::random_matrix(rng, 2, 2);
    CMatrix c = test::random_matrix(rng, 2, 2), d = test::random_matrix(rng, 2, 2);
    CHECK((kron(a, b) * kron(c, d) - kron(CMatrix(a * c), CMatrix(b * d)))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("partial trace") {
  CounterRng rng(2, 0);
  CMatrix rho = test::random_density(rng, 3);
  CMatrix sig = test::random_density(rng, 2);
  // product state factorization
  CHECK((partial_trace(kron(rho, sig), {3, 2}, 0) - rho).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((partial_trace(kron(rho, sig), {3, 2}, 1) - sig).cwiseAbs().maxCoeff() <
        1e-14);

  // trace preservation on random Hermitian input
  for (int rep = 0; rep < 5; ++rep) {
    CMatrix m = test::random_hermitian(rng, 12);
    CHECK(std::abs(partial_trace(m, {3, 2, 2}, 1).trace() - m.trace()) < 1e-12);
  }

  // maximally entangled pair reduces to I/2
  CVector bell = CVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  CMatrix proj = bell * bell.adjoint();
  CHECK((partial_trace(proj, {2, 2}, 0) - CMatrix::Identity(2, 2) / 2.0)
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // positivity on positive inputs
  CMatrix big = test::random_density(rng, 8);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(partial_trace(big, {2, 4}, 0));
  CHECK(es.eigenvalues().minCoeff() > -1e-12);

  CHECK_THROWS_AS(partial_trace(big, {3, 3}, 0), Error);
}

TEST_CASE("propagator") {
  CHECK((propagator(CMatrix::Zero(3, 3), 2.0) - CMatrix::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // closed form for exp(-i pi sigma_z)
  CMatrix u = propagator(test::sigma_z(), std::numbers::pi);
  CHECK(std::abs(u(0, 0) - cxd(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(u(1, 1) - cxd(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(u(0, 1)) < 1e-14);

  CounterRng rng(3, 0);
  CMatrix h = test::random_hermitian(rng, 4);
  CMatrix u1 = propagator(h, 0.7), u2 = propagator(h, 1.9);
  CHECK((u1 * u2 - propagator(h, 2.6)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((u1.adjoint() * u1 - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);

  CMatrix nh = test::random_matrix(rng, 3, 3);
  CHECK_THROWS_AS(propagator(nh, 1.0), Error);
}

TEST_CASE("eig_general") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = cxd(0.2, 0.1);
  d(1, 1) = cxd(-0.9, 0.0);
  d(2, 2) = cxd(0.0, 0.5);
  auto r = eig_general(d);
  CHECK(std::abs(r.values[0] - cxd(-0.9, 0.0)) < 1e-12);  // largest modulus
  CHECK(std::abs(r.values[2] - cxd(0.2, 0.1)) < 1e-12);

  // near-defective 2x2 still meets the residual bound
  CMatrix j(2, 2);
  j << 1.0, 1.0, 1e-7, 1.0;
  CHECK_NOTHROW(eig_general(j));

  CounterRng rng(4, 0);
  CMatrix u = test::random_unitary(rng, 5);
  auto ru = eig_general(u);
  for (const auto& v : ru.values) CHECK(std::abs(std::abs(v) - 1.0) < 1e-10);
}

TEST_CASE("vectorization and superoperators") {
  CounterRng rng(5, 0);
  CMatrix rho = test::random_matrix(rng, 3, 3);
  CHECK((unvec(vec(rho)) - rho).cwiseAbs().maxCoeff() == 0.0);

  // sandwich convention: A rho B <-> B^T (x) A
  CMatrix a = test::random_matrix(rng, 3, 3), b = test::random_matrix(rng, 3, 3);
  Superoperator s = Superoperator::sandwich(a, b);
  CHECK((s.apply(rho) - a * rho * b).cwiseAbs().maxCoeff() < 1e-13);

  // Kraus assembly agrees with direct action
  std::vector<CMatrix> kraus;
  for (int k = 0; k < 3; ++k) kraus.push_back(test::random_matrix(rng, 3, 3));
  Superoperator sk = Superoperator::from_kraus(kraus);
  CMatrix direct = CMatrix::Zero(3, 3);
  for (const auto& v : kraus) direct += v * rho * v.adjoint();
  CHECK((sk.apply(rho) - direct).cwiseAbs().maxCoeff() < 1e-12);

  // unitary conjugation is CPTP with unit spectral radius
  Superoperator su = Superoperator::conjugation(test::random_unitary(rng, 3));
  CHECK(su.is_cptp(1e-10));
  CHECK(su.spectral_radius() < 1.0 + 1e-10);

  // dual pairing Tr[dual(A) rho] = Tr[A L(rho)]
  for (int rep = 0; rep < 5; ++rep) {
    CMatrix aa = test::random_matrix(rng, 3, 3);
    CMatrix rr = test::random_density(rng, 3);
    cxd lhs = (sk.dual().apply(aa) * rr).trace();
    cxd rhs = (aa * sk.apply(rr)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(4));
  CHECK_NOTHROW(DensityMatrix::gibbs(test::sigma_z(), 1.3));

  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::from(bad), Error);  // trace 2
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from(neg), Error);

  CounterRng rng(6, 0);
  CMatrix g = gibbs(test::random_hermitian(rng, 4), 0.9);
  CHECK(std::abs(g.trace() - cxd(1.0, 0.0)) < 1e-13);
}

TEST_CASE("expm on diagonalizable input") {
  CounterRng rng(7, 0);
  CMatrix h = test::random_hermitian(rng, 3);
  CMatrix a = cxd(0.0, -1.3) * h;
  CHECK((expm_diagonalizable(a) - propagator(h, 1.3)).cwiseAbs().maxCoeff() <
        1e-11);
}
