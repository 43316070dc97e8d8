#include "riqs/spinmodel.hpp"

namespace riqs {
namespace spinmodel {

CMatrix lowering() {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  return a;
}

CMatrix raising() { return lowering().adjoint(); }

static CMatrix two_level_h(double e) {
  CMatrix h = CMatrix::Zero(2, 2);
  h(1, 1) = e;
  return h;
}

RIModel build(const SpinParams& p) {
  RIModel m;
  m.h_sys = two_level_h(p.E);
  m.h_env = two_level_h(p.E0);
  const CMatrix a = lowering(), ad = raising();
  m.v = 0.5 * p.lambda * (kron(a, ad) + kron(ad, a));
  m.tau = p.tau;
  m.rho_env = gibbs(m.h_env, p.beta);
  m.beta_env = p.beta;
  return m;
}

RIModel build_full_dipole(const SpinParams& p) {
  RIModel m = build(p);
  const CMatrix x = lowering() + raising();
  m.v = 0.5 * p.lambda * kron(x, x);
  return m;
}

std::vector<CMatrix> closed_form_kraus(const SpinParams& p) {
  const double nu = p.nu();
  // C(n) = cos(nu tau n / 2) + i (Delta/nu) sin(nu tau n / 2)
  // S(n) = (lambda/nu) sin(nu tau n / 2); limits C->1, S->0 as nu -> 0
  auto cfun = [&](double n) -> cxd {
    if (nu == 0.0) return 1.0;
    double ph = nu * p.tau * n / 2.0;
    return cxd(std::cos(ph), (p.delta() / nu) * std::sin(ph));
  };
  auto sfun = [&](double n) -> double {
    if (nu == 0.0) return 0.0;
    return (p.lambda / nu) * std::sin(nu * p.tau * n / 2.0);
  };

  auto diag2 = [](cxd v0, cxd v1) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = v0;
    d(1, 1) = v1;
    return d;
  };

  const cxd ph1 = std::exp(cxd(0.0, -p.tau * (p.E + p.E0) / 2.0));
  const CMatrix phase = diag2(1.0, ph1);           // e^{-i tau (E+E0)/2 N}
  const CMatrix cN = diag2(cfun(0), cfun(1));      // C(N)
  const CMatrix c1mN = diag2(cfun(1), cfun(0));    // C(1-N)
  const CMatrix sN = diag2(sfun(0), sfun(1));      // S(N)
  const CMatrix s1mN = diag2(sfun(1), sfun(0));    // S(1-N)
  const CMatrix a = lowering(), ad = raising();

  const double z = p.z_beta();
  const double w0 = 1.0 / std::sqrt(z);
  const double w1 = std::exp(-p.beta * p.E0 / 2.0) / std::sqrt(z);

  CMatrix v00 = w0 * phase * cN.conjugate();
  CMatrix v01 = w1 * phase * sN * ad;
  CMatrix v10 = w0 * phase * s1mN * a;
  CMatrix v11 = w1 * phase * c1mN;
  return {v00, v01, v10, v11};
}

SpinSpectrum closed_form_spectrum(const SpinParams& p) {
  SpinSpectrum s;
  s.one = 1.0;
  const double nu = p.nu();
  const cxd ph = std::exp(cxd(0.0, p.tau * (p.E + p.E0) / 2.0));
  cxd c;
  if (nu == 0.0)
    c = 1.0;
  else
    c = cxd(std::cos(nu * p.tau / 2.0),
            (p.delta() / nu) * std::sin(nu * p.tau / 2.0));
  s.e_plus = ph * c;
  s.e_minus = std::conj(ph) * std::conj(c);
  s.e0 = p.e0();
  s.beta_star = p.beta_star();
  return s;
}

DensityMatrix invariant_state(const SpinParams& p) {
  return DensityMatrix::gibbs(two_level_h(p.E), p.beta_star());
}

}  // namespace spinmodel
}  // namespace riqs
