#include "riqs/weaklimit.hpp"

#include <cmath>

namespace riqs {
namespace weaklimit {

double ChainCoupling::z_beta() const {
  double z = 1.0;
  for (double d : deltas) z += std::exp(-beta * d);
  return z;
}

CMatrix ChainCoupling::h0_full() const {
  const int ds = dim_sys(), dp = dim_probe();
  CMatrix he = CMatrix::Zero(dp, dp);
  for (int i = 1; i < dp; ++i) he(i, i) = deltas[i - 1];
  return kron(h_sys, CMatrix::Identity(dp, dp)) +
         kron(CMatrix::Identity(ds, ds), he);
}

CMatrix ChainCoupling::w_full() const {
  const int ds = dim_sys(), dp = dim_probe();
  CMatrix w = CMatrix::Zero(long(ds) * dp, long(ds) * dp);
  for (size_t i = 0; i < vs.size(); ++i) {
    CMatrix raise = CMatrix::Zero(dp, dp);  // a_i^* = |x_i><omega|
    raise(static_cast<int>(i) + 1, 0) = 1.0;
    w += kron(vs[i].adjoint(), raise.adjoint()) + kron(vs[i], raise);
  }
  return w;
}

CMatrix ChainCoupling::probe_state() const {
  const int dp = dim_probe();
  CMatrix rho = CMatrix::Zero(dp, dp);
  rho(0, 0) = 1.0;
  for (int i = 1; i < dp; ++i) rho(i, i) = std::exp(-beta * deltas[i - 1]);
  return rho / rho.trace();
}

RIModel ChainCoupling::to_model(double lambda_override,
                                double tau_override) const {
  RIModel m;
  m.h_sys = h_sys;
  const int dp = dim_probe();
  m.h_env = CMatrix::Zero(dp, dp);
  for (int i = 1; i < dp; ++i) m.h_env(i, i) = deltas[i - 1];
  m.v = lambda_override * w_full();
  m.tau = tau_override;
  m.rho_env = probe_state();
  m.beta_env = beta;
  return m;
}

// probe-index block (m, m') of a product-space operator, as a system matrix
static CMatrix block_of(const CMatrix& full, int ds, int dp, int m, int mp) {
  CMatrix out(ds, ds);
  for (int s = 0; s < ds; ++s)
    for (int sp = 0; sp < ds; ++sp) out(s, sp) = full(s * dp + m, sp * dp + mp);
  return out;
}

Superoperator heisenberg_transfer(const ChainCoupling& c, double lambda,
                                  double tau) {
  const int ds = c.dim_sys(), dp = c.dim_probe();
  const CMatrix u = propagator(c.h0_full() + lambda * c.w_full(), tau);
  const double z = c.z_beta();
  Superoperator acc = Superoperator::zero(ds);
  for (int m = 0; m < dp; ++m) {
    double w = (m == 0 ? 1.0 : std::exp(-c.beta * c.deltas[m - 1])) / z;
    for (int l = 0; l < dp; ++l) {
      CMatrix ulm = block_of(u, ds, dp, l, m);
      acc = acc + Superoperator::sandwich(ulm.adjoint(), ulm) * w;
    }
  }
  return acc;
}

Superoperator heisenberg_transfer(const ChainCoupling& c) {
  return heisenberg_transfer(c, c.lambda, c.tau);
}

// phi1(d) = int_0^tau e^{i s d} ds
static cxd phi1(double d, double tau) {
  if (std::abs(d * tau) < 1e-13) return tau;
  return (std::exp(cxd(0.0, tau * d)) - 1.0) / cxd(0.0, d);
}

// int_0^tau ds1 e^{i a s1} int_0^{s1} ds2 e^{i g s2}
static cxd phi2(double a, double g, double tau) {
  if (std::abs(g * tau) > 1e-9)
    return (phi1(a + g, tau) - phi1(a, tau)) / cxd(0.0, g);
  if (std::abs(a * tau) > 1e-9) {
    cxd ia(0.0, a);
    cxd e = std::exp(cxd(0.0, a * tau));
    return tau * e / ia - (e - 1.0) / (ia * ia);
  }
  return tau * tau / 2.0;
}

// F(tau) and G(tau) of the expansion e^{-i tau (H0 + l W)} =
// e^{-i tau H0} + l F + l^2 G + O(l^3), exact in tau.
static void fg_terms(const CMatrix& h0, const CMatrix& w_op, double tau,
                     CMatrix* f_out, CMatrix* g_out) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h0);
  const auto& ev = es.eigenvalues();
  const CMatrix& u = es.eigenvectors();
  const CMatrix wt = u.adjoint() * w_op * u;
  const Eigen::Index n = ev.size();

  CMatrix i1(n, n), i2(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      i1(a, b) = wt(a, b) * phi1(ev[a] - ev[b], tau);
      cxd s = 0.0;
      for (Eigen::Index c = 0; c < n; ++c)
        s += wt(a, c) * wt(c, b) * phi2(ev[a] - ev[c], ev[c] - ev[b], tau);
      i2(a, b) = s;
    }
  const CMatrix e_m = propagator(h0, tau);
  *f_out = cxd(0.0, -1.0) * e_m * (u * i1 * u.adjoint());
  *g_out = -e_m * (u * i2 * u.adjoint());
}

SecondOrder second_order_terms(const ChainCoupling& c) {
  const int ds = c.dim_sys(), dp = c.dim_probe();
  const CMatrix h0 = c.h0_full(), w = c.w_full();

  // H1: W must be off-diagonal w.r.t. the probe vacuum projection
  for (int s = 0; s < ds; ++s)
    for (int sp = 0; sp < ds; ++sp)
      if (std::abs(w(s * dp, sp * dp)) > 1e-12)
        throw Error("second_order_terms: P W P != 0");

  SecondOrder so;
  fg_terms(h0, w, c.tau, &so.f_plus, &so.g_plus);
  fg_terms(h0, w, -c.tau, &so.f_minus, &so.g_minus);

  const CMatrix e_s_m = propagator(c.h_sys, c.tau);   // e^{-i tau h_S}
  const CMatrix e_s_p = e_s_m.adjoint();              // e^{+i tau h_S}

  Superoperator t = Superoperator::zero(ds);
  for (int m = 1; m < dp; ++m) {
    const double dm = c.deltas[m - 1];
    const double em = std::exp(-c.beta * dm);
    t = t + Superoperator::sandwich(block_of(so.f_minus, ds, dp, m, 0),
                                    block_of(so.f_plus, ds, dp, 0, m)) *
                em;
    t = t + Superoperator::sandwich(block_of(so.f_minus, ds, dp, 0, m),
                                    block_of(so.f_plus, ds, dp, m, 0));
    const cxd php = std::exp(cxd(0.0, c.tau * dm));
    t = t + (Superoperator::sandwich(block_of(so.g_minus, ds, dp, m, m),
                                     CMatrix(std::conj(php) * e_s_m)) +
             Superoperator::sandwich(CMatrix(php * e_s_p),
                                     block_of(so.g_plus, ds, dp, m, m))) *
                em;
  }
  t = t + Superoperator::sandwich(block_of(so.g_minus, ds, dp, 0, 0), e_s_m) +
      Superoperator::sandwich(e_s_p, block_of(so.g_plus, ds, dp, 0, 0));
  so.t_beta = t;
  return so;
}

Superoperator gamma_infinity(const ChainCoupling& c) {
  const int ds = c.dim_sys();
  const CMatrix id = CMatrix::Identity(ds, ds);
  Superoperator g = Superoperator::zero(ds);
  for (const auto& v : c.vs) {
    const CMatrix vdv = v.adjoint() * v;
    g = g + Superoperator::sandwich(v.adjoint(), v) -
        (Superoperator::sandwich(vdv, id) + Superoperator::sandwich(id, vdv)) *
            0.5;
  }
  return g;
}

Generators generators(const ChainCoupling& c) {
  const int ds = c.dim_sys();
  const double z = c.z_beta();
  const CMatrix id = CMatrix::Identity(ds, ds);

  Generators gen;
  const CMatrix e_s_m = propagator(c.h_sys, c.tau);
  gen.free_step = Superoperator::sandwich(e_s_m.adjoint(), e_s_m);

  SecondOrder so = second_order_terms(c);
  CMatrix inv_free = gen.free_step.matrix().inverse();
  Superoperator k(ds, inv_free * so.t_beta.matrix() * (1.0 / z));
  gen.gamma_weak = spectral::sharp(k, c.h_sys, c.tau);

  // Heisenberg dissipator: for each level m,
  //   e^{-beta dm}/Z (V B V^* - {V V^*, B}/2) + 1/Z (V^* B V - {V^* V, B}/2)
  Superoperator gb = Superoperator::zero(ds);
  for (size_t m = 0; m < c.vs.size(); ++m) {
    const CMatrix& v = c.vs[m];
    const double em = std::exp(-c.beta * c.deltas[m]);
    const CMatrix vv = v * v.adjoint();
    const CMatrix vdv = v.adjoint() * v;
    gb = gb + (Superoperator::sandwich(v, v.adjoint()) -
               (Superoperator::sandwich(vv, id) +
                Superoperator::sandwich(id, vv)) *
                   0.5) *
                  (em / z);
    gb = gb + (Superoperator::sandwich(v.adjoint(), v) -
               (Superoperator::sandwich(vdv, id) +
                Superoperator::sandwich(id, vdv)) *
                   0.5) *
                  (1.0 / z);
  }
  gen.gamma_dissipator = gb;

  // i[h_S, .] acting on observables
  Superoperator comm(
      ds, cxd(0.0, 1.0) * (Superoperator::sandwich(c.h_sys, id).matrix() -
                           Superoperator::sandwich(id, c.h_sys).matrix()));
  gen.lindbladian = comm + gb;

  for (size_t m = 0; m < c.vs.size(); ++m)
    gen.lindblad_ops.push_back(std::exp(-c.beta * c.deltas[m] / 2.0) /
                               std::sqrt(z) * c.vs[m]);
  for (size_t m = 0; m < c.vs.size(); ++m)
    gen.lindblad_ops.push_back(c.vs[m].adjoint() / std::sqrt(z));
  return gen;
}

static double fit_order(const std::vector<ScalingRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    double x = std::log(r.parameter), y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingStudy weak_coupling_study(const ChainCoupling& c,
                                 const std::vector<double>& lambdas,
                                 double t) {
  Generators gen = generators(c);
  const CMatrix e_tg = expm_diagonalizable(t * gen.gamma_weak.matrix());
  const CMatrix inv_free = gen.free_step.matrix().inverse();

  ScalingStudy study;
  for (double lam : lambdas) {
    ScalingRow row;
    row.parameter = lam;
    row.steps = std::lround(t / (lam * lam));
    row.rounding = std::abs(t / (lam * lam) - double(row.steps));
    const CMatrix ub = heisenberg_transfer(c, lam, c.tau).matrix();
    Superoperator a(c.dim_sys(), inv_free), b(c.dim_sys(), ub);
    CMatrix prod = a.pow(row.steps).matrix() * b.pow(row.steps).matrix();
    row.error = op_norm(prod - e_tg);
    study.rows.push_back(row);
  }
  study.fitted_order = fit_order(study.rows);
  return study;
}

ScalingStudy critical_study(const ChainCoupling& c,
                            const std::vector<double>& taus) {
  Generators gen = generators(c);
  ScalingStudy study;
  for (double tau : taus) {
    ScalingRow row;
    row.parameter = tau;
    row.steps = std::lround(1.0 / tau);
    row.rounding = std::abs(1.0 / tau - double(row.steps));
    const CMatrix ub =
        heisenberg_transfer(c, 1.0 / std::sqrt(tau), tau).matrix();
    const CMatrix id = CMatrix::Identity(ub.rows(), ub.cols());
    row.error = op_norm((ub - id) / tau - gen.lindbladian.matrix());
    study.rows.push_back(row);
  }
  study.fitted_order = fit_order(study.rows);
  return study;
}

}  // namespace weaklimit
}  // namespace riqs
