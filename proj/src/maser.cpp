#include "riqs/maser.hpp"

#include <cmath>
#include <numbers>

namespace riqs {
namespace maser {

CMatrix lowering(int n_trunc) {
  CMatrix a = CMatrix::Zero(n_trunc + 1, n_trunc + 1);
  for (int n = 1; n <= n_trunc; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

CMatrix raising(int n_trunc) { return lowering(n_trunc).adjoint(); }

CMatrix number_op(int n_trunc) {
  CMatrix n = CMatrix::Zero(n_trunc + 1, n_trunc + 1);
  for (int k = 0; k <= n_trunc; ++k) n(k, k) = k;
  return n;
}

RIModel build(const MaserParams& p) {
  if (p.n_trunc < 2) throw Error("maser: n_trunc must be >= 2");
  RIModel m;
  m.h_sys = p.E * number_op(p.n_trunc);
  m.h_env = CMatrix::Zero(2, 2);
  m.h_env(1, 1) = p.E0;
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = 1.0;
  m.v = 0.5 * p.lambda *
        (kron(raising(p.n_trunc), b) + kron(lowering(p.n_trunc), b.adjoint()));
  m.tau = p.tau;
  m.rho_env = gibbs(m.h_env, p.beta);
  m.beta_env = p.beta;
  return m;
}

static bool is_perfect_square(long long x, long long* root) {
  if (x < 0) return false;
  auto r = static_cast<long long>(std::llround(std::sqrt(double(x))));
  for (long long k = std::max(0ll, r - 2); k <= r + 2; ++k)
    if (k * k == x) {
      *root = k;
      return true;
    }
  return false;
}

static RabiStructure classify(std::vector<long> res, long n_max, bool exact) {
  RabiStructure out;
  out.resonances = std::move(res);
  out.exact_arithmetic = exact;
  if (out.resonances.empty())
    out.classification = Resonance::NonResonant;
  else if (out.resonances.size() == 1)
    out.classification = Resonance::SimplyResonant;
  else
    out.classification = Resonance::FullyResonant;

  // degenerate iff at least two members of {0} u R are followed by a
  // resonance
  std::vector<long> zero_and_r = {0};
  zero_and_r.insert(zero_and_r.end(), out.resonances.begin(),
                    out.resonances.end());
  int consecutive = 0;
  for (long n : zero_and_r)
    if (std::binary_search(out.resonances.begin(), out.resonances.end(),
                           n + 1))
      ++consecutive;
  out.degenerate = consecutive >= 2;

  long start = 0;
  for (long r : out.resonances) {
    if (r > n_max) break;
    if (r > start) out.sectors.emplace_back(start, r - 1);
    start = r;
  }
  if (start <= n_max) out.sectors.emplace_back(start, n_max);
  return out;
}

RabiStructure rabi_resonances(long eta_num, long eta_den, long xi_num,
                              long xi_den, long n_max) {
  if (eta_den <= 0 || xi_den <= 0 || xi_num < 0 || eta_num < 0)
    throw Error("rabi_resonances: fractions must be non-negative");
  if (xi_num == 0) throw Error("rabi_resonances: xi must be positive");
  std::vector<long> res;
  for (long n = 1; n <= n_max; ++n) {
    // xi n + eta = (xi_num n eta_den + eta_num xi_den) / (xi_den eta_den)
    long long num =
        (long long)xi_num * n * eta_den + (long long)eta_num * xi_den;
    long long den = (long long)xi_den * eta_den;
    if (num % den != 0) continue;
    long long root;
    if (is_perfect_square(num / den, &root)) res.push_back(n);
  }
  return classify(std::move(res), n_max, true);
}

RabiStructure rabi_resonances(double eta, double xi, long n_max) {
  if (xi <= 0) throw Error("rabi_resonances: xi must be positive");
  std::vector<long> res;
  for (long n = 1; n <= n_max; ++n) {
    double x = xi * n + eta;
    double k = std::round(std::sqrt(x));
    if (std::abs(x - k * k) < 1e-9) res.push_back(n);
  }
  return classify(std::move(res), n_max, false);
}

double d_coefficient(const MaserParams& p, long n) {
  const double x = p.xi() * n + p.eta();
  if (x == 0.0) return 0.0;
  double s = std::sin(std::numbers::pi * std::sqrt(x));
  return (1.0 / (1.0 + std::exp(-p.beta * p.E0))) * s * s * (p.xi() * n) / x;
}

JcChannel jc_rdm(const MaserParams& p) {
  const int nt = p.n_trunc;
  const int dim = nt + 1;

  // Rabi-angle functions of the photon number; nu_n = sqrt(lambda^2 n +
  // Delta^2) so that the phase is pi sqrt(xi n + eta) = nu_n tau / 2. The
  // detuning enters C(n) with its sign.
  auto nu_n = [&](double n) {
    return std::sqrt(p.lambda * p.lambda * n + p.delta() * p.delta());
  };
  auto cfun = [&](double n) -> cxd {
    double nn = nu_n(n);
    if (nn == 0.0) return 1.0;
    double ph = nn * p.tau / 2.0;
    return cxd(std::cos(ph), (p.delta() / nn) * std::sin(ph));
  };
  auto sfun = [&](double n) -> double {
    double nn = nu_n(n);
    if (nn == 0.0) return 0.0;
    return (p.lambda / nn) * std::sin(nn * p.tau / 2.0);
  };

  CMatrix phase = CMatrix::Zero(dim, dim);
  CMatrix cn = CMatrix::Zero(dim, dim), cn1 = CMatrix::Zero(dim, dim);
  CMatrix sn = CMatrix::Zero(dim, dim), sn1 = CMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    phase(n, n) = std::exp(cxd(0.0, -p.tau * p.E * n));
    cn(n, n) = cfun(n);
    cn1(n, n) = cfun(n + 1);
    sn(n, n) = sfun(n);
    sn1(n, n) = sfun(n + 1);
  }
  const CMatrix a = lowering(nt), ad = raising(nt);
  const double z = 1.0 + std::exp(-p.beta * p.E0);
  const double w0 = 1.0 / std::sqrt(z);
  const double w1 = std::exp(-p.beta * p.E0 / 2.0) / std::sqrt(z);

  JcChannel ch;
  ch.kraus = {CMatrix(w0 * phase * cn.conjugate()),
              CMatrix(w1 * phase * sn * ad),
              CMatrix(w0 * phase * sn1 * a),
              CMatrix(w1 * phase * cn1)};
  ch.channel = Superoperator::from_kraus(ch.kraus);

  CMatrix defect = -CMatrix::Identity(dim, dim);
  for (const auto& v : ch.kraus) defect += v.adjoint() * v;
  if (nt >= 2)
    ch.boundary_leakage =
        defect.topLeftCorner(nt - 1, nt - 1).cwiseAbs().maxCoeff();
  return ch;
}

CVector strip_of(const CMatrix& x, int d) {
  const int dim = static_cast<int>(x.rows());
  const int len = dim - std::abs(d);
  if (len <= 0) throw Error("strip_of: |d| too large");
  CVector v(len);
  for (int n = 0; n < len; ++n)
    v[n] = d >= 0 ? x(n, n + d) : x(n - d, n);
  return v;
}

CMatrix embed_strip(const CVector& v, int d, int dim) {
  CMatrix x = CMatrix::Zero(dim, dim);
  for (int n = 0; n < v.size(); ++n) {
    if (d >= 0)
      x(n, n + d) = v[n];
    else
      x(n - d, n) = v[n];
  }
  return x;
}

GaugeBlock gauge_block(const Superoperator& channel, int d) {
  const int dim = channel.dim();
  const int len = dim - std::abs(d);
  if (len <= 0) throw Error("gauge_block: |d| exceeds the cutoff");
  GaugeBlock gb;
  gb.block = CMatrix::Zero(len, len);
  gb.cross_leakage = 0.0;
  for (int n = 0; n < len; ++n) {
    CMatrix out = channel.apply(embed_strip(CVector::Unit(len, n), d, dim));
    gb.block.col(n) = strip_of(out, d);
    // zero out the strip and measure what leaks elsewhere
    CMatrix residue = out - embed_strip(strip_of(out, d), d, dim);
    gb.cross_leakage =
        std::max(gb.cross_leakage, residue.cwiseAbs().maxCoeff());
  }
  return gb;
}

SectorStates sector_invariant_states(const MaserParams& p,
                                     const RabiStructure& structure) {
  SectorStates out;
  const double w = p.beta_star() * p.E;  // = beta E0, Gibbs weight per photon
  for (auto [first, last] : structure.sectors) {
    const bool cutoff_terminated =
        last == p.n_trunc &&
        std::abs(d_coefficient(p, p.n_trunc + 1)) > 1e-12;
    if (cutoff_terminated && p.beta <= 0)
      throw Error(
          "sector_invariant_states: no invariant state on an unbounded "
          "sector for beta <= 0");
    CMatrix rho = CMatrix::Zero(p.n_trunc + 1, p.n_trunc + 1);
    double norm = 0.0;
    for (long n = first; n <= last; ++n) norm += std::exp(-w * (n - first));
    for (long n = first; n <= last; ++n)
      rho(n, n) = std::exp(-w * (n - first)) / norm;
    out.states.push_back(DensityMatrix::from(rho));
    if (cutoff_terminated && w > 0) {
      // weight the untruncated Gibbs tail would carry past the cutoff
      double tail = std::exp(-w * (p.n_trunc + 1 - first)) / (1.0 - std::exp(-w));
      out.cutoff_tail_weight = tail / (norm + tail);
    }
  }
  return out;
}

RelaxationReport relax_in_mean(const MaserParams& p,
                               const RabiStructure& structure,
                               const DensityMatrix& rho0, int n_terms) {
  if (structure.degenerate) {
    // extra non-resonance condition: e^{i(tau E + xi pi) d} != 1 for every
    // admissible difference d of consecutive-resonance positions
    std::vector<long> n_set;
    std::vector<long> zero_and_r = {0};
    zero_and_r.insert(zero_and_r.end(), structure.resonances.begin(),
                      structure.resonances.end());
    for (long n : zero_and_r)
      if (std::binary_search(structure.resonances.begin(),
                             structure.resonances.end(), n + 1))
        n_set.push_back(n);
    for (size_t i = 0; i < n_set.size(); ++i)
      for (size_t j = 0; j < n_set.size(); ++j) {
        if (i == j) continue;
        long d = n_set[i] - n_set[j];
        cxd ph = std::exp(
            cxd(0.0, (p.tau * p.E + p.xi() * std::numbers::pi) * double(d)));
        if (std::abs(ph - cxd(1.0, 0.0)) < 1e-8)
          throw Error(
              "relax_in_mean: degenerate resonance structure without the "
              "extra phase condition; off-diagonal peripheral eigenvalues "
              "obstruct relaxation in the mean");
      }
  }

  JcChannel ch = jc_rdm(p);
  SectorStates sec = sector_invariant_states(p, structure);

  std::vector<CMatrix> projectors;
  for (auto [first, last] : structure.sectors) {
    CMatrix pk = CMatrix::Zero(p.n_trunc + 1, p.n_trunc + 1);
    for (long n = first; n <= last; ++n) pk(n, n) = 1.0;
    projectors.push_back(pk);
  }

  RelaxationReport rep;
  for (const auto& pk : projectors)
    rep.initial_weights.push_back(
        (pk * rho0.matrix()).trace().real());
  rep.weight_drift.assign(projectors.size(), 0.0);

  CMatrix acc = CMatrix::Zero(p.n_trunc + 1, p.n_trunc + 1);
  DensityMatrix rho = rho0;
  for (int n = 1; n <= n_terms; ++n) {
    rho = ch.channel.apply(rho);
    acc += rho.matrix();
    for (size_t k = 0; k < projectors.size(); ++k) {
      double wk = (projectors[k] * rho.matrix()).trace().real();
      rep.weight_drift[k] = std::max(rep.weight_drift[k],
                                     std::abs(wk - rep.initial_weights[k]));
    }
  }
  rep.ergodic_mean = DensityMatrix::from(acc / double(n_terms));

  CMatrix pred = CMatrix::Zero(p.n_trunc + 1, p.n_trunc + 1);
  for (size_t k = 0; k < projectors.size(); ++k)
    pred += rep.initial_weights[k] * sec.states[k].matrix();
  rep.predicted_limit = DensityMatrix::from(pred);
  rep.mean_distance = trace_norm(rep.ergodic_mean.matrix() - pred);
  return rep;
}

}  // namespace maser
}  // namespace riqs
