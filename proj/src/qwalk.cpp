#include "riqs/qwalk.hpp"

#include <cmath>
#include <numbers>

namespace riqs {
namespace qwalk {

void WalkSpec::validate() const {
  if (dim < 1 || dim > 2) throw Error("WalkSpec: dim must be 1 or 2");
  const int cd = coin_dim();
  if (static_cast<int>(jumps.size()) != cd)
    throw Error("WalkSpec: need one jump per coin direction");
  for (const auto& r : jumps)
    if (r[0] == 0 && r[1] == 0) throw Error("WalkSpec: zero jump");
  if (coins.empty() || coins.size() != coin_probs.size())
    throw Error("WalkSpec: bad coin law");
  double acc = 0.0;
  for (double p : coin_probs) acc += p;
  if (std::abs(acc - 1.0) > 1e-12)
    throw Error("WalkSpec: coin probabilities must sum to 1");
  for (const auto& c : coins) {
    if (c.rows() != cd || c.cols() != cd)
      throw Error("WalkSpec: coin dimension mismatch");
    if ((c.adjoint() * c - CMatrix::Identity(cd, cd)).cwiseAbs().maxCoeff() >
        1e-12)
      throw Error("WalkSpec: coin not unitary");
  }
  if (coin_state.rows() != cd) throw Error("WalkSpec: bad coin state");
}

WalkSpec WalkSpec::symmetric(int d, std::vector<CMatrix> coins,
                             std::vector<double> probs,
                             const CMatrix& coin_state) {
  WalkSpec s;
  s.dim = d;
  for (int axis = 0; axis < d; ++axis) {
    std::array<int, 2> up{0, 0}, dn{0, 0};
    up[axis] = 1;
    dn[axis] = -1;
    s.jumps.push_back(up);
    s.jumps.push_back(dn);
  }
  s.coins = std::move(coins);
  s.coin_probs = std::move(probs);
  s.coin_state = coin_state;
  s.validate();
  return s;
}

std::array<double, 2> WalkSpec::mean_jump() const {
  std::array<double, 2> r{0.0, 0.0};
  for (const auto& j : jumps) {
    r[0] += j[0];
    r[1] += j[1];
  }
  r[0] /= jumps.size();
  r[1] /= jumps.size();
  return r;
}

const CMatrix& Amplitudes::at(int k1, int k2) const {
  const int w = 2 * n + 1;
  return j_ops[dim == 1 ? (k1 + n) : long(k1 + n) * w + (k2 + n)];
}

double Amplitudes::unitarity_defect() const {
  const Eigen::Index cd = j_ops[0].rows();
  CMatrix acc = CMatrix::Zero(cd, cd);
  for (const auto& j : j_ops) acc += j.adjoint() * j;
  return (acc - CMatrix::Identity(cd, cd)).cwiseAbs().maxCoeff();
}

Amplitudes amplitudes(const WalkSpec& spec,
                      const std::vector<CMatrix>& coin_sequence) {
  spec.validate();
  const int n = static_cast<int>(coin_sequence.size());
  const int cd = spec.coin_dim();
  const int w = 2 * n + 1;
  const int cells = spec.dim == 1 ? w : w * w;

  Amplitudes amp;
  amp.n = n;
  amp.dim = spec.dim;
  amp.j_ops.assign(cells, CMatrix::Zero(cd, cd));

  auto index = [&](int k1, int k2) {
    return spec.dim == 1 ? (k1 + n) : (k1 + n) * w + (k2 + n);
  };
  // J_0(0) = 1 at the origin; layered recursion
  std::vector<CMatrix> cur(cells, CMatrix::Zero(cd, cd));
  cur[index(0, 0)] = CMatrix::Identity(cd, cd);
  std::vector<CMatrix> nxt(cells, CMatrix::Zero(cd, cd));
  for (int s = 0; s < n; ++s) {
    for (auto& m : nxt) m.setZero();
    for (int k1 = -s; k1 <= s; ++k1) {
      const int k2lo = spec.dim == 1 ? 0 : -s;
      const int k2hi = spec.dim == 1 ? 0 : s;
      for (int k2 = k2lo; k2 <= k2hi; ++k2) {
        const CMatrix& j = cur[index(k1, k2)];
        if (j.isZero(0)) continue;
        const CMatrix cj = coin_sequence[s] * j;
        for (int t = 0; t < cd; ++t) {
          int n1 = k1 + spec.jumps[t][0];
          int n2 = spec.dim == 1 ? 0 : k2 + spec.jumps[t][1];
          nxt[index(n1, n2)].row(t) += cj.row(t);
        }
      }
    }
    cur.swap(nxt);
  }
  amp.j_ops = std::move(cur);
  return amp;
}

McMoments mc_moments(const WalkSpec& spec, int n, int trials, uint64_t seed) {
  spec.validate();
  const int cd = spec.coin_dim();
  const int w = 2 * n + 1;
  const long cells = spec.dim == 1 ? w : long(w) * w;

  // purify the coin state: evolve each eigenvector branch
  Eigen::SelfAdjointEigenSolver<CMatrix> es(spec.coin_state);

  // per-trial first and second position moments
  std::vector<std::array<double, 2>> m1(trials);
  std::vector<std::array<std::array<double, 2>, 2>> m2(trials);

  std::vector<CVector> field(cells, CVector::Zero(cd)), scratch(field);

  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<uint64_t>(t));
    std::vector<const CMatrix*> seq(n);
    for (int s = 0; s < n; ++s) {
      double u = rng.next_double(), acc = 0.0;
      size_t pick = spec.coins.size() - 1;
      for (size_t c = 0; c < spec.coins.size(); ++c) {
        acc += spec.coin_probs[c];
        if (u < acc) {
          pick = c;
          break;
        }
      }
      seq[s] = &spec.coins[pick];
    }

    std::vector<double> pos_prob(cells, 0.0);
    auto idx = [&](int k1, int k2) {
      return spec.dim == 1 ? long(k1 + n) : long(k1 + n) * w + (k2 + n);
    };
    for (Eigen::Index br = 0; br < es.eigenvalues().size(); ++br) {
      double wt = es.eigenvalues()[br];
      if (wt < 1e-15) continue;
      for (auto& v : field) v.setZero();
      field[idx(0, 0)] = es.eigenvectors().col(br);
      for (int s = 0; s < n; ++s) {
        for (auto& v : scratch) v.setZero();
        for (int k1 = -s; k1 <= s; ++k1) {
          const int k2lo = spec.dim == 1 ? 0 : -s;
          const int k2hi = spec.dim == 1 ? 0 : s;
          for (int k2 = k2lo; k2 <= k2hi; ++k2) {
            const CVector& v = field[idx(k1, k2)];
            if (v.isZero(0)) continue;
            CVector cv = (*seq[s]) * v;
            for (int dir = 0; dir < cd; ++dir) {
              int n1 = k1 + spec.jumps[dir][0];
              int n2 = spec.dim == 1 ? 0 : k2 + spec.jumps[dir][1];
              scratch[idx(n1, n2)][dir] += cv[dir];
            }
          }
        }
        field.swap(scratch);
      }
      for (long c = 0; c < cells; ++c)
        pos_prob[c] += wt * field[c].squaredNorm();
    }

    std::array<double, 2> m{0, 0};
    std::array<std::array<double, 2>, 2> xx{{{0, 0}, {0, 0}}};
    for (long c = 0; c < cells; ++c) {
      if (pos_prob[c] == 0.0) continue;
      int k1 = spec.dim == 1 ? int(c) - n : int(c / w) - n;
      int k2 = spec.dim == 1 ? 0 : int(c % w) - n;
      double x[2] = {double(k1), double(k2)};
      for (int i = 0; i < spec.dim; ++i) {
        m[i] += x[i] * pos_prob[c];
        for (int j = 0; j < spec.dim; ++j)
          xx[i][j] += x[i] * x[j] * pos_prob[c];
      }
    }
    m1[t] = m;
    m2[t] = xx;
  }

  // mixture statistics: mean_i = E_t[m_i], cov_ij = E_t[xx_ij] - mean mean;
  // standard errors via the linearized per-trial influence values
  McMoments out;
  std::array<double, 2> mean{0, 0};
  std::array<std::array<double, 2>, 2> second{{{0, 0}, {0, 0}}};
  for (int t = 0; t < trials; ++t)
    for (int i = 0; i < spec.dim; ++i) {
      mean[i] += m1[t][i] / trials;
      for (int j = 0; j < spec.dim; ++j)
        second[i][j] += m2[t][i][j] / trials;
    }
  for (int i = 0; i < spec.dim; ++i) {
    out.moments.mean[i] = mean[i];
    double var_m = 0.0;
    for (int t = 0; t < trials; ++t) {
      double d = m1[t][i] - mean[i];
      var_m += d * d;
    }
    out.mean_std_error[i] = std::sqrt(var_m / trials / trials);
    for (int j = 0; j < spec.dim; ++j) {
      out.moments.covariance[i][j] = second[i][j] - mean[i] * mean[j];
      double var_c = 0.0;
      for (int t = 0; t < trials; ++t) {
        double infl = m2[t][i][j] - mean[i] * m1[t][j] - mean[j] * m1[t][i] +
                      mean[i] * mean[j] - out.moments.covariance[i][j];
        var_c += infl * infl;
      }
      out.cov_std_error[i][j] = std::sqrt(var_c / trials / trials);
    }
  }
  return out;
}

CMatrix transfer_matrix(const WalkSpec& spec, const std::array<double, 2>& y1,
                        const std::array<double, 2>& y2) {
  const int cd = spec.coin_dim();
  CMatrix mc = CMatrix::Zero(long(cd) * cd, long(cd) * cd);
  for (size_t c = 0; c < spec.coins.size(); ++c)
    mc += spec.coin_probs[c] *
          kron(spec.coins[c].conjugate(), spec.coins[c]);
  CMatrix d1 = CMatrix::Zero(cd, cd), d2 = CMatrix::Zero(cd, cd);
  for (int t = 0; t < cd; ++t) {
    double ph1 = y1[0] * spec.jumps[t][0] + y1[1] * spec.jumps[t][1];
    double ph2 = y2[0] * spec.jumps[t][0] + y2[1] * spec.jumps[t][1];
    d1(t, t) = std::exp(cxd(0.0, ph1));
    d2(t, t) = std::exp(cxd(0.0, ph2));
  }
  return kron(d2, d1) * mc;  // pair map rho -> d1 C rho C^* d2^*(-args)
}

bool diffusive_spectral_check(const WalkSpec& spec, int samples_per_axis) {
  for (int i = 0; i < samples_per_axis; ++i) {
    for (int j = 0; j < (spec.dim == 2 ? samples_per_axis : 1); ++j) {
      std::array<double, 2> v{
          2.0 * std::numbers::pi * i / samples_per_axis,
          spec.dim == 2 ? 2.0 * std::numbers::pi * j / samples_per_axis : 0.0};
      std::array<double, 2> mv{-v[0], -v[1]};
      EigResult eig = eig_general(transfer_matrix(spec, v, mv));
      int peripheral = 0;
      bool one_found = false;
      for (const auto& ev : eig.values)
        if (std::abs(ev) > 1.0 - 1e-8) {
          ++peripheral;
          if (std::abs(ev - cxd(1.0, 0.0)) < 1e-8) one_found = true;
        }
      if (peripheral != 1 || !one_found) return false;
    }
  }
  return true;
}

// characteristic function Phi_n(y) = (1/N^d) sum_v vec(1)^* [(d(-v) (x)
// d(v+y)) E(conj C (x) C)]^n vec(rho0): exact once N exceeds the
// trigonometric degree 2 n max|r| of the integrand.
static cxd char_fn(const WalkSpec& spec, int n,
                   const std::array<double, 2>& y) {
  const int cd = spec.coin_dim();
  int max_r = 1;
  for (const auto& j : spec.jumps)
    max_r = std::max({max_r, std::abs(j[0]), std::abs(j[1])});
  const int nodes = 2 * n * max_r + 3;

  CVector rho_vec = vec(spec.coin_state);
  CVector id_vec = vec(CMatrix::Identity(cd, cd));

  cxd total = 0.0;
  const int jn = spec.dim == 2 ? nodes : 1;
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < jn; ++j) {
      std::array<double, 2> v{2.0 * std::numbers::pi * i / nodes,
                              spec.dim == 2
                                  ? 2.0 * std::numbers::pi * j / nodes
                                  : 0.0};
      std::array<double, 2> vy{v[0] + y[0], v[1] + y[1]};
      std::array<double, 2> mv{-v[0], -v[1]};
      CMatrix step = transfer_matrix(spec, vy, mv);
      CVector w = rho_vec;
      for (int s = 0; s < n; ++s) w = step * w;
      total += id_vec.dot(w);  // Eigen dot conjugates the left argument
    }
  }
  return total / double(nodes * jn);
}

Moments transfer_moments(const WalkSpec& spec, int n, double y_step) {
  spec.validate();
  auto phi = [&](double a, double b) {
    return char_fn(spec, n, {a, b});
  };

  Moments m;
  auto mean_axis = [&](int axis, double h) {
    auto f = [&](double s) { return axis == 0 ? phi(s, 0.0) : phi(0.0, s); };
    return ((f(h) - f(-h)) / cxd(0.0, 2.0 * h)).real();
  };
  auto second_axis = [&](int axis, double h) {
    auto f = [&](double s) { return axis == 0 ? phi(s, 0.0) : phi(0.0, s); };
    return (-(f(h) - 2.0 * phi(0.0, 0.0) + f(-h)) / (h * h)).real();
  };
  for (int axis = 0; axis < spec.dim; ++axis) {
    double m1 = (4.0 * mean_axis(axis, y_step / 2.0) -
                 mean_axis(axis, y_step)) /
                3.0;
    double m2 = (4.0 * second_axis(axis, y_step / 2.0) -
                 second_axis(axis, y_step)) /
                3.0;
    m.mean[axis] = m1;
    m.covariance[axis][axis] = m2 - m1 * m1;
  }
  if (spec.dim == 2) {
    // mixed second moment by the four-point stencil
    auto cross = [&](double h) {
      return (-(phi(h, h) - phi(h, -h) - phi(-h, h) + phi(-h, -h)) /
              (4.0 * h * h))
          .real();
    };
    double m12 = (4.0 * cross(y_step / 2.0) - cross(y_step)) / 3.0;
    double cov = m12 - m.mean[0] * m.mean[1];
    m.covariance[0][1] = m.covariance[1][0] = cov;
  }
  return m;
}

}  // namespace qwalk
}  // namespace riqs
