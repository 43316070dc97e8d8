#include "riqs/qops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riqs {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      int keep) {
  long total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw Error("partial_trace: dimension mismatch");
  if (keep < 0 || keep >= static_cast<int>(dims.size()))
    throw Error("partial_trace: bad subsystem index");

  const int nfac = static_cast<int>(dims.size());
  // strides[f] = product of dims of the factors to the right of f
  std::vector<long> strides(nfac, 1);
  for (int f = nfac - 2; f >= 0; --f) strides[f] = strides[f + 1] * dims[f + 1];

  const int dk = dims[keep];
  const long env = total / dk;
  CMatrix out = CMatrix::Zero(dk, dk);

  // Walk all joint indices of the traced factors once.
  std::vector<int> idx(nfac, 0);
  for (long e = 0; e < env; ++e) {
    // decode e into indices of traced factors
    long rem = e;
    long base = 0;
    for (int f = nfac - 1; f >= 0; --f) {
      if (f == keep) continue;
      int v = static_cast<int>(rem % dims[f]);
      rem /= dims[f];
      base += v * strides[f];
    }
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j)
        out(i, j) += m(base + i * strides[keep], base + j * strides[keep]);
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

CMatrix propagator(const CMatrix& h, double t) {
  if (!is_hermitian(h)) throw Error("propagator: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& w = es.eigenvalues();
  const CMatrix& u = es.eigenvectors();
  CVector ph(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    ph[k] = std::exp(cxd(0.0, -t * w[k]));
  return u * ph.asDiagonal() * u.adjoint();
}

CMatrix expm_diagonalizable(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success) throw Error("expm: eigensolver failed");
  CVector ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) ev[k] = std::exp(ev[k]);
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().fullPivLu().inverse();
}

EigResult eig_general(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error("eig_general: non-square input");
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) throw Error("eig_general: no convergence");

  const Eigen::Index n = m.rows();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.eigenvalues()[a]) > std::abs(es.eigenvalues()[b]);
  });

  EigResult r;
  r.values.resize(n);
  r.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r.values[k] = es.eigenvalues()[order[k]];
    r.vectors.col(k) = es.eigenvectors().col(order[k]);
  }
  const double scale = std::max(1.0, op_norm(m));
  for (Eigen::Index k = 0; k < n; ++k) {
    double res = (m * r.vectors.col(k) - r.values[k] * r.vectors.col(k)).norm();
    r.max_residual = std::max(r.max_residual, res);
  }
  if (r.max_residual > tol * scale)
    throw Error("eig_general: residual " + std::to_string(r.max_residual) +
                " exceeds tolerance");
  return r;
}

double trace_norm(const CMatrix& a) {
  if (a.rows() == a.cols() && is_hermitian(a, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

double op_norm(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

CVector vec(const CMatrix& rho) {
  const Eigen::Index d = rho.rows();
  CVector v(d * rho.cols());
  for (Eigen::Index j = 0; j < rho.cols(); ++j) v.segment(j * d, d) = rho.col(j);
  return v;
}

CMatrix unvec(const CVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size()) throw Error("unvec: length is not a perfect square");
  CMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) m.col(j) = v.segment(j * d, d);
  return m;
}

CMatrix gibbs(const CMatrix& h, double beta) {
  if (!is_hermitian(h)) throw Error("gibbs: non-Hermitian Hamiltonian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& w = es.eigenvalues();
  // shift by the ground energy so exponentials stay bounded
  const double e0 = w.minCoeff();
  Eigen::VectorXd p(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) p[k] = std::exp(-beta * (w[k] - e0));
  p /= p.sum();
  return es.eigenvectors() * p.cast<cxd>().asDiagonal() *
         es.eigenvectors().adjoint();
}

DensityMatrix DensityMatrix::from(const CMatrix& m, double herm_tol,
                                  double pos_tol, double trace_tol) {
  if (m.rows() != m.cols()) throw Error("DensityMatrix: non-square");
  if (!is_hermitian(m, herm_tol)) throw Error("DensityMatrix: not Hermitian");
  if (std::abs(m.trace() - cxd(1.0, 0.0)) > trace_tol)
    throw Error("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -pos_tol)
    throw Error("DensityMatrix: negative eigenvalue " +
                std::to_string(es.eigenvalues().minCoeff()));
  DensityMatrix rho;
  rho.m_ = (m + m.adjoint()) / 2.0;
  return rho;
}

DensityMatrix DensityMatrix::gibbs(const CMatrix& h, double beta) {
  return from(riqs::gibbs(h, beta));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  CVector n = psi / psi.norm();
  return from(n * n.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return from(CMatrix::Identity(dim, dim) / double(dim));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_norm(a.matrix() - b.matrix());
}

Superoperator::Superoperator(int dim, CMatrix m) : dim_(dim), m_(std::move(m)) {
  if (m_.rows() != long(dim) * dim || m_.cols() != m_.rows())
    throw Error("Superoperator: matrix must be dim^2 x dim^2");
}

Superoperator Superoperator::identity(int dim) {
  return {dim, CMatrix::Identity(long(dim) * dim, long(dim) * dim)};
}

Superoperator Superoperator::zero(int dim) {
  return {dim, CMatrix::Zero(long(dim) * dim, long(dim) * dim)};
}

Superoperator Superoperator::sandwich(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error("Superoperator::sandwich: dimension mismatch");
  return {static_cast<int>(a.rows()), kron(b.transpose(), a)};
}

Superoperator Superoperator::conjugation(const CMatrix& u) {
  return sandwich(u, u.adjoint());
}

Superoperator Superoperator::from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw Error("from_kraus: empty list");
  const int d = static_cast<int>(kraus[0].rows());
  CMatrix m = CMatrix::Zero(long(d) * d, long(d) * d);
  for (const auto& v : kraus) m += kron(v.conjugate(), v);
  return {d, std::move(m)};
}

CMatrix Superoperator::apply(const CMatrix& rho) const {
  return unvec(m_ * vec(rho));
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const {
  CMatrix out = apply(rho.matrix());
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix::from(out, 1e-8, 1e-8, 1e-8);
}

Superoperator Superoperator::compose(const Superoperator& other) const {
  if (dim_ != other.dim_) throw Error("compose: dimension mismatch");
  return {dim_, m_ * other.m_};
}

Superoperator Superoperator::pow(long n) const {
  Superoperator acc = identity(dim_);
  Superoperator base = *this;
  while (n > 0) {
    if (n & 1) acc = acc.compose(base);
    base = base.compose(base);
    n >>= 1;
  }
  return acc;
}

Superoperator Superoperator::dual() const { return {dim_, m_.adjoint()}; }

Superoperator Superoperator::operator+(const Superoperator& o) const {
  return {dim_, m_ + o.m_};
}
Superoperator Superoperator::operator-(const Superoperator& o) const {
  return {dim_, m_ - o.m_};
}
Superoperator Superoperator::operator*(cxd c) const { return {dim_, m_ * c}; }

CMatrix Superoperator::choi() const {
  CMatrix c = CMatrix::Zero(long(dim_) * dim_, long(dim_) * dim_);
  CMatrix eij = CMatrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      eij(i, j) = 1.0;
      c.block(long(i) * dim_, long(j) * dim_, dim_, dim_) = apply(eij);
      eij(i, j) = 0.0;
    }
  return c;
}

double Superoperator::choi_min_eigenvalue() const {
  CMatrix c = choi();
  Eigen::SelfAdjointEigenSolver<CMatrix> es((c + c.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

double Superoperator::trace_preservation_defect() const {
  CMatrix id = CMatrix::Identity(dim_, dim_);
  return (dual().apply(id) - id).cwiseAbs().maxCoeff();
}

bool Superoperator::is_cptp(double tol) const {
  return choi_min_eigenvalue() >= -tol && trace_preservation_defect() <= tol;
}

double Superoperator::spectral_radius() const {
  Eigen::ComplexEigenSolver<CMatrix> es(m_, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace riqs
