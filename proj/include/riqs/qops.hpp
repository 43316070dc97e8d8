#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace riqs {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double tol_herm = 1e-10;
constexpr double tol_trace = 1e-10;
constexpr double tol_pos = 1e-10;
constexpr double tol_eig = 1e-9;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor product, row-major block convention:
// (A (x) B)[i*rB+k, j*cB+l] = A(i,j) * B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Partial trace of an operator on a tensor product with factor dimensions
// `dims`; returns the reduced operator on factor `keep`.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims, int keep);

// exp(-i t H) for Hermitian H, via eigendecomposition.
CMatrix propagator(const CMatrix& h, double t);

// exp(A) for a general matrix through its (assumed diagonalizable)
// eigendecomposition. Used for superoperator semigroups e^{tGamma}.
CMatrix expm_diagonalizable(const CMatrix& a);

struct EigResult {
  std::vector<cxd> values;   // sorted by descending modulus
  CMatrix vectors;           // right eigenvectors, columns match values
  double max_residual = 0.0; // max_k ||M v_k - lambda_k v_k||
};

// Dense nonsymmetric eigendecomposition, eigenvalues sorted by descending
// modulus. Throws if residuals exceed tol * ||M||.
EigResult eig_general(const CMatrix& m, double tol = tol_eig);

bool is_hermitian(const CMatrix& m, double tol = tol_herm);

// ||A||_1 = sum of singular values.
double trace_norm(const CMatrix& a);
// Spectral (operator) norm.
double op_norm(const CMatrix& a);

// Column-stacking vectorization: vec(rho)[j*d+i] = rho(i,j).
CVector vec(const CMatrix& rho);
CMatrix unvec(const CVector& v);

CMatrix gibbs(const CMatrix& h, double beta);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates Hermiticity, positivity and unit trace within tolerances.
  static DensityMatrix from(const CMatrix& m, double herm_tol = tol_herm,
                            double pos_tol = tol_pos,
                            double trace_tol = tol_trace);
  static DensityMatrix gibbs(const CMatrix& h, double beta);
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix maximally_mixed(int dim);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Linear map on d x d operators stored as a d^2 x d^2 matrix in the
// column-stacking convention: rho -> A rho B has matrix B^T (x) A.
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(int dim, CMatrix m);

  static Superoperator identity(int dim);
  static Superoperator zero(int dim);
  // rho -> A rho B
  static Superoperator sandwich(const CMatrix& a, const CMatrix& b);
  // rho -> U rho U^*
  static Superoperator conjugation(const CMatrix& u);
  // rho -> sum_k V_k rho V_k^*
  static Superoperator from_kraus(const std::vector<CMatrix>& kraus);

  int dim() const { return dim_; }
  const CMatrix& matrix() const { return m_; }

  CMatrix apply(const CMatrix& rho) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

  // Composition: (*this) after other.
  Superoperator compose(const Superoperator& other) const;
  Superoperator pow(long n) const;

  // Adjoint for the Hilbert-Schmidt pairing <A,B> = Tr(A^* B); for
  // Hermiticity-preserving maps this is the Heisenberg-picture dual,
  // Tr[dual(A) rho] = Tr[A apply(rho)].
  Superoperator dual() const;

  Superoperator operator+(const Superoperator& o) const;
  Superoperator operator-(const Superoperator& o) const;
  Superoperator operator*(cxd c) const;

  // Choi matrix C = sum_{ij} E_ij (x) L(E_ij); complete positivity is
  // positivity of C.
  CMatrix choi() const;
  double choi_min_eigenvalue() const;
  // || dual(I) - I ||, zero for trace-preserving maps.
  double trace_preservation_defect() const;
  bool is_cptp(double tol = 1e-8) const;
  double spectral_radius() const;

 private:
  int dim_ = 0;
  CMatrix m_;
};

}  // namespace riqs
