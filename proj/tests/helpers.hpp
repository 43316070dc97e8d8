#pragma once

#include "riqs/qops.hpp"
#include "riqs/rng.hpp"

namespace riqs {
namespace test {

inline CMatrix random_matrix(CounterRng& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = cxd(2.0 * rng.next_double() - 1.0,
                    2.0 * rng.next_double() - 1.0);
  return m;
}

inline CMatrix random_hermitian(CounterRng& rng, int dim) {
  CMatrix m = random_matrix(rng, dim, dim);
  return (m + m.adjoint()) / 2.0;
}

inline CMatrix random_density(CounterRng& rng, int dim) {
  CMatrix m = random_matrix(rng, dim, dim);
  CMatrix rho = m * m.adjoint();
  return rho / rho.trace();
}

inline CMatrix random_unitary(CounterRng& rng, int dim) {
  CMatrix m = random_matrix(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ();
  return q;
}

inline CMatrix sigma_x() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline CMatrix sigma_z() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace test
}  // namespace riqs
