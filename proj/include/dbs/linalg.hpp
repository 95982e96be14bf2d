#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dbs/errors.hpp"
#include "dbs/random.hpp"

namespace dbs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols())
    throw dimension_error(std::string(op) + ": matrix must be square");
}

// Ryser's inclusion-exclusion with Gray-code column updates, O(2^n * n).
// Per(empty) := 1 by the empty-product convention.
inline Complex permanent_ryser(const ComplexMatrix& a) {
  require_square(a, "permanent_ryser");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  if (n > 30) throw size_limit_error("permanent_ryser: n > 30 unsupported");

  std::vector<Complex> row_sum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t prev_gray = 0;
  const std::uint64_t end = std::uint64_t(1) << n;
  for (std::uint64_t idx = 1; idx < end; ++idx) {
    const std::uint64_t gray = idx ^ (idx >> 1);
    const std::uint64_t diff = gray ^ prev_gray;
    const int col = std::countr_zero(diff);
    if (gray & diff) {
      for (int i = 0; i < n; ++i) row_sum[i] += a(i, col);
    } else {
      for (int i = 0; i < n; ++i) row_sum[i] -= a(i, col);
    }
    prev_gray = gray;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sum[i];
    const int popcount = std::popcount(gray);
    if ((n - popcount) & 1)
      total -= prod;
    else
      total += prod;
  }
  return total;
}

// Independent oracle: explicit sum over all n! permutations.
inline Complex permanent_naive(const ComplexMatrix& a) {
  require_square(a, "permanent_naive");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  if (n > 10) throw size_limit_error("permanent_naive: n > 10 unsupported");

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= a(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Haar-random m x m unitary: complex Ginibre draw, QR, then the diagonal of R
// normalized to unit modulus multiplies Q. Without the phase fix the result
// is unitary but not Haar-distributed.
inline ComplexMatrix haar_unitary(int m, RandomSeed rs) {
  if (m < 1) throw dimension_error("haar_unitary: m must be >= 1");
  auto engine = make_engine(rs);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double re = normal(engine);
      const double im = normal(engine);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, m);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

// V^dagger V of the input columns; Hermitian positive semidefinite.
inline ComplexMatrix gram_matrix(const ComplexMatrix& cols) {
  return cols.adjoint() * cols;
}

// Max-absolute-entry unitarity residual ||X^dagger X - I||_max.
inline double unitarity_residual(const ComplexMatrix& u) {
  require_square(u, "unitarity_residual");
  const ComplexMatrix d =
      u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace dbs
