#ifndef FASTDEBLUR_ORACLE_HPP
#define FASTDEBLUR_ORACLE_HPP

// Slow, dense, obviously-correct constructions of every transform and
// operator, assembled entry-wise from the defining formulas. Test support
// only; nothing here is on the fast path and nothing here calls into it.

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "fastdeblur/boundary.hpp"
#include "fastdeblur/operators.hpp"

namespace fastdeblur::oracle {

template <class Scalar>
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<Scalar> a; // row-major

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Scalar& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  std::vector<Scalar> matvec(std::span<const Scalar> x) const;
  DenseMatrix matmul(const DenseMatrix& other) const;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<cplx>;
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

/// LU with partial pivoting; throws DegenerateError on singular input.
template <class Scalar>
DenseMatrix<Scalar> lu_inverse(const DenseMatrix<Scalar>& m);
template <class Scalar>
std::vector<Scalar> lu_solve(DenseMatrix<Scalar> m, std::vector<Scalar> b);

/// Entry-wise trig matrices: unitary DFT, orthogonal DCT-II, DST-I.
ComplexMatrix dense_fourier(int m);
RealMatrix dense_cosine(int m);
RealMatrix dense_sine(int m);

/// Entry-wise boundary transforms: column 1 is q, interior columns are the
/// basis frequencies sampled on the full extended grid (boundary rows
/// included), last column is Jq.
RealMatrix dense_transform_real(BoundaryBasis basis, int n);
ComplexMatrix dense_transform_fourier(int n);
AnyMatrix dense_transform(BoundaryBasis basis, int n);

/// Explicit blur matrices via the spectral similarity T_X diag(z) T_X^{-1}
/// with a dense LU inverse.
AnyMatrix dense_blur_matrix(const Psf& psf, int n, BoundaryCondition bc);
/// Direct assembly from the boundary-condition substitution rules
/// (periodic and reflective only).
RealMatrix dense_blur_stencil(const Psf& psf, int n, BoundaryCondition bc);

/// Eigenvalues via lambda_i = [U (A e_1)]_i / [U e_1]_i with U = F or C
/// (periodic and reflective only).
std::vector<cplx> eigs_via_e1_ratio(const Psf& psf, int n, BoundaryCondition bc);

/// Kronecker product with the row-major vec convention:
/// vec(A X B^T) = kron(A, B) vec(X).
template <class Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b);

} // namespace fastdeblur::oracle

#endif // FASTDEBLUR_ORACLE_HPP
