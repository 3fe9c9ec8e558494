#ifndef FASTDEBLUR_MULTIDIM_HPP
#define FASTDEBLUR_MULTIDIM_HPP

#include <span>
#include <variant>
#include <vector>

#include "fastdeblur/operators.hpp"
#include "fastdeblur/regularize.hpp"
#include "fastdeblur/trig.hpp"

namespace fastdeblur {

/// 2D convolution mask, row-major (2 m1 + 1) x (2 m2 + 1), entries summing
/// to 1. symmetric means quadrantal symmetry (h_{|j|,|k|} determines all).
struct Psf2D {
  std::vector<double> weights;
  int m1 = 0, m2 = 0;
  bool symmetric = false;

  int rows() const { return 2 * m1 + 1; }
  int cols() const { return 2 * m2 + 1; }
  double at(int j, int k) const {
    return weights[static_cast<std::size_t>((m1 + j) * cols() + (m2 + k))];
  }
};

Psf2D make_psf2d(std::vector<double> weights, int rows, int cols,
                 bool normalize = false);
/// Characteristic function of a disk of the given radius, normalized.
Psf2D out_of_focus_psf(int radius);
/// Outer product of two 1D masks.
Psf2D separable_psf2d(const Psf& a, const Psf& b);
Psf2D identity_psf2d();
/// 180-degree rotation (both axes reversed).
Psf2D reblur_psf2d(const Psf2D& psf);

/// Marginal masks of the three-step eigenvalue algorithm: summing the columns
/// leaves the row-axis mask (vertical edges), summing the rows leaves the
/// column-axis mask (horizontal edges).
Psf marginal_sum_columns(const Psf2D& psf); // length 2 m1 + 1
Psf marginal_sum_rows(const Psf2D& psf);    // length 2 m2 + 1

/// z(t1, t2) = sum_{j,k} h_{jk} e^{i (j t1 + k t2)}.
cplx symbol_eval2(const Psf2D& psf, double t1, double t2);

/// Tensor-product transform application: the 1D transform runs down every
/// column (size n1) and then along every row (size n2). direction::forward
/// applies T_X per axis, direction::inverse applies T_X^{-1}.
template <class Scalar>
std::vector<Scalar> tensor_apply(const SpectralBasis<Scalar>& rows_basis,
                                 const SpectralBasis<Scalar>& cols_basis,
                                 std::span<const Scalar> arr, Direction direction);

/// Eigenvalue matrix (row-major n1 x n2) by the three-step scheme: marginal
/// 1D masks give the edge rows/columns, one 2D evaluation fills the interior,
/// and the four doubly-pinned corners are exactly 1.
template <class Scalar>
std::vector<Scalar> eigenvalues_2d(const Psf2D& psf, int n1, int n2,
                                   BoundaryCondition bc);

template <class Scalar>
struct BlurOperator2DT {
  BoundaryCondition bc{};
  int n1 = 0, n2 = 0;
  std::vector<Scalar> eigenvalues; // row-major n1 x n2
  Psf2D psf;
  SpectralBasis<Scalar> rows_basis; // order n1
  SpectralBasis<Scalar> cols_basis; // order n2

  std::vector<double> apply(std::span<const double> f,
                            double* imag_residue = nullptr) const;
};

using RealBlurOperator2D = BlurOperator2DT<double>;
using ComplexBlurOperator2D = BlurOperator2DT<cplx>;
using BlurOperator2D = std::variant<RealBlurOperator2D, ComplexBlurOperator2D>;

BlurOperator2D build_operator_2d(const Psf2D& psf, int n1, int n2,
                                 BoundaryCondition bc);
std::vector<double> blur_apply_2d(const BlurOperator2D& op, std::span<const double> f,
                                  double* imag_residue = nullptr);

struct SmoothingOperator2D {
  SmootherKind kind{};
  std::vector<double> eigenvalues; // row-major n1 x n2
};

/// identity -> all ones; laplacian -> s(x1_i) + s(x2_j) on the axis grids.
SmoothingOperator2D smoothing_eigenvalues_2d(SmootherKind kind,
                                             const BlurOperator2D& op);

std::vector<double> tikhonov_solve_2d(const BlurOperator2D& op,
                                      const SmoothingOperator2D& L,
                                      std::span<const double> g, double mu,
                                      double* imag_residue = nullptr);
double gcv_value_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                    std::span<const double> g, double mu);
GcvResult gcv_select_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                        std::span<const double> g, const GcvSearch& search = {});

} // namespace fastdeblur

#endif // FASTDEBLUR_MULTIDIM_HPP
