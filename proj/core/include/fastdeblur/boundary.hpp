#ifndef FASTDEBLUR_BOUNDARY_HPP
#define FASTDEBLUR_BOUNDARY_HPP

#include <array>
#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace fastdeblur {

using cplx = std::complex<double>;

/// Bases generated by completing a trigonometric system with two boundary
/// columns: the antireflective transform (sine interior, linear boundary
/// columns) and the higher-order transforms (cosine or Fourier interior,
/// quadratic boundary columns).
enum class BoundaryBasis { antireflective, hoc_cosine, hoc_fourier };

/// Sampling interval [a, b] and the n uniformly spaced points used for the
/// basis columns and for polynomial sampling.
struct ExtendedGrid {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> points;
};

ExtendedGrid extended_grid(BoundaryBasis basis, int n);

/// A fully precomputed transform T_X of order n:
///
///       [       |  c_a^T  |       ]
///   T_X [   q   |  X^{-1} |  J q  ]
///       [       |  c_b^T  |       ]
///
/// with X the interior trigonometric transform (DST-I, DCT-II, or DFT) and J
/// the flip. The inverse is applied in O(n log n) by inverting the decoupled
/// part (alpha on the corners, X in the interior, correction columns v and w)
/// and then a rank-2 Sherman-Morrison-Woodbury step with the cached boundary
/// rows. Everything needed per apply is computed once at build time.
///
/// Immutable after construction; applies are pure and safe to run
/// concurrently on distinct inputs.
template <class Scalar>
struct StructuredTransform {
  BoundaryBasis basis{};
  int n = 0;

  std::vector<double> q;        // boundary column, unit 2-norm, q.back() == 0
  std::vector<Scalar> c_a, c_b; // boundary rows, length n-2
  double alpha = 0.0;           // 1/q[0]
  std::vector<Scalar> v;        // -X qhat / q_1
  std::vector<Scalar> w;        // -X J qhat / q_1
  std::vector<Scalar> row_a, row_b; // c_a^T X and c_b^T X
  Scalar ca_v{}, ca_w{}, cb_v{}, cb_w{};
  std::array<Scalar, 4> capacitance{}; // I + [c rows][correction cols], row-major
  bool has_correction = false;  // false for the antireflective basis (c rows are 0)

  ExtendedGrid grid;
};

using RealStructuredTransform = StructuredTransform<double>;
using ComplexStructuredTransform = StructuredTransform<cplx>;
using AnyStructuredTransform =
    std::variant<RealStructuredTransform, ComplexStructuredTransform>;

/// antireflective and hoc_cosine; n >= 5.
RealStructuredTransform build_real_transform(BoundaryBasis basis, int n);
/// hoc_fourier; n >= 5.
ComplexStructuredTransform build_fourier_transform(int n);
/// Dispatches on the basis tag.
AnyStructuredTransform build_transform(BoundaryBasis basis, int n);

/// y = T_X v. One interior trig transform plus O(n) boundary work.
template <class Scalar>
std::vector<Scalar> transform_apply(const StructuredTransform<Scalar>& t,
                                    std::span<const Scalar> v);

/// v = T_X^{-1} y. One interior trig transform plus O(n) vector work.
template <class Scalar>
std::vector<Scalar> transform_apply_inverse(const StructuredTransform<Scalar>& t,
                                            std::span<const Scalar> y);

} // namespace fastdeblur

#endif // FASTDEBLUR_BOUNDARY_HPP
