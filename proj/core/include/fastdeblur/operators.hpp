#ifndef FASTDEBLUR_OPERATORS_HPP
#define FASTDEBLUR_OPERATORS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fastdeblur/boundary.hpp"
#include "fastdeblur/psf.hpp"

namespace fastdeblur {

enum class BoundaryCondition {
  periodic,
  reflective,
  antireflective,
  hoc_cosine,
  hoc_fourier
};

/// reflective, antireflective, and hoc_cosine require a symmetric mask.
bool needs_symmetric_psf(BoundaryCondition bc);
/// periodic and hoc_fourier diagonalize in a complex basis.
bool is_complex_basis(BoundaryCondition bc);
/// antireflective and hoc bases pin the two boundary eigenvalues to z(0).
bool is_boundary_corrected(BoundaryCondition bc);

const char* to_string(BoundaryCondition bc);
std::optional<BoundaryCondition> parse_boundary_condition(std::string_view name);

/// Symbol evaluation nodes; the boundary indices of corrected operators are
/// pinned to 0 so z(0) = 1 sits on the preserved polynomial subspace.
std::vector<double> eigenvalue_grid(BoundaryCondition bc, int n);

/// Eigenvalue vector d = z(node_i) in O(n log n) (direct summation for
/// compact masks, one padded fast transform otherwise). The pinned boundary
/// eigenvalues of corrected operators are exactly 1. Scalar must be double
/// for real-basis conditions and cplx for periodic/hoc_fourier.
template <class Scalar>
std::vector<Scalar> operator_eigenvalues(const Psf& psf, int n, BoundaryCondition bc);

/// The basis sandwich of a spectral decomposition A = T_X diag(d) T_X^{-1}:
/// synthesize applies T_X, analyze applies T_X^{-1}. For periodic and
/// reflective these are the plain trig transforms (T_X = F^H resp. C^T); for
/// the corrected conditions they wrap a StructuredTransform.
template <class Scalar>
class SpectralBasis {
public:
  SpectralBasis(BoundaryCondition bc, int n);

  BoundaryCondition bc() const { return bc_; }
  int n() const { return n_; }
  const StructuredTransform<Scalar>* structured() const {
    return transform_ ? &*transform_ : nullptr;
  }

  std::vector<Scalar> synthesize(std::span<const Scalar> coeffs) const;
  std::vector<Scalar> analyze(std::span<const Scalar> y) const;

private:
  BoundaryCondition bc_;
  int n_;
  std::optional<StructuredTransform<Scalar>> transform_;
};

/// Blurring operator as a spectral triple (T_X, d, T_X^{-1}). Immutable after
/// build; applies are pure and may run concurrently.
template <class Scalar>
struct BlurOperatorT {
  BoundaryCondition bc{};
  int n = 0;
  std::vector<Scalar> eigenvalues;
  Psf psf;
  SpectralBasis<Scalar> basis;

  /// A f in O(n log n). Real input, real output; for complex bases the result
  /// is projected to its real part and the imaginary l2 norm is reported via
  /// imag_residue when non-null.
  std::vector<double> apply(std::span<const double> f,
                            double* imag_residue = nullptr) const;
};

using RealBlurOperator = BlurOperatorT<double>;
using ComplexBlurOperator = BlurOperatorT<cplx>;
using BlurOperator = std::variant<RealBlurOperator, ComplexBlurOperator>;

BlurOperator build_operator(const Psf& psf, int n, BoundaryCondition bc);

/// Same spectral basis as build_operator but with caller-supplied eigenvalues
/// (used for reblurred normal-equation operators like A_X(|z|^2 + mu |s|^2)).
RealBlurOperator operator_from_eigenvalues(BoundaryCondition bc, int n,
                                           std::vector<double> d, Psf psf);
ComplexBlurOperator operator_from_eigenvalues_complex(BoundaryCondition bc, int n,
                                                      std::vector<cplx> d, Psf psf);

std::vector<double> blur_apply(const BlurOperator& op, std::span<const double> f,
                               double* imag_residue = nullptr);

int operator_order(const BlurOperator& op);
BoundaryCondition operator_bc(const BlurOperator& op);

/// g + eta with eta i.i.d. Gaussian rescaled so ||eta|| = level ||g||.
/// Deterministic per seed (counter-based SplitMix64 stream + Box-Muller).
std::vector<double> add_noise(std::span<const double> g, double level,
                              std::uint64_t seed);

} // namespace fastdeblur

#endif // FASTDEBLUR_OPERATORS_HPP
