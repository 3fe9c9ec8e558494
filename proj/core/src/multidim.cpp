#include "fastdeblur/multidim.hpp"

#include <cmath>
#include <numbers>

#include "fastdeblur/parallel.hpp"
#include "trig_detail.hpp"

namespace fastdeblur {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDirect2DSupportLimit = 4096;

void validate_build_2d(const Psf2D& psf, int n1, int n2, BoundaryCondition bc) {
  if (needs_symmetric_psf(bc) && !psf.symmetric)
    throw ValidationError(std::string(to_string(bc)) +
                          " boundary conditions require a quadrantally "
                          "symmetric 2D psf");
  const bool corrected = is_boundary_corrected(bc);
  const int slack = corrected ? 2 : 0;
  if (corrected && (n1 < 5 || n2 < 5))
    throw ValidationError("boundary-corrected 2D operators need n >= 5 per axis");
  if (psf.rows() > n1 - slack || psf.cols() > n2 - slack)
    throw ValidationError("2D psf support exceeds the per-axis limit");
}

// Interior nodes of the corrected grids are plain trig grids; this returns
// (denominator, node count, start multiple): node_k = step * (k) for k =
// 0..count-1 with step pi/denom (cosine family) or 2 pi/denom (fourier).
struct InteriorGrid {
  int denom = 0;
  bool fourier = false;
};

InteriorGrid interior_grid(BoundaryCondition bc, int n) {
  switch (bc) {
    case BoundaryCondition::periodic: return {n, true};
    case BoundaryCondition::reflective: return {n, false};
    case BoundaryCondition::antireflective: return {n - 1, false};
    case BoundaryCondition::hoc_cosine: return {n - 2, false};
    case BoundaryCondition::hoc_fourier: return {n - 2, true};
  }
  return {};
}

// z2 on the full 2 pi j/d1 x 2 pi k/d2 tensor grid: wrap the mask into a
// d1 x d2 array and run one separable unnormalized inverse 2D FFT.
std::vector<cplx> fast_exp_grid_2d(const Psf2D& psf, int d1, int d2) {
  std::vector<cplx> grid(static_cast<std::size_t>(d1 * d2), cplx{});
  for (int j = -psf.m1; j <= psf.m1; ++j)
    for (int k = -psf.m2; k <= psf.m2; ++k) {
      const int jj = (j % d1 + d1) % d1;
      const int kk = (k % d2 + d2) % d2;
      grid[static_cast<std::size_t>(jj * d2 + kk)] += psf.at(j, k);
    }
  std::vector<cplx> buf_in(static_cast<std::size_t>(d1)), buf_out(buf_in.size());
  for (int k = 0; k < d2; ++k) {
    for (int j = 0; j < d1; ++j) buf_in[static_cast<std::size_t>(j)] = grid[static_cast<std::size_t>(j * d2 + k)];
    detail::fft_c2c(buf_in, buf_out, /*forward=*/false);
    for (int j = 0; j < d1; ++j) grid[static_cast<std::size_t>(j * d2 + k)] = buf_out[static_cast<std::size_t>(j)];
  }
  std::vector<cplx> row_out(static_cast<std::size_t>(d2));
  for (int j = 0; j < d1; ++j) {
    std::span<cplx> row(grid.data() + static_cast<std::ptrdiff_t>(j) * d2,
                        static_cast<std::size_t>(d2));
    detail::fft_c2c(row, row_out, /*forward=*/false);
    std::copy(row_out.begin(), row_out.end(), row.begin());
  }
  return grid; // grid[j*d2+k] = z2(2 pi j/d1, 2 pi k/d2)
}

template <class Scalar>
Scalar narrow_symbol(cplx z) {
  if constexpr (std::is_same_v<Scalar, double>) return z.real();
  else return z;
}

} // namespace

Psf2D make_psf2d(std::vector<double> weights, int rows, int cols, bool normalize) {
  if (rows < 1 || cols < 1 || rows % 2 == 0 || cols % 2 == 0)
    throw ValidationError("2D psf needs odd rows and cols");
  if (static_cast<int>(weights.size()) != rows * cols)
    throw DimensionError("2D psf weight count != rows*cols");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("2D psf weights must be finite");
    sum += w;
  }
  if (normalize) {
    if (sum == 0.0) throw ValidationError("2D psf weights sum to zero");
    for (double& w : weights) w /= sum;
  } else if (std::abs(sum - 1.0) > 1e-8) {
    throw ValidationError("2D psf weights must sum to 1 (pass normalize)");
  }
  Psf2D psf;
  psf.m1 = rows / 2;
  psf.m2 = cols / 2;
  psf.weights = std::move(weights);
  psf.symmetric = true;
  for (int j = -psf.m1; j <= psf.m1 && psf.symmetric; ++j)
    for (int k = -psf.m2; k <= psf.m2; ++k)
      if (psf.at(j, k) != psf.at(-j, k) || psf.at(j, k) != psf.at(j, -k)) {
        psf.symmetric = false;
        break;
      }
  return psf;
}

Psf2D out_of_focus_psf(int radius) {
  if (radius < 1) throw ValidationError("out-of-focus radius must be >= 1");
  const int s = 2 * radius + 1;
  std::vector<double> w(static_cast<std::size_t>(s * s), 0.0);
  for (int j = -radius; j <= radius; ++j)
    for (int k = -radius; k <= radius; ++k)
      if (j * j + k * k <= radius * radius)
        w[static_cast<std::size_t>((j + radius) * s + (k + radius))] = 1.0;
  return make_psf2d(std::move(w), s, s, /*normalize=*/true);
}

Psf2D separable_psf2d(const Psf& a, const Psf& b) {
  std::vector<double> w(static_cast<std::size_t>(a.support() * b.support()));
  for (int j = 0; j < a.support(); ++j)
    for (int k = 0; k < b.support(); ++k)
      w[static_cast<std::size_t>(j * b.support() + k)] =
          a.weights[static_cast<std::size_t>(j)] * b.weights[static_cast<std::size_t>(k)];
  return make_psf2d(std::move(w), a.support(), b.support(), /*normalize=*/true);
}

Psf2D identity_psf2d() { return make_psf2d({1.0}, 1, 1); }

Psf2D reblur_psf2d(const Psf2D& psf) {
  Psf2D out = psf;
  const int r = psf.rows(), c = psf.cols();
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < c; ++k)
      out.weights[static_cast<std::size_t>(j * c + k)] =
          psf.weights[static_cast<std::size_t>((r - 1 - j) * c + (c - 1 - k))];
  return out;
}

Psf marginal_sum_columns(const Psf2D& psf) {
  std::vector<double> w(static_cast<std::size_t>(psf.rows()), 0.0);
  for (int j = 0; j < psf.rows(); ++j)
    for (int k = 0; k < psf.cols(); ++k)
      w[static_cast<std::size_t>(j)] +=
          psf.weights[static_cast<std::size_t>(j * psf.cols() + k)];
  return make_psf(std::move(w), /*normalize=*/true);
}

Psf marginal_sum_rows(const Psf2D& psf) {
  std::vector<double> w(static_cast<std::size_t>(psf.cols()), 0.0);
  for (int j = 0; j < psf.rows(); ++j)
    for (int k = 0; k < psf.cols(); ++k)
      w[static_cast<std::size_t>(k)] +=
          psf.weights[static_cast<std::size_t>(j * psf.cols() + k)];
  return make_psf(std::move(w), /*normalize=*/true);
}

cplx symbol_eval2(const Psf2D& psf, double t1, double t2) {
  cplx z{};
  for (int j = -psf.m1; j <= psf.m1; ++j)
    for (int k = -psf.m2; k <= psf.m2; ++k) {
      const double phase = j * t1 + k * t2;
      z += psf.at(j, k) * cplx{std::cos(phase), std::sin(phase)};
    }
  return z;
}

template <class Scalar>
std::vector<Scalar> tensor_apply(const SpectralBasis<Scalar>& rows_basis,
                                 const SpectralBasis<Scalar>& cols_basis,
                                 std::span<const Scalar> arr, Direction direction) {
  const int n1 = rows_basis.n();
  const int n2 = cols_basis.n();
  if (static_cast<int>(arr.size()) != n1 * n2)
    throw DimensionError("tensor_apply: array size != n1*n2");
  const bool fwd = direction == Direction::forward;
  std::vector<Scalar> out(arr.begin(), arr.end());

  // transform down every column, then along every row
  parallel_for(static_cast<std::size_t>(n2), [&](std::size_t k) {
    std::vector<Scalar> col(static_cast<std::size_t>(n1));
    for (int j = 0; j < n1; ++j)
      col[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j * n2) + k];
    std::vector<Scalar> res = fwd ? rows_basis.synthesize(col) : rows_basis.analyze(col);
    for (int j = 0; j < n1; ++j)
      out[static_cast<std::size_t>(j * n2) + k] = res[static_cast<std::size_t>(j)];
  });
  parallel_for(static_cast<std::size_t>(n1), [&](std::size_t j) {
    std::span<Scalar> row(out.data() + j * static_cast<std::size_t>(n2),
                          static_cast<std::size_t>(n2));
    std::vector<Scalar> res = fwd ? cols_basis.synthesize(row) : cols_basis.analyze(row);
    std::copy(res.begin(), res.end(), row.begin());
  });
  return out;
}

template std::vector<double> tensor_apply(const SpectralBasis<double>&,
                                          const SpectralBasis<double>&,
                                          std::span<const double>, Direction);
template std::vector<cplx> tensor_apply(const SpectralBasis<cplx>&,
                                        const SpectralBasis<cplx>&,
                                        std::span<const cplx>, Direction);

template <class Scalar>
std::vector<Scalar> eigenvalues_2d(const Psf2D& psf, int n1, int n2,
                                   BoundaryCondition bc) {
  validate_build_2d(psf, n1, n2, bc);
  const std::vector<double> nodes1 = eigenvalue_grid(bc, n1);
  const std::vector<double> nodes2 = eigenvalue_grid(bc, n2);
  std::vector<Scalar> d(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));

  const bool corrected = is_boundary_corrected(bc);
  const int i_lo = corrected ? 1 : 0;
  const int i_hi = corrected ? n1 - 1 : n1;
  const int j_lo = corrected ? 1 : 0;
  const int j_hi = corrected ? n2 - 1 : n2;

  // interior block: one 2D symbol evaluation on the tensor grid
  const bool direct = psf.rows() * psf.cols() <= kDirect2DSupportLimit;
  if (direct) {
    for (int i = i_lo; i < i_hi; ++i)
      for (int j = j_lo; j < j_hi; ++j)
        d[static_cast<std::size_t>(i) * n2 + static_cast<std::size_t>(j)] =
            narrow_symbol<Scalar>(
                symbol_eval2(psf, nodes1[static_cast<std::size_t>(i)],
                             nodes2[static_cast<std::size_t>(j)]));
  } else {
    // the pi-spaced cosine grids are the 2 pi-spaced grids of doubled length
    const InteriorGrid g1 = interior_grid(bc, n1);
    const InteriorGrid g2 = interior_grid(bc, n2);
    const int d1 = g1.fourier ? g1.denom : 2 * g1.denom;
    const int d2 = g2.fourier ? g2.denom : 2 * g2.denom;
    std::vector<cplx> grid = fast_exp_grid_2d(psf, d1, d2);
    for (int i = i_lo; i < i_hi; ++i)
      for (int j = j_lo; j < j_hi; ++j) {
        const int ki = static_cast<int>(
            std::lround(nodes1[static_cast<std::size_t>(i)] * d1 / (2.0 * kPi)));
        const int kj = static_cast<int>(
            std::lround(nodes2[static_cast<std::size_t>(j)] * d2 / (2.0 * kPi)));
        d[static_cast<std::size_t>(i) * n2 + static_cast<std::size_t>(j)] =
            narrow_symbol<Scalar>(grid[static_cast<std::size_t>(ki * d2 + kj)]);
      }
  }

  if (corrected) {
    // edges from the two marginal 1D masks: summed columns drive the vertical
    // edges, summed rows the horizontal ones
    const Psf axis1 = marginal_sum_columns(psf);
    const Psf axis2 = marginal_sum_rows(psf);
    const std::vector<Scalar> d1 = operator_eigenvalues<Scalar>(axis1, n1, bc);
    const std::vector<Scalar> d2 = operator_eigenvalues<Scalar>(axis2, n2, bc);
    for (int i = 0; i < n1; ++i) {
      d[static_cast<std::size_t>(i) * n2] = d1[static_cast<std::size_t>(i)];
      d[static_cast<std::size_t>(i) * n2 + static_cast<std::size_t>(n2 - 1)] =
          d1[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < n2; ++j) {
      d[static_cast<std::size_t>(j)] = d2[static_cast<std::size_t>(j)];
      d[static_cast<std::size_t>(n1 - 1) * n2 + static_cast<std::size_t>(j)] =
          d2[static_cast<std::size_t>(j)];
    }
    // doubly-pinned corners carry z(0,0) = 1 by the conservation law
    d[0] = Scalar{1};
    d[static_cast<std::size_t>(n2 - 1)] = Scalar{1};
    d[static_cast<std::size_t>(n1 - 1) * n2] = Scalar{1};
    d[static_cast<std::size_t>(n1 - 1) * n2 + static_cast<std::size_t>(n2 - 1)] = Scalar{1};
  }
  return d;
}

template std::vector<double> eigenvalues_2d(const Psf2D&, int, int, BoundaryCondition);
template std::vector<cplx> eigenvalues_2d(const Psf2D&, int, int, BoundaryCondition);

template <class Scalar>
std::vector<double> BlurOperator2DT<Scalar>::apply(std::span<const double> f,
                                                   double* imag_residue) const {
  if (static_cast<int>(f.size()) != n1 * n2)
    throw DimensionError("blur apply 2d: array size != n1*n2");
  if constexpr (std::is_same_v<Scalar, double>) {
    std::vector<double> coeffs = tensor_apply<double>(rows_basis, cols_basis, f,
                                                      Direction::inverse);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= eigenvalues[i];
    if (imag_residue) *imag_residue = 0.0;
    return tensor_apply<double>(rows_basis, cols_basis, coeffs, Direction::forward);
  } else {
    std::vector<cplx> fc(f.begin(), f.end());
    std::vector<cplx> coeffs =
        tensor_apply<cplx>(rows_basis, cols_basis, fc, Direction::inverse);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= eigenvalues[i];
    std::vector<cplx> yc =
        tensor_apply<cplx>(rows_basis, cols_basis, coeffs, Direction::forward);
    std::vector<double> out(yc.size());
    double imag2 = 0.0;
    for (std::size_t i = 0; i < yc.size(); ++i) {
      out[i] = yc[i].real();
      imag2 += yc[i].imag() * yc[i].imag();
    }
    if (imag_residue) *imag_residue = std::sqrt(imag2);
    return out;
  }
}

template struct BlurOperator2DT<double>;
template struct BlurOperator2DT<cplx>;

BlurOperator2D build_operator_2d(const Psf2D& psf, int n1, int n2,
                                 BoundaryCondition bc) {
  validate_build_2d(psf, n1, n2, bc);
  if (is_complex_basis(bc)) {
    std::vector<cplx> d = eigenvalues_2d<cplx>(psf, n1, n2, bc);
    return ComplexBlurOperator2D{bc, n1, n2, std::move(d), psf,
                                 SpectralBasis<cplx>(bc, n1),
                                 SpectralBasis<cplx>(bc, n2)};
  }
  std::vector<double> d = eigenvalues_2d<double>(psf, n1, n2, bc);
  return RealBlurOperator2D{bc, n1, n2, std::move(d), psf,
                            SpectralBasis<double>(bc, n1),
                            SpectralBasis<double>(bc, n2)};
}

std::vector<double> blur_apply_2d(const BlurOperator2D& op, std::span<const double> f,
                                  double* imag_residue) {
  return std::visit([&](const auto& o) { return o.apply(f, imag_residue); }, op);
}

SmoothingOperator2D smoothing_eigenvalues_2d(SmootherKind kind,
                                             const BlurOperator2D& op) {
  SmoothingOperator2D L;
  L.kind = kind;
  std::visit(
      [&](const auto& o) {
        const std::size_t total =
            static_cast<std::size_t>(o.n1) * static_cast<std::size_t>(o.n2);
        if (kind == SmootherKind::identity) {
          L.eigenvalues.assign(total, 1.0);
          return;
        }
        const std::vector<double> x1 = eigenvalue_grid(o.bc, o.n1);
        const std::vector<double> x2 = eigenvalue_grid(o.bc, o.n2);
        L.eigenvalues.resize(total);
        for (int i = 0; i < o.n1; ++i)
          for (int j = 0; j < o.n2; ++j)
            L.eigenvalues[static_cast<std::size_t>(i) * o.n2 +
                          static_cast<std::size_t>(j)] =
                (2.0 - 2.0 * std::cos(x1[static_cast<std::size_t>(i)])) +
                (2.0 - 2.0 * std::cos(x2[static_cast<std::size_t>(j)]));
        for (std::size_t i = 0; i < total; ++i)
          if (L.eigenvalues[i] == 0.0 && std::abs(o.eigenvalues[i]) == 0.0)
            throw ValidationError("incompatible smoother: joint null space");
      },
      op);
  return L;
}

std::vector<double> tikhonov_solve_2d(const BlurOperator2D& op,
                                      const SmoothingOperator2D& L,
                                      std::span<const double> g, double mu,
                                      double* imag_residue) {
  if (mu <= 0.0) throw ParameterError("mu must be positive");
  return std::visit(
      [&](const auto& o) -> std::vector<double> {
        using Scalar = std::decay_t<decltype(o.eigenvalues[0])>;
        if (static_cast<int>(g.size()) != o.n1 * o.n2)
          throw DimensionError("tikhonov 2d: array size != n1*n2");
        if (L.eigenvalues.size() != g.size())
          throw DimensionError("tikhonov 2d: smoother size != n1*n2");
        if constexpr (std::is_same_v<Scalar, double>) {
          std::vector<double> ghat =
              tensor_apply<double>(o.rows_basis, o.cols_basis, g, Direction::inverse);
          apply_tikhonov_filter<double>(o.eigenvalues, L.eigenvalues, mu, ghat);
          if (imag_residue) *imag_residue = 0.0;
          return tensor_apply<double>(o.rows_basis, o.cols_basis, ghat,
                                      Direction::forward);
        } else {
          std::vector<cplx> gc(g.begin(), g.end());
          std::vector<cplx> ghat =
              tensor_apply<cplx>(o.rows_basis, o.cols_basis, gc, Direction::inverse);
          apply_tikhonov_filter<cplx>(o.eigenvalues, L.eigenvalues, mu, ghat);
          std::vector<cplx> yc = tensor_apply<cplx>(o.rows_basis, o.cols_basis, ghat,
                                                    Direction::forward);
          std::vector<double> out(yc.size());
          double imag2 = 0.0;
          for (std::size_t i = 0; i < yc.size(); ++i) {
            out[i] = yc[i].real();
            imag2 += yc[i].imag() * yc[i].imag();
          }
          if (imag_residue) *imag_residue = std::sqrt(imag2);
          return out;
        }
      },
      op);
}

double gcv_value_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                    std::span<const double> g, double mu) {
  if (mu <= 0.0) throw ParameterError("mu must be positive");
  return std::visit(
      [&](const auto& o) -> double {
        using Scalar = std::decay_t<decltype(o.eigenvalues[0])>;
        if constexpr (std::is_same_v<Scalar, double>) {
          const std::vector<double> ghat =
              tensor_apply<double>(o.rows_basis, o.cols_basis, g, Direction::inverse);
          return gcv_from_coeffs<double>(o.eigenvalues, L.eigenvalues, ghat, mu);
        } else {
          std::vector<cplx> gc(g.begin(), g.end());
          const std::vector<cplx> ghat =
              tensor_apply<cplx>(o.rows_basis, o.cols_basis, gc, Direction::inverse);
          return gcv_from_coeffs<cplx>(o.eigenvalues, L.eigenvalues, ghat, mu);
        }
      },
      op);
}

GcvResult gcv_select_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                        std::span<const double> g, const GcvSearch& search) {
  return std::visit(
      [&](const auto& o) -> GcvResult {
        using Scalar = std::decay_t<decltype(o.eigenvalues[0])>;
        if constexpr (std::is_same_v<Scalar, double>) {
          const std::vector<double> ghat =
              tensor_apply<double>(o.rows_basis, o.cols_basis, g, Direction::inverse);
          return gcv_minimize(
              [&](double mu) {
                return gcv_from_coeffs<double>(o.eigenvalues, L.eigenvalues, ghat, mu);
              },
              search);
        } else {
          std::vector<cplx> gc(g.begin(), g.end());
          const std::vector<cplx> ghat =
              tensor_apply<cplx>(o.rows_basis, o.cols_basis, gc, Direction::inverse);
          return gcv_minimize(
              [&](double mu) {
                return gcv_from_coeffs<cplx>(o.eigenvalues, L.eigenvalues, ghat, mu);
              },
              search);
        }
      },
      op);
}

} // namespace fastdeblur
