#include "fastdeblur/operators.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "fastdeblur/errors.hpp"
#include "fastdeblur/trig.hpp"
#include "trig_detail.hpp"

namespace fastdeblur {
namespace {

constexpr double kPi = std::numbers::pi;

// Direct symbol summation is cheaper than a padded transform for compact
// masks; the crossover follows the support size.
constexpr int kDirectSupportLimit = 64;

// Wrap the mask into length len and apply one unnormalized inverse DFT:
// out_k = z(2 pi k / len). Requires 2m+1 <= len.
std::vector<cplx> wrapped_symbol_fft(const Psf& psf, int len) {
  std::vector<cplx> c(static_cast<std::size_t>(len), cplx{});
  c[0] = psf.at(0);
  for (int j = 1; j <= psf.m; ++j) {
    c[static_cast<std::size_t>(j)] += psf.at(j);
    c[static_cast<std::size_t>(len - j)] += psf.at(-j);
  }
  std::vector<cplx> z(c.size());
  detail::fft_c2c(c, z, /*forward=*/false);
  return z;
}

// z(k pi / denom) for k = 0..count-1; symmetric masks only, exactly real.
std::vector<double> cos_grid_symbol(const Psf& psf, int denom, int count) {
  std::vector<double> z(static_cast<std::size_t>(count));
  if (psf.support() <= kDirectSupportLimit) {
    for (int k = 0; k < count; ++k)
      z[static_cast<std::size_t>(k)] =
          symbol_eval(psf, k * kPi / denom).real();
    return z;
  }
  // the pi-spaced grid is the 2pi-spaced grid of doubled length
  const std::vector<cplx> zz = wrapped_symbol_fft(psf, 2 * denom);
  for (int k = 0; k < count; ++k)
    z[static_cast<std::size_t>(k)] = zz[static_cast<std::size_t>(k)].real();
  return z;
}

// z(2 pi k / len) for k = 0..len-1 for a general mask.
std::vector<cplx> exp_grid_symbol(const Psf& psf, int len) {
  if (psf.support() <= kDirectSupportLimit) {
    std::vector<cplx> z(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k)
      z[static_cast<std::size_t>(k)] = symbol_eval(psf, 2.0 * kPi * k / len);
    return z;
  }
  return wrapped_symbol_fft(psf, len);
}

void validate_build(const Psf& psf, int n, BoundaryCondition bc) {
  if (needs_symmetric_psf(bc) && !psf.symmetric)
    throw ValidationError(std::string(to_string(bc)) +
                          " boundary conditions require a symmetric psf");
  if (is_boundary_corrected(bc)) {
    if (n < 5) throw ValidationError("boundary-corrected operators need n >= 5");
    if (psf.support() > n - 2)
      throw ValidationError("psf support 2m+1 must be <= n-2 for "
                            "boundary-corrected operators");
  } else {
    if (n < 1) throw ValidationError("operator order must be positive");
    if (psf.support() > n)
      throw ValidationError("psf support 2m+1 must be <= n");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// uniform in (0, 1]; the +1 keeps log() finite
double bits_to_u01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

bool needs_symmetric_psf(BoundaryCondition bc) {
  return bc == BoundaryCondition::reflective ||
         bc == BoundaryCondition::antireflective ||
         bc == BoundaryCondition::hoc_cosine;
}

bool is_complex_basis(BoundaryCondition bc) {
  return bc == BoundaryCondition::periodic || bc == BoundaryCondition::hoc_fourier;
}

bool is_boundary_corrected(BoundaryCondition bc) {
  return bc == BoundaryCondition::antireflective ||
         bc == BoundaryCondition::hoc_cosine ||
         bc == BoundaryCondition::hoc_fourier;
}

const char* to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::periodic: return "periodic";
    case BoundaryCondition::reflective: return "reflective";
    case BoundaryCondition::antireflective: return "antireflective";
    case BoundaryCondition::hoc_cosine: return "hoc-cosine";
    case BoundaryCondition::hoc_fourier: return "hoc-fourier";
  }
  return "?";
}

std::optional<BoundaryCondition> parse_boundary_condition(std::string_view name) {
  if (name == "periodic") return BoundaryCondition::periodic;
  if (name == "reflective") return BoundaryCondition::reflective;
  if (name == "antireflective") return BoundaryCondition::antireflective;
  if (name == "hoc-cosine") return BoundaryCondition::hoc_cosine;
  if (name == "hoc-fourier") return BoundaryCondition::hoc_fourier;
  return std::nullopt;
}

std::vector<double> eigenvalue_grid(BoundaryCondition bc, int n) {
  if (is_boundary_corrected(bc) && n < 5)
    throw ValidationError("boundary-corrected grids need n >= 5");
  if (n < 1) throw ValidationError("grid order must be positive");
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  switch (bc) {
    case BoundaryCondition::periodic:
      for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = 2.0 * kPi * i / n;
      break;
    case BoundaryCondition::reflective:
      for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = kPi * i / n;
      break;
    case BoundaryCondition::antireflective:
      // y_i = (i-1) pi/(n-1) for i = 1..n-1, y_n = 0
      for (int i = 0; i < n - 1; ++i)
        x[static_cast<std::size_t>(i)] = kPi * i / (n - 1);
      x[static_cast<std::size_t>(n - 1)] = 0.0;
      break;
    case BoundaryCondition::hoc_cosine:
      // x_1 = x_n = 0, interior is the reflective grid of order n-2
      for (int i = 1; i < n - 1; ++i)
        x[static_cast<std::size_t>(i)] = kPi * (i - 1) / (n - 2);
      break;
    case BoundaryCondition::hoc_fourier:
      // x_1 = x_n = 0, interior is the periodic grid of order n-2
      for (int i = 1; i < n - 1; ++i)
        x[static_cast<std::size_t>(i)] = 2.0 * kPi * (i - 1) / (n - 2);
      break;
  }
  return x;
}

template <class Scalar>
SpectralBasis<Scalar>::SpectralBasis(BoundaryCondition bc, int n) : bc_(bc), n_(n) {
  if constexpr (std::is_same_v<Scalar, double>) {
    if (is_complex_basis(bc))
      throw ValidationError("complex boundary condition in a real basis");
    if (bc == BoundaryCondition::antireflective)
      transform_ = build_real_transform(BoundaryBasis::antireflective, n);
    else if (bc == BoundaryCondition::hoc_cosine)
      transform_ = build_real_transform(BoundaryBasis::hoc_cosine, n);
  } else {
    if (!is_complex_basis(bc))
      throw ValidationError("real boundary condition in a complex basis");
    if (bc == BoundaryCondition::hoc_fourier)
      transform_ = build_fourier_transform(n);
  }
}

template <class Scalar>
std::vector<Scalar> SpectralBasis<Scalar>::synthesize(
    std::span<const Scalar> coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_)
    throw DimensionError("basis synthesize: length mismatch");
  if (transform_) return transform_apply(*transform_, coeffs);
  if constexpr (std::is_same_v<Scalar, double>)
    return cosine_apply(coeffs, Direction::inverse); // A_R = C^T D C
  else
    return fourier_apply(coeffs, Direction::inverse); // A_P = F^H D F
}

template <class Scalar>
std::vector<Scalar> SpectralBasis<Scalar>::analyze(std::span<const Scalar> y) const {
  if (static_cast<int>(y.size()) != n_)
    throw DimensionError("basis analyze: length mismatch");
  if (transform_) return transform_apply_inverse(*transform_, y);
  if constexpr (std::is_same_v<Scalar, double>)
    return cosine_apply(y, Direction::forward);
  else
    return fourier_apply(y, Direction::forward);
}

template class SpectralBasis<double>;
template class SpectralBasis<cplx>;

template <class Scalar>
std::vector<double> BlurOperatorT<Scalar>::apply(std::span<const double> f,
                                                 double* imag_residue) const {
  if (static_cast<int>(f.size()) != n)
    throw DimensionError("blur apply: signal length != operator order");
  if constexpr (std::is_same_v<Scalar, double>) {
    std::vector<double> coeffs = basis.analyze(f);
    for (int i = 0; i < n; ++i)
      coeffs[static_cast<std::size_t>(i)] *= eigenvalues[static_cast<std::size_t>(i)];
    if (imag_residue) *imag_residue = 0.0;
    return basis.synthesize(coeffs);
  } else {
    std::vector<cplx> fc(f.begin(), f.end());
    std::vector<cplx> coeffs = basis.analyze(fc);
    for (int i = 0; i < n; ++i)
      coeffs[static_cast<std::size_t>(i)] *= eigenvalues[static_cast<std::size_t>(i)];
    std::vector<cplx> yc = basis.synthesize(coeffs);
    std::vector<double> out(static_cast<std::size_t>(n));
    double imag2 = 0.0;
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = yc[static_cast<std::size_t>(i)].real();
      imag2 += yc[static_cast<std::size_t>(i)].imag() * yc[static_cast<std::size_t>(i)].imag();
    }
    if (imag_residue) *imag_residue = std::sqrt(imag2);
    return out;
  }
}

template struct BlurOperatorT<double>;
template struct BlurOperatorT<cplx>;

template <class Scalar>
std::vector<Scalar> operator_eigenvalues(const Psf& psf, int n, BoundaryCondition bc) {
  validate_build(psf, n, bc);
  if constexpr (std::is_same_v<Scalar, double>) {
    if (is_complex_basis(bc))
      throw ValidationError("complex boundary condition needs complex eigenvalues");
    std::vector<double> d(static_cast<std::size_t>(n));
    switch (bc) {
      case BoundaryCondition::reflective:
        return cos_grid_symbol(psf, n, n);
      case BoundaryCondition::antireflective: {
        std::vector<double> zs = cos_grid_symbol(psf, n - 1, n - 1);
        d[0] = 1.0;
        for (int i = 1; i <= n - 2; ++i)
          d[static_cast<std::size_t>(i)] = zs[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(n - 1)] = 1.0;
        return d;
      }
      case BoundaryCondition::hoc_cosine: {
        std::vector<double> zs = cos_grid_symbol(psf, n - 2, n - 2);
        d[0] = 1.0;
        for (int i = 1; i <= n - 2; ++i)
          d[static_cast<std::size_t>(i)] = zs[static_cast<std::size_t>(i - 1)];
        d[static_cast<std::size_t>(n - 1)] = 1.0;
        return d;
      }
      default:
        throw ValidationError("unknown boundary condition");
    }
  } else {
    switch (bc) {
      case BoundaryCondition::periodic:
        return exp_grid_symbol(psf, n);
      case BoundaryCondition::hoc_fourier: {
        std::vector<cplx> d(static_cast<std::size_t>(n));
        std::vector<cplx> zs = exp_grid_symbol(psf, n - 2);
        d[0] = 1.0;
        for (int i = 1; i <= n - 2; ++i)
          d[static_cast<std::size_t>(i)] = zs[static_cast<std::size_t>(i - 1)];
        d[static_cast<std::size_t>(n - 1)] = 1.0;
        return d;
      }
      default: {
        // real-basis eigenvalues widened to complex on request
        std::vector<double> dr = operator_eigenvalues<double>(psf, n, bc);
        return std::vector<cplx>(dr.begin(), dr.end());
      }
    }
  }
}

template std::vector<double> operator_eigenvalues<double>(const Psf&, int,
                                                          BoundaryCondition);
template std::vector<cplx> operator_eigenvalues<cplx>(const Psf&, int,
                                                      BoundaryCondition);

BlurOperator build_operator(const Psf& psf, int n, BoundaryCondition bc) {
  validate_build(psf, n, bc);
  if (is_complex_basis(bc)) {
    std::vector<cplx> d = operator_eigenvalues<cplx>(psf, n, bc);
    return ComplexBlurOperator{bc, n, std::move(d), psf, SpectralBasis<cplx>(bc, n)};
  }
  std::vector<double> d = operator_eigenvalues<double>(psf, n, bc);
  return RealBlurOperator{bc, n, std::move(d), psf, SpectralBasis<double>(bc, n)};
}

RealBlurOperator operator_from_eigenvalues(BoundaryCondition bc, int n,
                                           std::vector<double> d, Psf psf) {
  if (static_cast<int>(d.size()) != n)
    throw DimensionError("eigenvalue vector length != n");
  return RealBlurOperator{bc, n, std::move(d), std::move(psf),
                          SpectralBasis<double>(bc, n)};
}

ComplexBlurOperator operator_from_eigenvalues_complex(BoundaryCondition bc, int n,
                                                      std::vector<cplx> d, Psf psf) {
  if (static_cast<int>(d.size()) != n)
    throw DimensionError("eigenvalue vector length != n");
  return ComplexBlurOperator{bc, n, std::move(d), std::move(psf),
                             SpectralBasis<cplx>(bc, n)};
}

std::vector<double> blur_apply(const BlurOperator& op, std::span<const double> f,
                               double* imag_residue) {
  return std::visit([&](const auto& o) { return o.apply(f, imag_residue); }, op);
}

int operator_order(const BlurOperator& op) {
  return std::visit([](const auto& o) { return o.n; }, op);
}

BoundaryCondition operator_bc(const BlurOperator& op) {
  return std::visit([](const auto& o) { return o.bc; }, op);
}

std::vector<double> add_noise(std::span<const double> g, double level,
                              std::uint64_t seed) {
  if (level < 0.0) throw ParameterError("noise level must be nonnegative");
  std::vector<double> out(g.begin(), g.end());
  if (level == 0.0 || g.empty()) return out;

  // Counter-based stream: sample k never depends on sample j != k, so the
  // sequence is reproducible regardless of evaluation order.
  const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  std::vector<double> eta(g.size());
  const std::size_t pairs = (g.size() + 1) / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double u1 = bits_to_u01(splitmix64(seed + (2 * p + 1) * golden));
    const double u2 = bits_to_u01(splitmix64(seed + (2 * p + 2) * golden));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    eta[2 * p] = r * std::cos(angle);
    if (2 * p + 1 < g.size()) eta[2 * p + 1] = r * std::sin(angle);
  }
  double gnorm = 0.0, enorm = 0.0;
  for (double x : g) gnorm += x * x;
  for (double x : eta) enorm += x * x;
  if (enorm == 0.0) return out;
  const double scale = level * std::sqrt(gnorm / enorm);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] += scale * eta[i];
  return out;
}

} // namespace fastdeblur
