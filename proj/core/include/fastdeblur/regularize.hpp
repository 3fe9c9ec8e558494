#ifndef FASTDEBLUR_REGULARIZE_HPP
#define FASTDEBLUR_REGULARIZE_HPP

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fastdeblur/errors.hpp"
#include "fastdeblur/operators.hpp"

namespace fastdeblur {

enum class SmootherKind { identity, laplacian };

/// Smoothing operator L sharing the blur operator's basis, represented by its
/// eigenvalue vector s on the same node grid. laplacian uses s(x) = 2-2cos(x),
/// which vanishes exactly at the pinned boundary nodes.
struct SmoothingOperator {
  SmootherKind kind{};
  std::vector<double> eigenvalues;
};

template <class Scalar>
SmoothingOperator smoothing_eigenvalues(SmootherKind kind,
                                        const BlurOperatorT<Scalar>& op);
SmoothingOperator smoothing_eigenvalues(SmootherKind kind, const BlurOperator& op);

/// Spectral filter factors Phi_i = |d_i|^2 / (|d_i|^2 + mu |s_i|^2).
struct FilterSpectrum {
  std::vector<double> phi;
  double mu = 0.0;
};

FilterSpectrum filter_spectrum(const BlurOperator& op, const SmoothingOperator& L,
                               double mu);

/// In-place spectral filter applied to analyzed coefficients:
/// ghat_i *= conj(d_i) / (|d_i|^2 + mu s_i^2). This is Phi D^{-1} in one
/// finite expression (no division by d_i).
template <class Scalar>
void apply_tikhonov_filter(std::span<const Scalar> d, std::span<const double> s,
                           double mu, std::span<Scalar> ghat) {
  using std::norm;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double d2;
    Scalar dconj;
    if constexpr (std::is_same_v<Scalar, double>) {
      d2 = d[i] * d[i];
      dconj = d[i];
    } else {
      d2 = norm(d[i]);
      dconj = std::conj(d[i]);
    }
    ghat[i] *= dconj / (d2 + mu * s[i] * s[i]);
  }
}

/// G(mu) = sum (sigma_i |ghat_i|)^2 / (sum sigma_i)^2 with
/// sigma_i = s_i^2 / (|d_i|^2 + mu s_i^2). Throws DegenerateError when the
/// denominator vanishes (all smoother eigenvalues zero).
template <class Scalar>
double gcv_from_coeffs(std::span<const Scalar> d, std::span<const double> s,
                       std::span<const Scalar> ghat, double mu) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double d2;
    if constexpr (std::is_same_v<Scalar, double>) d2 = d[i] * d[i];
    else d2 = std::norm(d[i]);
    const double sigma = s[i] * s[i] / (d2 + mu * s[i] * s[i]);
    double g2;
    if constexpr (std::is_same_v<Scalar, double>) g2 = ghat[i] * ghat[i];
    else g2 = std::norm(ghat[i]);
    num += sigma * sigma * g2;
    den += sigma;
  }
  if (den == 0.0)
    throw DegenerateError("degenerate gcv: all smoother eigenvalues are zero");
  return num / (den * den);
}

/// f_reg = T_X diag(conj(d)/(|d|^2 + mu |s|^2)) T_X^{-1} g.
template <class Scalar>
std::vector<double> tikhonov_solve(const BlurOperatorT<Scalar>& op,
                                   const SmoothingOperator& L,
                                   std::span<const double> g, double mu,
                                   double* imag_residue = nullptr);
std::vector<double> tikhonov_solve(const BlurOperator& op, const SmoothingOperator& L,
                                   std::span<const double> g, double mu,
                                   double* imag_residue = nullptr);

template <class Scalar>
double gcv_value(const BlurOperatorT<Scalar>& op, const SmoothingOperator& L,
                 std::span<const double> g, double mu);
double gcv_value(const BlurOperator& op, const SmoothingOperator& L,
                 std::span<const double> g, double mu);

struct GcvSearch {
  double mu_min = 1e-12;
  double mu_max = 10.0;
  int count = 200;
};

struct GcvResult {
  double mu = 0.0;
  std::vector<std::pair<double, double>> curve; // sampled (mu, G) grid
};

/// Evaluates G on a log-spaced grid and refines the unique best grid point
/// with golden-section search to relative mu-tolerance 1e-3. Tied minima
/// (within 1e-12 relative) return the geometric midpoint of the tied points.
GcvResult gcv_minimize(const std::function<double(double)>& G, const GcvSearch& search);

template <class Scalar>
GcvResult gcv_select(const BlurOperatorT<Scalar>& op, const SmoothingOperator& L,
                     std::span<const double> g, const GcvSearch& search = {});
GcvResult gcv_select(const BlurOperator& op, const SmoothingOperator& L,
                     std::span<const double> g, const GcvSearch& search = {});

/// ||truth - restored||_2 / ||truth||_2.
double rre(std::span<const double> truth, std::span<const double> restored);

enum class MuSource { fixed, gcv };

struct RestorationReport {
  std::vector<double> restored;
  double mu_used = 0.0;
  MuSource mu_source = MuSource::fixed;
  std::optional<double> rre;              // present only when truth was supplied
  std::vector<std::pair<double, double>> gcv_curve;
  double imag_residue = 0.0;
};

} // namespace fastdeblur

#endif // FASTDEBLUR_REGULARIZE_HPP
