#include "fastdeblur/regularize.hpp"

#include <algorithm>
#include <cmath>

#include "fastdeblur/parallel.hpp"

namespace fastdeblur {
namespace {

template <class Scalar>
double eig_abs(Scalar z) {
  return std::abs(z);
}

} // namespace

template <class Scalar>
SmoothingOperator smoothing_eigenvalues(SmootherKind kind,
                                        const BlurOperatorT<Scalar>& op) {
  SmoothingOperator L;
  L.kind = kind;
  const std::size_t n = static_cast<std::size_t>(op.n);
  if (kind == SmootherKind::identity) {
    L.eigenvalues.assign(n, 1.0);
    return L;
  }
  const std::vector<double> nodes = eigenvalue_grid(op.bc, op.n);
  L.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    L.eigenvalues[i] = 2.0 - 2.0 * std::cos(nodes[i]);
  // Null(A) and Null(L) must not intersect: no index may have d_i = s_i = 0
  for (std::size_t i = 0; i < n; ++i)
    if (L.eigenvalues[i] == 0.0 && eig_abs(op.eigenvalues[i]) == 0.0)
      throw ValidationError("incompatible smoother: joint null space with the "
                            "blur operator");
  return L;
}

template SmoothingOperator smoothing_eigenvalues(SmootherKind,
                                                 const BlurOperatorT<double>&);
template SmoothingOperator smoothing_eigenvalues(SmootherKind,
                                                 const BlurOperatorT<cplx>&);

SmoothingOperator smoothing_eigenvalues(SmootherKind kind, const BlurOperator& op) {
  return std::visit([&](const auto& o) { return smoothing_eigenvalues(kind, o); }, op);
}

FilterSpectrum filter_spectrum(const BlurOperator& op, const SmoothingOperator& L,
                               double mu) {
  if (mu <= 0.0) throw ParameterError("mu must be positive");
  FilterSpectrum f;
  f.mu = mu;
  std::visit(
      [&](const auto& o) {
        const auto& d = o.eigenvalues;
        f.phi.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
          double d2;
          if constexpr (std::is_same_v<std::decay_t<decltype(d[i])>, double>)
            d2 = d[i] * d[i];
          else
            d2 = std::norm(d[i]);
          const double s2 = L.eigenvalues[i] * L.eigenvalues[i];
          f.phi[i] = d2 / (d2 + mu * s2);
        }
      },
      op);
  return f;
}

template <class Scalar>
std::vector<double> tikhonov_solve(const BlurOperatorT<Scalar>& op,
                                   const SmoothingOperator& L,
                                   std::span<const double> g, double mu,
                                   double* imag_residue) {
  if (mu <= 0.0) throw ParameterError("mu must be positive");
  if (static_cast<int>(g.size()) != op.n)
    throw DimensionError("tikhonov_solve: signal length != operator order");
  if (L.eigenvalues.size() != g.size())
    throw DimensionError("tikhonov_solve: smoother length != operator order");

  if constexpr (std::is_same_v<Scalar, double>) {
    std::vector<double> ghat = op.basis.analyze(g);
    apply_tikhonov_filter<double>(op.eigenvalues, L.eigenvalues, mu, ghat);
    if (imag_residue) *imag_residue = 0.0;
    return op.basis.synthesize(ghat);
  } else {
    std::vector<cplx> gc(g.begin(), g.end());
    std::vector<cplx> ghat = op.basis.analyze(gc);
    apply_tikhonov_filter<cplx>(op.eigenvalues, L.eigenvalues, mu, ghat);
    std::vector<cplx> yc = op.basis.synthesize(ghat);
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

template std::vector<double> tikhonov_solve(const BlurOperatorT<double>&,
                                            const SmoothingOperator&,
                                            std::span<const double>, double, double*);
template std::vector<double> tikhonov_solve(const BlurOperatorT<cplx>&,
                                            const SmoothingOperator&,
                                            std::span<const double>, double, double*);

std::vector<double> tikhonov_solve(const BlurOperator& op, const SmoothingOperator& L,
                                   std::span<const double> g, double mu,
                                   double* imag_residue) {
  return std::visit(
      [&](const auto& o) { return tikhonov_solve(o, L, g, mu, imag_residue); }, op);
}

template <class Scalar>
double gcv_value(const BlurOperatorT<Scalar>& op, const SmoothingOperator& L,
                 std::span<const double> g, double mu) {
  if (mu <= 0.0) throw ParameterError("mu must be positive");
  if (static_cast<int>(g.size()) != op.n)
    throw DimensionError("gcv_value: signal length != operator order");
  if constexpr (std::is_same_v<Scalar, double>) {
    const std::vector<double> ghat = op.basis.analyze(g);
    return gcv_from_coeffs<double>(op.eigenvalues, L.eigenvalues, ghat, mu);
  } else {
    std::vector<cplx> gc(g.begin(), g.end());
    const std::vector<cplx> ghat = op.basis.analyze(gc);
    return gcv_from_coeffs<cplx>(op.eigenvalues, L.eigenvalues, ghat, mu);
  }
}

template double gcv_value(const BlurOperatorT<double>&, const SmoothingOperator&,
                          std::span<const double>, double);
template double gcv_value(const BlurOperatorT<cplx>&, const SmoothingOperator&,
                          std::span<const double>, double);

double gcv_value(const BlurOperator& op, const SmoothingOperator& L,
                 std::span<const double> g, double mu) {
  return std::visit([&](const auto& o) { return gcv_value(o, L, g, mu); }, op);
}

GcvResult gcv_minimize(const std::function<double(double)>& G,
                       const GcvSearch& search) {
  if (!(search.mu_min > 0.0) || !(search.mu_max > search.mu_min) || search.count < 2)
    throw ParameterError("gcv search needs 0 < mu_min < mu_max and count >= 2");

  const int count = search.count;
  const double llo = std::log(search.mu_min);
  const double lhi = std::log(search.mu_max);
  std::vector<double> mus(static_cast<std::size_t>(count));
  std::vector<double> vals(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    mus[static_cast<std::size_t>(k)] =
        std::exp(llo + (lhi - llo) * k / (count - 1));

  // grid values are independent; evaluation order must not matter
  parallel_for(static_cast<std::size_t>(count),
               [&](std::size_t k) { vals[k] = G(mus[k]); });

  GcvResult result;
  result.curve.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    result.curve.emplace_back(mus[static_cast<std::size_t>(k)],
                              vals[static_cast<std::size_t>(k)]);

  const auto best_it = std::min_element(vals.begin(), vals.end());
  const double best = *best_it;
  const std::size_t best_k = static_cast<std::size_t>(best_it - vals.begin());

  // tie detection at 1e-12 relative; a flat functional returns the geometric
  // midpoint of the tied mu values
  std::vector<std::size_t> tied;
  for (std::size_t k = 0; k < mus.size(); ++k) {
    const bool tie = best == 0.0 ? vals[k] == 0.0
                                 : vals[k] <= best + 1e-12 * std::abs(best);
    if (tie) tied.push_back(k);
  }
  if (tied.size() > 1) {
    double mean_log = 0.0;
    for (std::size_t k : tied) mean_log += std::log(mus[k]);
    result.mu = std::exp(mean_log / static_cast<double>(tied.size()));
    return result;
  }

  // golden-section refinement in log(mu) around the unique best grid point
  double lo = mus[best_k > 0 ? best_k - 1 : 0];
  double hi = mus[best_k + 1 < mus.size() ? best_k + 1 : mus.size() - 1];
  double a = std::log(lo), b = std::log(hi);
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = G(std::exp(x1));
  double f2 = G(std::exp(x2));
  while (std::exp(b - a) - 1.0 > 1e-3) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = G(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = G(std::exp(x2));
    }
  }
  const double refined = std::exp(0.5 * (a + b));
  result.mu = G(refined) <= best ? refined : mus[best_k];
  return result;
}

template <class Scalar>
GcvResult gcv_select(const BlurOperatorT<Scalar>& op, const SmoothingOperator& L,
                     std::span<const double> g, const GcvSearch& search) {
  if (static_cast<int>(g.size()) != op.n)
    throw DimensionError("gcv_select: signal length != operator order");
  if constexpr (std::is_same_v<Scalar, double>) {
    const std::vector<double> ghat = op.basis.analyze(g);
    return gcv_minimize(
        [&](double mu) {
          return gcv_from_coeffs<double>(op.eigenvalues, L.eigenvalues, ghat, mu);
        },
        search);
  } else {
    std::vector<cplx> gc(g.begin(), g.end());
    const std::vector<cplx> ghat = op.basis.analyze(gc);
    return gcv_minimize(
        [&](double mu) {
          return gcv_from_coeffs<cplx>(op.eigenvalues, L.eigenvalues, ghat, mu);
        },
        search);
  }
}

template GcvResult gcv_select(const BlurOperatorT<double>&, const SmoothingOperator&,
                              std::span<const double>, const GcvSearch&);
template GcvResult gcv_select(const BlurOperatorT<cplx>&, const SmoothingOperator&,
                              std::span<const double>, const GcvSearch&);

GcvResult gcv_select(const BlurOperator& op, const SmoothingOperator& L,
                     std::span<const double> g, const GcvSearch& search) {
  return std::visit([&](const auto& o) { return gcv_select(o, L, g, search); }, op);
}

double rre(std::span<const double> truth, std::span<const double> restored) {
  if (truth.size() != restored.size())
    throw DimensionError("rre: length mismatch");
  double tn = 0.0, en = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    tn += truth[i] * truth[i];
    const double e = truth[i] - restored[i];
    en += e * e;
  }
  if (tn == 0.0) throw ParameterError("rre: zero ground truth");
  return std::sqrt(en / tn);
}

} // namespace fastdeblur
