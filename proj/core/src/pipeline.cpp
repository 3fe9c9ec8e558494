#include "fastdeblur/pipeline.hpp"

#include <cmath>
#include <limits>

#include "fastdeblur/errors.hpp"

namespace fastdeblur {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::vector<double> convolve_valid(std::span<const double> extended, const Psf& psf) {
  const int m = psf.m;
  const int n = static_cast<int>(extended.size()) - 2 * m;
  if (n < 1)
    throw ValidationError("extended signal shorter than the psf support");
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    // g_i = sum_j h_j f_{i+j}, the mask fully inside the extended samples
    for (int j = -m; j <= m; ++j)
      acc += psf.at(j) * extended[static_cast<std::size_t>(m + i + j)];
    g[static_cast<std::size_t>(i)] = acc;
  }
  return g;
}

std::vector<double> convolve_valid_2d(std::span<const double> extended, int rows,
                                      int cols, const Psf2D& psf) {
  if (static_cast<int>(extended.size()) != rows * cols)
    throw DimensionError("convolve_valid_2d: array size != rows*cols");
  const int m1 = psf.m1, m2 = psf.m2;
  const int n1 = rows - 2 * m1, n2 = cols - 2 * m2;
  if (n1 < 1 || n2 < 1)
    throw ValidationError("extended image smaller than the psf support");
  std::vector<double> g(static_cast<std::size_t>(n1) * n2, 0.0);
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k < n2; ++k) {
      double acc = 0.0;
      for (int j = -m1; j <= m1; ++j)
        for (int l = -m2; l <= m2; ++l)
          acc += psf.at(j, l) *
                 extended[static_cast<std::size_t>(m1 + i + j) * cols +
                          static_cast<std::size_t>(m2 + k + l)];
      g[static_cast<std::size_t>(i) * n2 + static_cast<std::size_t>(k)] = acc;
    }
  return g;
}

namespace {

template <class SolveFn, class GcvSelectFn>
BcSweep sweep_impl(BoundaryCondition bc, std::span<const double> truth,
                   const GcvSearch& search, SolveFn&& solve,
                   GcvSelectFn&& select) {
  const bool has_truth = !truth.empty();
  BcSweep sweep;
  sweep.bc = bc;

  GcvResult gcv = select(search);
  sweep.mu_gcv = gcv.mu;

  sweep.curve.reserve(gcv.curve.size());
  double best_rre = std::numeric_limits<double>::infinity();
  double best_mu = gcv.curve.empty() ? kNaN : gcv.curve.front().first;
  for (const auto& [mu, gv] : gcv.curve) {
    SweepPoint p;
    p.mu = mu;
    p.gcv = gv;
    p.rre = kNaN;
    if (has_truth) {
      const std::vector<double> f = solve(mu);
      p.rre = rre(truth, f);
      if (p.rre < best_rre) {
        best_rre = p.rre;
        best_mu = mu;
      }
    }
    sweep.curve.push_back(p);
  }
  sweep.min_rre = has_truth ? best_rre : kNaN;
  sweep.mu_opt = has_truth ? best_mu : kNaN;
  if (has_truth) {
    const std::vector<double> f = solve(sweep.mu_gcv);
    sweep.rre_gcv = rre(truth, f);
  } else {
    sweep.rre_gcv = kNaN;
  }
  return sweep;
}

} // namespace

BcSweep sweep_mu(const BlurOperator& op, const SmoothingOperator& L,
                 std::span<const double> g, std::span<const double> truth,
                 const GcvSearch& search) {
  return sweep_impl(
      operator_bc(op), truth, search,
      [&](double mu) { return tikhonov_solve(op, L, g, mu); },
      [&](const GcvSearch& s) { return gcv_select(op, L, g, s); });
}

BcSweep sweep_mu_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                    std::span<const double> g, std::span<const double> truth,
                    const GcvSearch& search) {
  const BoundaryCondition bc =
      std::visit([](const auto& o) { return o.bc; }, op);
  return sweep_impl(
      bc, truth, search,
      [&](double mu) { return tikhonov_solve_2d(op, L, g, mu); },
      [&](const GcvSearch& s) { return gcv_select_2d(op, L, g, s); });
}

namespace {

template <class SolveFn, class GcvSelectFn>
RestorationReport deblur_impl(const MuChoice& mu, std::span<const double> truth,
                              bool want_curve, const GcvSearch& search,
                              SolveFn&& solve, GcvSelectFn&& select) {
  RestorationReport report;
  if (mu.use_gcv) {
    GcvResult gcv = select(search);
    report.mu_used = gcv.mu;
    report.mu_source = MuSource::gcv;
    if (want_curve) report.gcv_curve = std::move(gcv.curve);
  } else {
    if (!(mu.fixed_mu > 0.0)) throw ParameterError("mu must be positive");
    report.mu_used = mu.fixed_mu;
    report.mu_source = MuSource::fixed;
    if (want_curve) {
      GcvResult gcv = select(search);
      report.gcv_curve = std::move(gcv.curve);
    }
  }
  double residue = 0.0;
  report.restored = solve(report.mu_used, &residue);
  report.imag_residue = residue;
  if (!truth.empty()) report.rre = rre(truth, report.restored);
  return report;
}

} // namespace

RestorationReport deblur(const BlurOperator& op, const SmoothingOperator& L,
                         std::span<const double> g, const MuChoice& mu,
                         std::span<const double> truth, bool want_curve,
                         const GcvSearch& search) {
  return deblur_impl(
      mu, truth, want_curve, search,
      [&](double m, double* res) { return tikhonov_solve(op, L, g, m, res); },
      [&](const GcvSearch& s) { return gcv_select(op, L, g, s); });
}

RestorationReport deblur_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                            std::span<const double> g, const MuChoice& mu,
                            std::span<const double> truth, bool want_curve,
                            const GcvSearch& search) {
  return deblur_impl(
      mu, truth, want_curve, search,
      [&](double m, double* res) { return tikhonov_solve_2d(op, L, g, m, res); },
      [&](const GcvSearch& s) { return gcv_select_2d(op, L, g, s); });
}

} // namespace fastdeblur
