#ifndef FASTDEBLUR_PIPELINE_HPP
#define FASTDEBLUR_PIPELINE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fastdeblur/multidim.hpp"
#include "fastdeblur/operators.hpp"
#include "fastdeblur/regularize.hpp"

namespace fastdeblur {

/// Field-of-view convolution: the input is the extended scene, the output the
/// central samples where the mask fits entirely (length N - 2m). This is the
/// model-mismatch data source for boundary-condition experiments.
std::vector<double> convolve_valid(std::span<const double> extended, const Psf& psf);
/// 2D variant; extended is row-major rows x cols, output (rows-2m1) x (cols-2m2).
std::vector<double> convolve_valid_2d(std::span<const double> extended, int rows,
                                      int cols, const Psf2D& psf);

/// One (mu, G(mu), RRE(mu)) sample of a sweep; rre is NaN without truth.
struct SweepPoint {
  double mu = 0.0;
  double gcv = 0.0;
  double rre = 0.0;
};

/// Per-boundary-condition summary of a mu sweep plus GCV selection.
struct BcSweep {
  BoundaryCondition bc{};
  double min_rre = 0.0; // min over the grid (NaN without truth)
  double mu_opt = 0.0;  // grid argmin of RRE
  double mu_gcv = 0.0;  // refined GCV minimizer
  double rre_gcv = 0.0; // RRE at mu_gcv (NaN without truth)
  std::vector<SweepPoint> curve;
};

BcSweep sweep_mu(const BlurOperator& op, const SmoothingOperator& L,
                 std::span<const double> g, std::span<const double> truth,
                 const GcvSearch& search = {});
BcSweep sweep_mu_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                    std::span<const double> g, std::span<const double> truth,
                    const GcvSearch& search = {});

/// Restoration with a fixed mu or GCV-selected mu, with optional truth for
/// the RRE field and optional curve sampling.
struct MuChoice {
  bool use_gcv = false;
  double fixed_mu = 0.0;
};

RestorationReport deblur(const BlurOperator& op, const SmoothingOperator& L,
                         std::span<const double> g, const MuChoice& mu,
                         std::span<const double> truth = {},
                         bool want_curve = false, const GcvSearch& search = {});
RestorationReport deblur_2d(const BlurOperator2D& op, const SmoothingOperator2D& L,
                            std::span<const double> g, const MuChoice& mu,
                            std::span<const double> truth = {},
                            bool want_curve = false, const GcvSearch& search = {});

} // namespace fastdeblur

#endif // FASTDEBLUR_PIPELINE_HPP
