#ifndef FASTDEBLUR_PSF_HPP
#define FASTDEBLUR_PSF_HPP

#include <complex>
#include <span>
#include <vector>

namespace fastdeblur {

using cplx = std::complex<double>;

/// Normalized 1D convolution mask h_{-m..m}. weights[m + j] holds h_j.
/// The entries must be finite and sum to 1 within 1e-8 (conservation law);
/// make_psf enforces this or, with normalize=true, rescales by the sum.
struct Psf {
  std::vector<double> weights;
  int m = 0;
  bool symmetric = false;

  int support() const { return 2 * m + 1; }
  double at(int j) const { return weights[static_cast<std::size_t>(m + j)]; }
};

Psf make_psf(std::vector<double> weights, bool normalize = false);

/// z(t) = sum_{j=-m}^m h_j e^{ijt}. Exactly real for symmetric masks.
cplx symbol_eval(const Psf& psf, double t);

/// The mask rotated by 180 degrees (h_j <-> h_{-j}); an involution, and the
/// identity on symmetric masks.
Psf reblur_psf(const Psf& psf);

/// Truncated, renormalized Gaussian: h_j proportional to exp(-j^2/(2 sigma^2)).
Psf gaussian_psf(int m, double sigma);

/// One-sided motion mask: h_j proportional to m+1-j for j = 0..m, zero for j < 0.
Psf motion_psf(int m);

/// m = 0, h_0 = 1.
Psf identity_psf();

} // namespace fastdeblur

#endif // FASTDEBLUR_PSF_HPP
