#ifndef FASTDEBLUR_TRIG_DETAIL_HPP
#define FASTDEBLUR_TRIG_DETAIL_HPP

// Internal access to the shared FFTW plan cache. Computes the raw
// (unnormalized) FFTW convention; callers apply their own scaling.

#include <complex>
#include <span>

namespace fastdeblur::detail {

using cplx = std::complex<double>;

// Unnormalized complex DFT: out_k = sum_j in_j exp(-+ i 2pi jk/n).
void fft_c2c(std::span<const cplx> in, std::span<cplx> out, bool forward);

} // namespace fastdeblur::detail

#endif // FASTDEBLUR_TRIG_DETAIL_HPP
