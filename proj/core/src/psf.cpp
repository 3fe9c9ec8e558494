#include "fastdeblur/psf.hpp"

#include <cmath>
#include <cstdlib>

#include "fastdeblur/errors.hpp"

namespace fastdeblur {

Psf make_psf(std::vector<double> weights, bool normalize) {
  if (weights.empty() || weights.size() % 2 == 0)
    throw ValidationError("psf must have odd length 2m+1");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("psf weights must be finite");
    sum += w;
  }
  if (normalize) {
    if (sum == 0.0) throw ValidationError("psf weights sum to zero; cannot normalize");
    for (double& w : weights) w /= sum;
  } else if (std::abs(sum - 1.0) > 1e-8) {
    throw ValidationError("psf weights must sum to 1 (pass normalize to rescale)");
  }

  Psf psf;
  psf.m = static_cast<int>(weights.size() / 2);
  psf.symmetric = true;
  for (int j = 1; j <= psf.m; ++j) {
    if (weights[static_cast<std::size_t>(psf.m + j)] !=
        weights[static_cast<std::size_t>(psf.m - j)]) {
      psf.symmetric = false;
      break;
    }
  }
  psf.weights = std::move(weights);
  return psf;
}

cplx symbol_eval(const Psf& psf, double t) {
  if (psf.symmetric) {
    // h_0 + 2 sum h_j cos(jt), exactly real
    double z = psf.at(0);
    for (int j = 1; j <= psf.m; ++j) z += 2.0 * psf.at(j) * std::cos(j * t);
    return {z, 0.0};
  }
  cplx z = psf.at(0);
  for (int j = 1; j <= psf.m; ++j) {
    const double c = std::cos(j * t), s = std::sin(j * t);
    z += psf.at(j) * cplx{c, s} + psf.at(-j) * cplx{c, -s};
  }
  return z;
}

Psf reblur_psf(const Psf& psf) {
  Psf out = psf;
  for (int j = 0; j < psf.support(); ++j)
    out.weights[static_cast<std::size_t>(j)] =
        psf.weights[static_cast<std::size_t>(psf.support() - 1 - j)];
  return out;
}

Psf gaussian_psf(int m, double sigma) {
  if (m < 0 || sigma <= 0.0) throw ValidationError("gaussian psf needs m >= 0, sigma > 0");
  std::vector<double> w(static_cast<std::size_t>(2 * m + 1));
  for (int j = -m; j <= m; ++j)
    w[static_cast<std::size_t>(m + j)] =
        std::exp(-static_cast<double>(j) * j / (2.0 * sigma * sigma));
  return make_psf(std::move(w), /*normalize=*/true);
}

Psf motion_psf(int m) {
  if (m < 1) throw ValidationError("motion psf needs m >= 1");
  std::vector<double> w(static_cast<std::size_t>(2 * m + 1), 0.0);
  for (int j = 0; j <= m; ++j) w[static_cast<std::size_t>(m + j)] = m + 1 - j;
  return make_psf(std::move(w), /*normalize=*/true);
}

Psf identity_psf() { return make_psf({1.0}); }

} // namespace fastdeblur
