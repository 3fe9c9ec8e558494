// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line with its measured numbers. Run all criteria with no
// arguments or a single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fastdeblur/boundary.hpp"
#include "fastdeblur/multidim.hpp"
#include "fastdeblur/operators.hpp"
#include "fastdeblur/oracle.hpp"
#include "fastdeblur/pipeline.hpp"
#include "fastdeblur/regularize.hpp"

using namespace fastdeblur;

namespace {

struct Result {
  bool pass = false;
  std::string metrics;
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class S>
double rel_err(const std::vector<S>& got, const std::vector<S>& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += std::norm(cplx(got[i]) - cplx(want[i]));
    den += std::norm(cplx(want[i]));
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

std::vector<double> random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = dist(rng);
  return v;
}

Psf random_psf(int m, std::uint64_t seed, bool symmetric) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  std::vector<double> w(static_cast<std::size_t>(2 * m + 1));
  if (symmetric) {
    for (int j = 0; j <= m; ++j) {
      const double x = dist(rng);
      w[static_cast<std::size_t>(m + j)] = x;
      w[static_cast<std::size_t>(m - j)] = x;
    }
  } else {
    for (auto& x : w) x = dist(rng);
  }
  return make_psf(std::move(w), /*normalize=*/true);
}

const BoundaryCondition kAllBcs[] = {
    BoundaryCondition::periodic, BoundaryCondition::reflective,
    BoundaryCondition::antireflective, BoundaryCondition::hoc_cosine,
    BoundaryCondition::hoc_fourier};

// ---------------------------------------------------------------------------
// Criterion 1: polynomial preservation at n = 128 within the stated budgets.
Result criterion1() {
  const double t0 = now_seconds();
  const int n = 128;
  double worst_c = 0.0, worst_f = 0.0, worst_a = 0.0;

  {
    const Psf psf = gaussian_psf(8, 2.5);
    const auto op = build_operator(psf, n, BoundaryCondition::hoc_cosine);
    const auto grid = extended_grid(BoundaryBasis::hoc_cosine, n).points;
    for (int deg = 0; deg <= 2; ++deg) {
      std::vector<double> f(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = std::pow(grid[i] + 0.3, deg);
      worst_c = std::max(worst_c, rel_err(blur_apply(op, f), f));
    }
  }
  {
    const Psf psf = motion_psf(5);
    const auto op = build_operator(psf, n, BoundaryCondition::hoc_fourier);
    const auto grid = extended_grid(BoundaryBasis::hoc_fourier, n).points;
    for (int deg = 0; deg <= 2; ++deg) {
      std::vector<double> f(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = std::pow(grid[i] + 0.3, deg);
      worst_f = std::max(worst_f, rel_err(blur_apply(op, f), f));
    }
  }
  {
    const Psf psf = gaussian_psf(8, 2.5);
    const auto op = build_operator(psf, n, BoundaryCondition::antireflective);
    const auto grid = extended_grid(BoundaryBasis::antireflective, n).points;
    for (int deg = 0; deg <= 1; ++deg) {
      std::vector<double> f(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = std::pow(grid[i] + 0.3, deg);
      worst_a = std::max(worst_a, rel_err(blur_apply(op, f), f));
    }
  }
  const double dt = now_seconds() - t0;
  Result r;
  r.pass = worst_c <= 1e-8 && worst_f <= 1e-8 && worst_a <= 1e-10 && dt < 1.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "A_C deg<=2 err %.2e (tol 1e-8), A_F deg<=2 err %.2e (tol 1e-8), "
                "antireflective deg<=1 err %.2e (tol 1e-10), %.2fs (< 1s)",
                worst_c, worst_f, worst_a, dt);
  r.metrics = buf;
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 2: dense-oracle equivalence of matvec, inverse transform, and
// Tikhonov solve, 1D and 2D.
namespace c2 {

template <class S>
std::vector<double> dense_tikhonov(const oracle::DenseMatrix<S>& t,
                                   const std::vector<S>& d,
                                   const std::vector<double>& s,
                                   const std::vector<double>& g, double mu) {
  const int n = t.rows;
  const auto tinv = oracle::lu_inverse(t);
  std::vector<S> gc(g.begin(), g.end());
  std::vector<S> ghat = tinv.matvec(std::span<const S>(gc.data(), gc.size()));
  for (int i = 0; i < n; ++i) {
    const double d2 = std::norm(cplx(d[static_cast<std::size_t>(i)]));
    S dconj;
    if constexpr (std::is_same_v<S, double>) dconj = d[static_cast<std::size_t>(i)];
    else dconj = std::conj(d[static_cast<std::size_t>(i)]);
    ghat[static_cast<std::size_t>(i)] *=
        dconj / (d2 + mu * s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)]);
  }
  const auto fc = t.matvec(std::span<const S>(ghat.data(), ghat.size()));
  std::vector<double> f(fc.size());
  for (std::size_t i = 0; i < fc.size(); ++i) f[i] = cplx(fc[i]).real();
  return f;
}

template <class S>
oracle::DenseMatrix<S> dense_basis(BoundaryCondition bc, int n) {
  oracle::DenseMatrix<S> t(n, n);
  if constexpr (std::is_same_v<S, double>) {
    if (bc == BoundaryCondition::reflective) {
      const auto c = oracle::dense_cosine(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = c.at(j, i);
    } else {
      t = oracle::dense_transform_real(bc == BoundaryCondition::antireflective
                                           ? BoundaryBasis::antireflective
                                           : BoundaryBasis::hoc_cosine,
                                       n);
    }
  } else {
    if (bc == BoundaryCondition::periodic) {
      const auto f = oracle::dense_fourier(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = std::conj(f.at(j, i));
    } else {
      t = oracle::dense_transform_fourier(n);
    }
  }
  return t;
}

template <class S>
double check_bc_1d(BoundaryCondition bc, int n, std::uint64_t seed) {
  const Psf psf = random_psf(3, seed, needs_symmetric_psf(bc));
  const auto opv = build_operator(psf, n, bc);
  const auto& op = std::get<BlurOperatorT<S>>(opv);
  const auto g = random_vector(n, seed + 1);
  double worst = 0.0;

  // fast matvec vs dense similarity product
  {
    const auto dense = oracle::dense_blur_matrix(psf, n, bc);
    std::vector<double> want(static_cast<std::size_t>(n));
    if (std::holds_alternative<oracle::RealMatrix>(dense)) {
      want = std::get<oracle::RealMatrix>(dense).matvec(
          std::span<const double>(g.data(), g.size()));
    } else {
      std::vector<cplx> gc(g.begin(), g.end());
      const auto wc = std::get<oracle::ComplexMatrix>(dense).matvec(
          std::span<const cplx>(gc.data(), gc.size()));
      for (int i = 0; i < n; ++i)
        want[static_cast<std::size_t>(i)] = wc[static_cast<std::size_t>(i)].real();
    }
    worst = std::max(worst, rel_err(blur_apply(opv, g), want));
  }
  // fast inverse transform vs dense LU inverse
  {
    const auto t = dense_basis<S>(bc, n);
    const auto tinv = oracle::lu_inverse(t);
    std::vector<S> y(g.begin(), g.end());
    const auto want = tinv.matvec(std::span<const S>(y.data(), y.size()));
    const auto got = op.basis.analyze(y);
    worst = std::max(worst, rel_err(got, want));
  }
  // Tikhonov solve vs dense filter product
  {
    const auto L = smoothing_eigenvalues(SmootherKind::laplacian, opv);
    const double mu = 3e-4;
    const auto got = tikhonov_solve(opv, L, g, mu);
    const auto t = dense_basis<S>(bc, n);
    const auto want = dense_tikhonov<S>(t, op.eigenvalues, L.eigenvalues, g, mu);
    worst = std::max(worst, rel_err(got, want));
  }
  return worst;
}

template <class S>
double check_bc_2d(BoundaryCondition bc, int n1, int n2, std::uint64_t seed) {
  const Psf a = random_psf(2, seed, true);
  const Psf b = random_psf(2, seed + 7, true);
  Psf2D psf2 = separable_psf2d(a, b);
  if (!needs_symmetric_psf(bc)) {
    // shake the separable structure a little for the general-basis conditions
    auto w = psf2.weights;
    w[0] += 0.01;
    psf2 = make_psf2d(std::move(w), psf2.rows(), psf2.cols(), true);
  }
  const auto opv = build_operator_2d(psf2, n1, n2, bc);
  const auto& op = std::get<BlurOperator2DT<S>>(opv);
  const auto g = random_vector(n1 * n2, seed + 2);
  double worst = 0.0;

  const auto t1 = dense_basis<S>(bc, n1);
  const auto t2 = dense_basis<S>(bc, n2);
  const auto k = oracle::kron(t1, t2);
  const auto kinv = oracle::lu_inverse(k);

  // fast 2D matvec vs dense Kronecker similarity
  {
    std::vector<S> gc(g.begin(), g.end());
    auto ghat = kinv.matvec(std::span<const S>(gc.data(), gc.size()));
    for (std::size_t i = 0; i < ghat.size(); ++i) ghat[i] *= op.eigenvalues[i];
    const auto wc = k.matvec(std::span<const S>(ghat.data(), ghat.size()));
    std::vector<double> want(wc.size());
    for (std::size_t i = 0; i < wc.size(); ++i) want[i] = cplx(wc[i]).real();
    worst = std::max(worst, rel_err(blur_apply_2d(opv, g), want));
  }
  // fast tensor inverse transform vs dense Kronecker inverse
  {
    std::vector<S> y(g.begin(), g.end());
    const auto want = kinv.matvec(std::span<const S>(y.data(), y.size()));
    const auto got = tensor_apply<S>(op.rows_basis, op.cols_basis, y,
                                     Direction::inverse);
    worst = std::max(worst, rel_err(got, want));
  }
  // 2D Tikhonov vs the dense filter product
  {
    const auto L = smoothing_eigenvalues_2d(SmootherKind::identity, opv);
    const double mu = 2e-3;
    const auto got = tikhonov_solve_2d(opv, L, g, mu);
    std::vector<S> gc(g.begin(), g.end());
    auto ghat = kinv.matvec(std::span<const S>(gc.data(), gc.size()));
    for (std::size_t i = 0; i < ghat.size(); ++i) {
      const double d2 = std::norm(cplx(op.eigenvalues[i]));
      S dconj;
      if constexpr (std::is_same_v<S, double>) dconj = op.eigenvalues[i];
      else dconj = std::conj(op.eigenvalues[i]);
      ghat[i] *= dconj / (d2 + mu * L.eigenvalues[i] * L.eigenvalues[i]);
    }
    const auto wc = k.matvec(std::span<const S>(ghat.data(), ghat.size()));
    std::vector<double> want(wc.size());
    for (std::size_t i = 0; i < wc.size(); ++i) want[i] = cplx(wc[i]).real();
    worst = std::max(worst, rel_err(got, want));
  }
  return worst;
}

} // namespace c2

Result criterion2() {
  const double t0 = now_seconds();
  double worst = 0.0;
  for (int n : {16, 64, 256}) {
    for (auto bc : kAllBcs) {
      const std::uint64_t seed = 100 + static_cast<std::uint64_t>(n);
      if (is_complex_basis(bc))
        worst = std::max(worst, c2::check_bc_1d<cplx>(bc, n, seed));
      else
        worst = std::max(worst, c2::check_bc_1d<double>(bc, n, seed));
    }
  }
  for (auto [n1, n2] : {std::pair{12, 12}, std::pair{12, 16}, std::pair{16, 16}}) {
    for (auto bc : kAllBcs) {
      const std::uint64_t seed = 200 + static_cast<std::uint64_t>(n1 + n2);
      if (is_complex_basis(bc))
        worst = std::max(worst, c2::check_bc_2d<cplx>(bc, n1, n2, seed));
      else
        worst = std::max(worst, c2::check_bc_2d<double>(bc, n1, n2, seed));
    }
  }
  const double dt = now_seconds() - t0;
  Result r;
  r.pass = worst <= 1e-9 && dt < 30.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst rel err %.2e (tol 1e-9), %.2fs (< 30s)",
                worst, dt);
  r.metrics = buf;
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 3: reblurred normal-equation residual over 50 random combinations.
Result criterion3() {
  const double t0 = now_seconds();
  const int n = 64;
  std::mt19937_64 rng(333);
  std::uniform_real_distribution<double> mu_exp(-8.0, 0.0);
  std::uniform_int_distribution<int> bc_pick(0, 4);
  std::uniform_int_distribution<int> m_pick(1, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto bc = kAllBcs[bc_pick(rng)];
    const Psf psf = random_psf(m_pick(rng), 500 + static_cast<std::uint64_t>(trial),
                               needs_symmetric_psf(bc));
    const double mu = std::pow(10.0, mu_exp(rng));
    const auto opv = build_operator(psf, n, bc);
    const auto L = smoothing_eigenvalues(SmootherKind::laplacian, opv);
    const auto g = random_vector(n, 700 + static_cast<std::uint64_t>(trial));
    const auto freg = tikhonov_solve(opv, L, g, mu);

    const double res = std::visit(
        [&](const auto& o) {
          using S = std::decay_t<decltype(o.eigenvalues[0])>;
          std::vector<S> lhs_d(static_cast<std::size_t>(n)),
              rhs_d(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) {
            const auto d = o.eigenvalues[static_cast<std::size_t>(i)];
            const double s = L.eigenvalues[static_cast<std::size_t>(i)];
            lhs_d[static_cast<std::size_t>(i)] = S(std::norm(cplx(d)) + mu * s * s);
            if constexpr (std::is_same_v<S, double>)
              rhs_d[static_cast<std::size_t>(i)] = d;
            else
              rhs_d[static_cast<std::size_t>(i)] = std::conj(d);
          }
          std::vector<double> lhs, rhs;
          if constexpr (std::is_same_v<S, double>) {
            lhs = operator_from_eigenvalues(o.bc, n, lhs_d, psf).apply(freg);
            rhs = operator_from_eigenvalues(o.bc, n, rhs_d, psf).apply(g);
          } else {
            lhs = operator_from_eigenvalues_complex(o.bc, n, lhs_d, psf).apply(freg);
            rhs = operator_from_eigenvalues_complex(o.bc, n, rhs_d, psf).apply(g);
          }
          double acc = 0.0, gn = 0.0;
          for (int i = 0; i < n; ++i) {
            acc += (lhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]) *
                   (lhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]);
            gn += g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
          }
          return std::sqrt(acc / gn);
        },
        opv);
    worst = std::max(worst, res);
  }
  const double dt = now_seconds() - t0;
  Result r;
  r.pass = worst <= 1e-8 && dt < 10.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "worst residual %.2e (tol 1e-8 ||g||), %.2fs (< 10s)", worst, dt);
  r.metrics = buf;
  return r;
}

// ---------------------------------------------------------------------------
// Criteria 4/5: directional 1D reproductions.
namespace c45 {

std::vector<double> synthetic_signal(int n, int m) {
  // smooth, nonzero at both boundaries: cubic trend plus two interior bumps
  std::vector<double> fext(static_cast<std::size_t>(n + 2 * m));
  for (int i = 0; i < n + 2 * m; ++i) {
    const double t = static_cast<double>(i - m) / n;
    fext[static_cast<std::size_t>(i)] =
        2.0 + 3.0 * t - 7.0 * t * t + 3.5 * t * t * t +
        0.8 * std::exp(-std::pow((t - 0.35) / 0.05, 2)) +
        0.6 * std::exp(-std::pow((t - 0.65) / 0.06, 2));
  }
  return fext;
}

struct SeedOutcome {
  std::vector<double> min_rre; // per bc
  double rre_gcv_first = 0.0;  // GCV restoration error of the first bc
};

SeedOutcome run_seed(const Psf& psf, const std::vector<double>& fext, int n,
                     double noise, std::uint64_t seed,
                     const std::vector<BoundaryCondition>& bcs) {
  const std::vector<double> truth(fext.begin() + psf.m, fext.begin() + psf.m + n);
  auto g = convolve_valid(fext, psf);
  g = add_noise(g, noise, seed);
  SeedOutcome out;
  for (std::size_t k = 0; k < bcs.size(); ++k) {
    const auto op = build_operator(psf, n, bcs[k]);
    const auto L = smoothing_eigenvalues(SmootherKind::laplacian, op);
    const auto sweep = sweep_mu(op, L, g, truth);
    out.min_rre.push_back(sweep.min_rre);
    if (k == 0) out.rre_gcv_first = sweep.rre_gcv;
  }
  return out;
}

} // namespace c45

Result criterion4() {
  const double t0 = now_seconds();
  const int n = 256, m = 8;
  const Psf psf = gaussian_psf(m, 2.5);
  const auto fext = c45::synthetic_signal(n, m);
  const std::vector<BoundaryCondition> bcs{BoundaryCondition::hoc_cosine,
                                           BoundaryCondition::antireflective,
                                           BoundaryCondition::reflective};
  int order_ok = 0, gcv_ok = 0, ca_ok = 0, ar_ok = 0;
  double med[3] = {0, 0, 0};
  std::vector<std::vector<double>> all;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto out = c45::run_seed(psf, fext, n, 1e-3, seed, bcs);
    const bool ca = out.min_rre[0] < out.min_rre[1];
    const bool ar = out.min_rre[1] < out.min_rre[2];
    if (ca) ++ca_ok;
    if (ar) ++ar_ok;
    if (ca && ar) ++order_ok;
    if (out.rre_gcv_first <= 1.5 * out.min_rre[0]) ++gcv_ok;
    all.push_back(out.min_rre);
  }
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v;
    for (const auto& row : all) v.push_back(row[static_cast<std::size_t>(k)]);
    std::sort(v.begin(), v.end());
    med[k] = v[v.size() / 2];
  }
  const double dt = now_seconds() - t0;
  Result r;
  r.pass = order_ok >= 8 && gcv_ok >= 8 && dt < 60.0;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "ordering A_C < AR < reflective on %d/10 seeds (need >= 8; "
                "A_C < AR on %d/10, AR < reflective on %d/10), GCV within 1.5x "
                "on %d/10, median RRE C/A/R = %.4f/%.4f/%.4f, %.1fs (< 60s)",
                order_ok, ca_ok, ar_ok, gcv_ok, med[0], med[1], med[2], dt);
  r.metrics = buf;
  return r;
}

Result criterion5() {
  const double t0 = now_seconds();
  const int n = 256, m = 5;
  const Psf psf = motion_psf(m);
  const auto fext = c45::synthetic_signal(n, m);
  const std::vector<BoundaryCondition> bcs{BoundaryCondition::hoc_fourier,
                                           BoundaryCondition::periodic};
  int order_ok = 0, gcv_ok = 0;
  double med[2] = {0, 0};
  std::vector<std::vector<double>> all;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto out = c45::run_seed(psf, fext, n, 1e-2, seed, bcs);
    if (out.min_rre[0] < out.min_rre[1]) ++order_ok;
    if (out.rre_gcv_first <= 1.5 * out.min_rre[0]) ++gcv_ok;
    all.push_back(out.min_rre);
  }
  for (int k = 0; k < 2; ++k) {
    std::vector<double> v;
    for (const auto& row : all) v.push_back(row[static_cast<std::size_t>(k)]);
    std::sort(v.begin(), v.end());
    med[k] = v[v.size() / 2];
  }
  const double dt = now_seconds() - t0;
  Result r;
  r.pass = order_ok >= 8 && gcv_ok >= 8 && dt < 60.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "ordering A_F < periodic on %d/10 seeds (need >= 8), GCV within "
                "1.5x on %d/10, median RRE F/P = %.4f/%.4f, %.1fs (< 60s)",
                order_ok, gcv_ok, med[0], med[1], dt);
  r.metrics = buf;
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 6: Table-1-shaped 2D experiment.
Result criterion6() {
  const double t0 = now_seconds();
  const int n = 128, pad = 4;
  const Psf2D psf = out_of_focus_psf(4);

  const int ext = n + 2 * pad;
  std::vector<double> fext(static_cast<std::size_t>(ext) * ext);
  for (int i = 0; i < ext; ++i)
    for (int j = 0; j < ext; ++j) {
      const double x = static_cast<double>(i - pad) / n;
      const double y = static_cast<double>(j - pad) / n;
      fext[static_cast<std::size_t>(i) * ext + static_cast<std::size_t>(j)] =
          2.0 + 2.0 * x - 1.5 * y - 5.0 * (x - 0.45) * (x - 0.45) -
          4.0 * (y - 0.55) * (y - 0.55) + 1.5 * std::pow(x - 0.5, 3) +
          std::pow(y - 0.5, 3) + 0.8 * x * y +
          0.7 * std::exp(-(std::pow((x - 0.35) / 0.08, 2) +
                           std::pow((y - 0.40) / 0.08, 2))) +
          0.5 * std::exp(-(std::pow((x - 0.70) / 0.09, 2) +
                           std::pow((y - 0.65) / 0.07, 2)));
    }
  std::vector<double> truth(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      truth[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] =
          fext[static_cast<std::size_t>(i + pad) * ext +
               static_cast<std::size_t>(j + pad)];
  const auto clean = convolve_valid_2d(fext, ext, ext, psf);

  const std::vector<BoundaryCondition> bcs{BoundaryCondition::hoc_cosine,
                                           BoundaryCondition::antireflective,
                                           BoundaryCondition::reflective};
  std::vector<BlurOperator2D> ops;
  std::vector<SmoothingOperator2D> smoothers;
  for (auto bc : bcs) {
    ops.push_back(build_operator_2d(psf, n, n, bc));
    smoothers.push_back(smoothing_eigenvalues_2d(SmootherKind::identity, ops.back()));
  }

  int order_ok = 0, ca_ok = 0, ar_ok = 0;
  double med[3] = {0, 0, 0};
  std::vector<std::vector<double>> all;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = add_noise(clean, 1e-3, seed);
    std::vector<double> min_rre;
    for (std::size_t k = 0; k < bcs.size(); ++k) {
      const auto sweep = sweep_mu_2d(ops[k], smoothers[k], g, truth);
      min_rre.push_back(sweep.min_rre);
    }
    const bool ca = min_rre[0] <= min_rre[1];
    const bool ar = min_rre[1] <= min_rre[2];
    if (ca) ++ca_ok;
    if (ar) ++ar_ok;
    if (ca && ar) ++order_ok;
    all.push_back(min_rre);
  }
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v;
    for (const auto& row : all) v.push_back(row[static_cast<std::size_t>(k)]);
    std::sort(v.begin(), v.end());
    med[k] = v[v.size() / 2];
  }
  const double dt = now_seconds() - t0;
  Result r;
  r.pass = order_ok >= 8 && dt < 300.0;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "ordering A_C <= AR <= reflective on %d/10 seeds (need >= 8; "
                "A_C <= AR on %d/10, AR <= reflective on %d/10), median "
                "RRE(mu_opt) C/A/R = %.4f/%.4f/%.4f, %.1fs (< 300s)",
                order_ok, ca_ok, ar_ok, med[0], med[1], med[2], dt);
  r.metrics = buf;
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 7: transform-bound complexity.
Result criterion7() {
  auto pair_time = [](const RealStructuredTransform& t, int reps) {
    std::vector<double> v = random_vector(t.n, 42);
    double best = 1e300;
    volatile double sink = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double a = now_seconds();
      const auto y = transform_apply(t, std::span<const double>(v.data(), v.size()));
      const auto x =
          transform_apply_inverse(t, std::span<const double>(y.data(), y.size()));
      const double b = now_seconds();
      sink = x[static_cast<std::size_t>(t.n / 2)];
      best = std::min(best, b - a);
    }
    (void)sink;
    return best;
  };

  double times[5];
  for (int k = 16; k <= 20; ++k) {
    const auto t = build_real_transform(BoundaryBasis::hoc_cosine, 1 << k);
    times[k - 16] = pair_time(t, 7);
  }
  std::vector<double> ratios;
  for (int k = 0; k < 3; ++k) ratios.push_back(times[k + 1] / times[k]);
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[1];
  const double t20 = times[4];

  Result r;
  r.pass = t20 < 1.0 && median <= 2.6;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "apply+inverse at 2^20: %.3fs (< 1s), median doubling ratio over "
                "2^16..2^19: %.2f (<= 2.6)",
                t20, median);
  r.metrics = buf;
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 8: GCV functional properties.
Result criterion8() {
  // scaling invariance on a nontrivial problem
  const int n = 64;
  const Psf psf = gaussian_psf(4, 2.0);
  const auto op = build_operator(psf, n, BoundaryCondition::hoc_cosine);
  const auto L = smoothing_eigenvalues(SmootherKind::laplacian, op);
  const auto g = random_vector(n, 808);
  const GcvSearch search{1e-10, 1.0, 80};
  const auto r1 = gcv_select(op, L, g, search);
  std::vector<double> g4(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) g4[i] = 4.0 * g[i];
  const auto r4 = gcv_select(op, L, g4, search);
  std::size_t k1 = 0, k4 = 0;
  double scale_err = 0.0;
  for (std::size_t k = 0; k < r1.curve.size(); ++k) {
    if (r1.curve[k].second < r1.curve[k1].second) k1 = k;
    if (r4.curve[k].second < r4.curve[k4].second) k4 = k;
    scale_err = std::max(scale_err, std::abs(r4.curve[k].second -
                                             16.0 * r1.curve[k].second) /
                                        (16.0 * r1.curve[k].second));
  }
  const bool argmin_same = k1 == k4;

  // constant functional for the identity problem: G == ||ghat||^2 / n^2
  const int n2 = 16;
  const auto op_id = build_operator(identity_psf(), n2, BoundaryCondition::reflective);
  const auto L_id = smoothing_eigenvalues(SmootherKind::identity, op_id);
  const auto gid = random_vector(n2, 909);
  const auto ghat = cosine_apply(gid, Direction::forward);
  double ghat2 = 0.0;
  for (double x : ghat) ghat2 += x * x;
  const double want = ghat2 / (static_cast<double>(n2) * n2);
  double const_err = 0.0;
  const auto rid = gcv_select(op_id, L_id, gid, {1e-12, 10.0, 100});
  for (const auto& [mu, gv] : rid.curve)
    const_err = std::max(const_err, std::abs(gv - want) / want);

  Result r;
  r.pass = argmin_same && scale_err <= 1e-12 && const_err <= 1e-12;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "argmin invariant: %s, c^2-scaling err %.2e (tol 1e-12), "
                "constant-G err %.2e (tol 1e-12)",
                argmin_same ? "yes" : "NO", scale_err, const_err);
  r.metrics = buf;
  return r;
}

} // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

  const struct {
    int id;
    const char* name;
    std::function<Result()> run;
  } criteria[] = {
      {1, "polynomial preservation", criterion1},
      {2, "dense-oracle equivalence", criterion2},
      {3, "reblurred normal-equation residual", criterion3},
      {4, "directional 1D comparison, symmetric blur", criterion4},
      {5, "directional 1D comparison, motion blur", criterion5},
      {6, "2D out-of-focus comparison", criterion6},
      {7, "transform-bound complexity", criterion7},
      {8, "GCV functional properties", criterion8},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const Result r = c.run();
    std::printf("%s criterion %d: %s — %s\n", r.pass ? "PASS" : "FAIL", c.id,
                c.name, r.metrics.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures;
}
