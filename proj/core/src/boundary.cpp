// Construction and fast application of the antireflective and higher-order
// boundary transforms. The inverse follows the decouple-then-correct scheme:
// since q_n = 0 the first and last rows of the zero-boundary-row part Ttilde
// decouple, Ttilde^{-1} has alpha = 1/q_1 on the corners, X in the interior
// and correction columns v = -X qhat/q_1, w = -X J qhat/q_1; the boundary
// rows are restored by a rank-2 Sherman-Morrison-Woodbury step with a
// precomputed 2x2 capacitance matrix.
//
// Note the last interior column of Ttilde^{-1} is w = -X J qhat / q_1, not
// J v: solving Ttilde Ttilde^{-1} = I column-wise forces it, and the dense
// inverse confirms it for all three bases.

#include "fastdeblur/boundary.hpp"

#include <cmath>
#include <numbers>

#include "fastdeblur/errors.hpp"
#include "fastdeblur/trig.hpp"

namespace fastdeblur {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCapacitanceConditionLimit = 1e12;

void check_order(int n) {
  if (n < 5)
    throw ValidationError("boundary transform needs order n >= 5 "
                          "(nonempty interior and nondegenerate capacitance)");
}

// X * x or X^{-1} * x for the interior transform of each basis.
template <class Scalar>
std::vector<Scalar> interior_apply(BoundaryBasis basis, std::span<const Scalar> x,
                                   bool forward) {
  if constexpr (std::is_same_v<Scalar, double>) {
    if (basis == BoundaryBasis::antireflective) return sine_apply(x); // involution
    return cosine_apply(x, forward ? Direction::forward : Direction::inverse);
  } else {
    return fourier_apply(x, forward ? Direction::forward : Direction::inverse);
  }
}

template <class Scalar>
double abs2(Scalar z) {
  if constexpr (std::is_same_v<Scalar, double>) return z * z;
  else return std::norm(z);
}

// Condition number of the 2x2 capacitance in the 2-norm, via its singular
// values; throws if the correction step cannot be trusted.
template <class Scalar>
void check_capacitance(const std::array<Scalar, 4>& m) {
  const double t = abs2(m[0]) + abs2(m[1]) + abs2(m[2]) + abs2(m[3]);
  const Scalar det = m[0] * m[3] - m[1] * m[2];
  const double d = abs2(det);
  const double r = std::sqrt(std::max(t * t - 4.0 * d, 0.0));
  const double smax = std::sqrt((t + r) / 2.0);
  const double smin2 = (t - r) / 2.0;
  if (smin2 <= 0.0 || smax / std::sqrt(smin2) > kCapacitanceConditionLimit)
    throw DegenerateError("degenerate transform: 2x2 capacitance matrix is "
                          "singular or ill-conditioned");
}

// Shared construction given the boundary column and boundary rows.
template <class Scalar>
StructuredTransform<Scalar> assemble(BoundaryBasis basis, int n,
                                     std::vector<double> q,
                                     std::vector<Scalar> c_a,
                                     std::vector<Scalar> c_b, ExtendedGrid grid) {
  StructuredTransform<Scalar> t;
  t.basis = basis;
  t.n = n;
  t.grid = std::move(grid);

  double norm = 0.0;
  for (double x : q) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : q) x /= norm;
  q.back() = 0.0;
  t.q = std::move(q);
  t.alpha = 1.0 / t.q[0];

  const std::size_t in = static_cast<std::size_t>(n - 2);
  std::vector<Scalar> qhat(in), qhat_flipped(in);
  for (std::size_t i = 0; i < in; ++i) {
    qhat[i] = t.q[i + 1];
    qhat_flipped[i] = t.q[in - i];
  }
  t.v = interior_apply<Scalar>(basis, qhat, /*forward=*/true);
  t.w = interior_apply<Scalar>(basis, qhat_flipped, /*forward=*/true);
  for (std::size_t i = 0; i < in; ++i) {
    t.v[i] *= -t.alpha;
    t.w[i] *= -t.alpha;
  }

  t.c_a = std::move(c_a);
  t.c_b = std::move(c_b);
  t.has_correction = basis != BoundaryBasis::antireflective;
  if (t.has_correction) {
    // row_a = c_a^T X = (X^T c_a)^T; DCT-II has X^T = X^{-1}, the DFT matrix
    // is symmetric so X^T = X.
    const bool transpose_is_inverse = std::is_same_v<Scalar, double>;
    t.row_a = interior_apply<Scalar>(basis, std::span<const Scalar>(t.c_a),
                                     /*forward=*/!transpose_is_inverse);
    t.row_b = interior_apply<Scalar>(basis, std::span<const Scalar>(t.c_b),
                                     /*forward=*/!transpose_is_inverse);
    Scalar ca_v{}, ca_w{}, cb_v{}, cb_w{};
    for (std::size_t i = 0; i < in; ++i) {
      ca_v += t.c_a[i] * t.v[i];
      ca_w += t.c_a[i] * t.w[i];
      cb_v += t.c_b[i] * t.v[i];
      cb_w += t.c_b[i] * t.w[i];
    }
    t.ca_v = ca_v;
    t.ca_w = ca_w;
    t.cb_v = cb_v;
    t.cb_w = cb_w;
    t.capacitance = {Scalar{1} + ca_v, ca_w, cb_v, Scalar{1} + cb_w};
    check_capacitance(t.capacitance);
  } else {
    t.row_a.assign(in, Scalar{});
    t.row_b.assign(in, Scalar{});
    t.capacitance = {Scalar{1}, Scalar{}, Scalar{}, Scalar{1}};
  }
  return t;
}

} // namespace

ExtendedGrid extended_grid(BoundaryBasis basis, int n) {
  check_order(n);
  ExtendedGrid g;
  g.points.resize(static_cast<std::size_t>(n));
  switch (basis) {
    case BoundaryBasis::antireflective:
      // x_i = i pi/(n-1) on [0, pi]
      g.a = 0.0;
      g.b = kPi;
      for (int i = 0; i < n; ++i)
        g.points[static_cast<std::size_t>(i)] = i * kPi / (n - 1);
      break;
    case BoundaryBasis::hoc_cosine:
      // x_i = (2i-1) pi/(2n-4) on [-pi/(2n-4), (2n-3) pi/(2n-4)]
      g.a = -kPi / (2 * n - 4);
      g.b = (2 * n - 3) * kPi / (2 * n - 4);
      for (int i = 0; i < n; ++i)
        g.points[static_cast<std::size_t>(i)] = (2 * i - 1) * kPi / (2 * n - 4);
      break;
    case BoundaryBasis::hoc_fourier:
      // x_i = (i-1) 2 pi/(n-2) on [-2 pi/(n-2), 2 pi]
      g.a = -2.0 * kPi / (n - 2);
      g.b = 2.0 * kPi;
      for (int i = 0; i < n; ++i)
        g.points[static_cast<std::size_t>(i)] = (i - 1) * 2.0 * kPi / (n - 2);
      break;
  }
  return g;
}

RealStructuredTransform build_real_transform(BoundaryBasis basis, int n) {
  check_order(n);
  if (basis == BoundaryBasis::hoc_fourier)
    throw ValidationError("hoc_fourier is complex-valued; use build_fourier_transform");
  ExtendedGrid grid = extended_grid(basis, n);
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<double> q(un);

  if (basis == BoundaryBasis::antireflective) {
    // p_i proportional to 1 - (i-1)/(n-1), scaled to unit 2-norm
    for (int i = 0; i < n; ++i)
      q[static_cast<std::size_t>(i)] = 1.0 - static_cast<double>(i) / (n - 1);
    return assemble<double>(basis, n, std::move(q),
                            std::vector<double>(un - 2, 0.0),
                            std::vector<double>(un - 2, 0.0), std::move(grid));
  }

  // hoc_cosine: qtilde_{i+1} = (b - x_i)^2 on the extended grid
  for (int i = 0; i < n; ++i) {
    const double d = grid.b - grid.points[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i)] = d * d;
  }
  std::vector<double> c_a(un - 2), c_b(un - 2);
  for (int j = 0; j < n - 2; ++j) {
    const double scale = std::sqrt((j == 0 ? 1.0 : 2.0) / (n - 2));
    c_a[static_cast<std::size_t>(j)] = scale * std::cos(j * grid.a);
    // b = pi - a, so the row at b is the row at a with alternating signs
    c_b[static_cast<std::size_t>(j)] =
        (j % 2 == 0) ? c_a[static_cast<std::size_t>(j)]
                     : -c_a[static_cast<std::size_t>(j)];
  }
  return assemble<double>(basis, n, std::move(q), std::move(c_a), std::move(c_b),
                          std::move(grid));
}

ComplexStructuredTransform build_fourier_transform(int n) {
  check_order(n);
  ExtendedGrid grid = extended_grid(BoundaryBasis::hoc_fourier, n);
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<double> q(un);
  for (int i = 0; i < n; ++i) {
    const double d = grid.b - grid.points[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i)] = d * d;
  }
  q.back() = 0.0; // x_{n-1} = b up to rounding of the grid formula

  std::vector<cplx> c_a(un - 2), c_b(un - 2);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n - 2));
  for (int j = 0; j < n - 2; ++j) {
    c_a[static_cast<std::size_t>(j)] = std::polar(scale, j * grid.a);
    // exp(i j b) with b = 2 pi
    c_b[static_cast<std::size_t>(j)] = cplx{scale, 0.0};
  }
  return assemble<cplx>(BoundaryBasis::hoc_fourier, n, std::move(q),
                        std::move(c_a), std::move(c_b), std::move(grid));
}

AnyStructuredTransform build_transform(BoundaryBasis basis, int n) {
  if (basis == BoundaryBasis::hoc_fourier) return build_fourier_transform(n);
  return build_real_transform(basis, n);
}

template <class Scalar>
std::vector<Scalar> transform_apply(const StructuredTransform<Scalar>& t,
                                    std::span<const Scalar> u) {
  const int n = t.n;
  if (static_cast<int>(u.size()) != n)
    throw DimensionError("transform_apply: input length != n");
  const std::size_t in = static_cast<std::size_t>(n - 2);

  std::span<const Scalar> mid = u.subspan(1, in);
  std::vector<Scalar> interior =
      interior_apply<Scalar>(t.basis, mid, /*forward=*/false); // X^{-1} part

  std::vector<Scalar> out(static_cast<std::size_t>(n));
  Scalar top{}, bottom{};
  for (std::size_t j = 0; j < in; ++j) {
    top += t.c_a[j] * mid[j];
    bottom += t.c_b[j] * mid[j];
  }
  // first/last columns are q and Jq; q_n = 0 keeps the corners clean
  out[0] = t.q[0] * u[0] + top;
  for (std::size_t i = 1; i + 1 < static_cast<std::size_t>(n); ++i)
    out[i] = t.q[i] * u[0] + interior[i - 1] +
             t.q[static_cast<std::size_t>(n) - 1 - i] * u[static_cast<std::size_t>(n) - 1];
  out[static_cast<std::size_t>(n) - 1] =
      bottom + t.q[0] * u[static_cast<std::size_t>(n) - 1];
  return out;
}

template <class Scalar>
std::vector<Scalar> transform_apply_inverse(const StructuredTransform<Scalar>& t,
                                            std::span<const Scalar> y) {
  const int n = t.n;
  if (static_cast<int>(y.size()) != n)
    throw DimensionError("transform_apply_inverse: input length != n");
  const std::size_t in = static_cast<std::size_t>(n - 2);
  const Scalar y1 = y[0];
  const Scalar yn = y[static_cast<std::size_t>(n) - 1];

  std::span<const Scalar> mid = y.subspan(1, in);
  std::vector<Scalar> xi = interior_apply<Scalar>(t.basis, mid, /*forward=*/true);

  std::vector<Scalar> out(static_cast<std::size_t>(n));
  out[0] = t.alpha * y1;
  out[static_cast<std::size_t>(n) - 1] = t.alpha * yn;
  for (std::size_t i = 0; i < in; ++i)
    out[i + 1] = y1 * t.v[i] + xi[i] + yn * t.w[i];

  if (t.has_correction) {
    Scalar ra = t.ca_v * y1 + t.ca_w * yn;
    Scalar rb = t.cb_v * y1 + t.cb_w * yn;
    for (std::size_t i = 0; i < in; ++i) {
      ra += t.row_a[i] * mid[i];
      rb += t.row_b[i] * mid[i];
    }
    // solve the 2x2 capacitance system M beta = r
    const auto& m = t.capacitance;
    const Scalar det = m[0] * m[3] - m[1] * m[2];
    const Scalar beta0 = (ra * m[3] - rb * m[1]) / det;
    const Scalar beta1 = (rb * m[0] - ra * m[2]) / det;
    out[0] -= beta0 * t.alpha;
    out[static_cast<std::size_t>(n) - 1] -= beta1 * t.alpha;
    for (std::size_t i = 0; i < in; ++i)
      out[i + 1] -= beta0 * t.v[i] + beta1 * t.w[i];
  }
  return out;
}

template std::vector<double> transform_apply(const StructuredTransform<double>&,
                                             std::span<const double>);
template std::vector<cplx> transform_apply(const StructuredTransform<cplx>&,
                                           std::span<const cplx>);
template std::vector<double> transform_apply_inverse(const StructuredTransform<double>&,
                                                     std::span<const double>);
template std::vector<cplx> transform_apply_inverse(const StructuredTransform<cplx>&,
                                                   std::span<const cplx>);

} // namespace fastdeblur
