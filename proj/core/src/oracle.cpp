#include "fastdeblur/oracle.hpp"

#include <cmath>
#include <numbers>

#include "fastdeblur/errors.hpp"

namespace fastdeblur::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

template <class Scalar>
double abs_of(Scalar z) {
  return std::abs(z);
}

} // namespace

template <class Scalar>
std::vector<Scalar> DenseMatrix<Scalar>::matvec(std::span<const Scalar> x) const {
  if (static_cast<int>(x.size()) != cols)
    throw DimensionError("dense matvec: size mismatch");
  std::vector<Scalar> y(static_cast<std::size_t>(rows), Scalar{});
  for (int i = 0; i < rows; ++i) {
    Scalar acc{};
    for (int j = 0; j < cols; ++j) acc += at(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

template <class Scalar>
DenseMatrix<Scalar> DenseMatrix<Scalar>::matmul(const DenseMatrix& other) const {
  if (cols != other.rows) throw DimensionError("dense matmul: size mismatch");
  DenseMatrix out(rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Scalar aik = at(i, k);
      for (int j = 0; j < other.cols; ++j) out.at(i, j) += aik * other.at(k, j);
    }
  return out;
}

template struct DenseMatrix<double>;
template struct DenseMatrix<cplx>;

namespace {

// In-place LU with partial pivoting; perm holds the row permutation.
template <class Scalar>
void lu_factor(DenseMatrix<Scalar>& m, std::vector<int>& perm) {
  const int n = m.rows;
  if (m.rows != m.cols) throw DimensionError("lu: square matrix required");
  perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = abs_of(m.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = abs_of(m.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw DegenerateError("lu: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
    }
    for (int i = k + 1; i < n; ++i) {
      const Scalar f = m.at(i, k) / m.at(k, k);
      m.at(i, k) = f;
      for (int j = k + 1; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
}

template <class Scalar>
std::vector<Scalar> lu_apply(const DenseMatrix<Scalar>& lu, const std::vector<int>& perm,
                             std::span<const Scalar> b) {
  const int n = lu.rows;
  std::vector<Scalar> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  for (int i = 1; i < n; ++i) {
    Scalar acc = x[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) acc -= lu.at(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    Scalar acc = x[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= lu.at(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc / lu.at(i, i);
  }
  return x;
}

} // namespace

template <class Scalar>
DenseMatrix<Scalar> lu_inverse(const DenseMatrix<Scalar>& m) {
  DenseMatrix<Scalar> lu = m;
  std::vector<int> perm;
  lu_factor(lu, perm);
  const int n = m.rows;
  DenseMatrix<Scalar> inv(n, n);
  std::vector<Scalar> e(static_cast<std::size_t>(n), Scalar{});
  for (int j = 0; j < n; ++j) {
    e[static_cast<std::size_t>(j)] = Scalar{1};
    std::vector<Scalar> col =
        lu_apply(lu, perm, std::span<const Scalar>(e.data(), e.size()));
    for (int i = 0; i < n; ++i) inv.at(i, j) = col[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(j)] = Scalar{};
  }
  return inv;
}

template <class Scalar>
std::vector<Scalar> lu_solve(DenseMatrix<Scalar> m, std::vector<Scalar> b) {
  std::vector<int> perm;
  lu_factor(m, perm);
  return lu_apply(m, perm, std::span<const Scalar>(b.data(), b.size()));
}

template DenseMatrix<double> lu_inverse(const DenseMatrix<double>&);
template DenseMatrix<cplx> lu_inverse(const DenseMatrix<cplx>&);
template std::vector<double> lu_solve(DenseMatrix<double>, std::vector<double>);
template std::vector<cplx> lu_solve(DenseMatrix<cplx>, std::vector<cplx>);

ComplexMatrix dense_fourier(int m) {
  ComplexMatrix f(m, m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      f.at(i - 1, j - 1) = std::polar(1.0 / std::sqrt(static_cast<double>(m)),
                                      -2.0 * kPi * (i - 1) * (j - 1) / m);
  return f;
}

RealMatrix dense_cosine(int m) {
  RealMatrix c(m, m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      c.at(i - 1, j - 1) = std::sqrt((i == 1 ? 1.0 : 2.0) / m) *
                           std::cos((i - 1) * (2 * j - 1) * kPi / (2 * m));
  return c;
}

RealMatrix dense_sine(int m) {
  RealMatrix q(m, m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      q.at(i - 1, j - 1) =
          std::sqrt(2.0 / (m + 1)) * std::sin(static_cast<double>(i) * j * kPi / (m + 1));
  return q;
}

namespace {

std::vector<double> unit_q_column(BoundaryBasis basis, int n,
                                  const ExtendedGrid& grid) {
  std::vector<double> q(static_cast<std::size_t>(n));
  if (basis == BoundaryBasis::antireflective) {
    for (int i = 0; i < n; ++i)
      q[static_cast<std::size_t>(i)] = 1.0 - static_cast<double>(i) / (n - 1);
  } else {
    for (int i = 0; i < n; ++i) {
      const double d = grid.b - grid.points[static_cast<std::size_t>(i)];
      q[static_cast<std::size_t>(i)] = d * d;
    }
    q[static_cast<std::size_t>(n - 1)] = 0.0;
  }
  double norm = 0.0;
  for (double x : q) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : q) x /= norm;
  return q;
}

} // namespace

RealMatrix dense_transform_real(BoundaryBasis basis, int n) {
  if (n < 5) throw ValidationError("dense transform needs n >= 5");
  if (basis == BoundaryBasis::hoc_fourier)
    throw ValidationError("hoc_fourier transform is complex");
  const ExtendedGrid grid = extended_grid(basis, n);
  const std::vector<double> q = unit_q_column(basis, n, grid);
  RealMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    t.at(i, 0) = q[static_cast<std::size_t>(i)];
    t.at(i, n - 1) = q[static_cast<std::size_t>(n - 1 - i)];
  }
  for (int j = 1; j <= n - 2; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = grid.points[static_cast<std::size_t>(i)];
      double value;
      if (basis == BoundaryBasis::antireflective)
        value = std::sqrt(2.0 / (n - 1)) * std::sin(j * x);
      else
        value = std::sqrt((j == 1 ? 1.0 : 2.0) / (n - 2)) * std::cos((j - 1) * x);
      t.at(i, j) = value;
    }
  }
  return t;
}

ComplexMatrix dense_transform_fourier(int n) {
  if (n < 5) throw ValidationError("dense transform needs n >= 5");
  const ExtendedGrid grid = extended_grid(BoundaryBasis::hoc_fourier, n);
  const std::vector<double> q =
      unit_q_column(BoundaryBasis::hoc_fourier, n, grid);
  ComplexMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    t.at(i, 0) = q[static_cast<std::size_t>(i)];
    t.at(i, n - 1) = q[static_cast<std::size_t>(n - 1 - i)];
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n - 2));
  for (int j = 1; j <= n - 2; ++j)
    for (int i = 0; i < n; ++i)
      t.at(i, j) = std::polar(scale, (j - 1) * grid.points[static_cast<std::size_t>(i)]);
  return t;
}

AnyMatrix dense_transform(BoundaryBasis basis, int n) {
  if (basis == BoundaryBasis::hoc_fourier) return dense_transform_fourier(n);
  return dense_transform_real(basis, n);
}

AnyMatrix dense_blur_matrix(const Psf& psf, int n, BoundaryCondition bc) {
  const std::vector<double> nodes = eigenvalue_grid(bc, n);
  switch (bc) {
    case BoundaryCondition::periodic: {
      ComplexMatrix f = dense_fourier(n);
      ComplexMatrix fh(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fh.at(i, j) = std::conj(f.at(j, i));
      ComplexMatrix d(n, n);
      for (int i = 0; i < n; ++i)
        d.at(i, i) = symbol_eval(psf, nodes[static_cast<std::size_t>(i)]);
      return fh.matmul(d).matmul(f);
    }
    case BoundaryCondition::reflective: {
      RealMatrix c = dense_cosine(n);
      RealMatrix ct(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ct.at(i, j) = c.at(j, i);
      RealMatrix d(n, n);
      for (int i = 0; i < n; ++i)
        d.at(i, i) = symbol_eval(psf, nodes[static_cast<std::size_t>(i)]).real();
      return ct.matmul(d).matmul(c);
    }
    case BoundaryCondition::antireflective:
    case BoundaryCondition::hoc_cosine: {
      const BoundaryBasis basis = bc == BoundaryCondition::antireflective
                                      ? BoundaryBasis::antireflective
                                      : BoundaryBasis::hoc_cosine;
      RealMatrix t = dense_transform_real(basis, n);
      RealMatrix tinv = lu_inverse(t);
      RealMatrix d(n, n);
      for (int i = 0; i < n; ++i)
        d.at(i, i) = symbol_eval(psf, nodes[static_cast<std::size_t>(i)]).real();
      // pinned boundary eigenvalues carry z(0) = 1
      d.at(0, 0) = 1.0;
      d.at(n - 1, n - 1) = 1.0;
      return t.matmul(d).matmul(tinv);
    }
    case BoundaryCondition::hoc_fourier: {
      ComplexMatrix t = dense_transform_fourier(n);
      ComplexMatrix tinv = lu_inverse(t);
      ComplexMatrix d(n, n);
      for (int i = 0; i < n; ++i)
        d.at(i, i) = symbol_eval(psf, nodes[static_cast<std::size_t>(i)]);
      d.at(0, 0) = 1.0;
      d.at(n - 1, n - 1) = 1.0;
      return t.matmul(d).matmul(tinv);
    }
  }
  throw ValidationError("unknown boundary condition");
}

RealMatrix dense_blur_stencil(const Psf& psf, int n, BoundaryCondition bc) {
  if (bc != BoundaryCondition::periodic && bc != BoundaryCondition::reflective)
    throw ValidationError("stencil assembly covers periodic and reflective only");
  if (psf.support() > n)
    throw ValidationError("psf support 2m+1 must be <= n");
  RealMatrix a(n, n);
  // g_i = sum_j h_j f_{i+j} (the masking convention the spectral definitions
  // produce: entry (i,k) of F^H diag(z) F is h_{k-i}), with out-of-range
  // samples substituted by the boundary rule: periodic wraps, reflective
  // folds (f_{1-j} = f_j).
  for (int i = 1; i <= n; ++i) {
    for (int j = -psf.m; j <= psf.m; ++j) {
      int t = i + j;
      if (bc == BoundaryCondition::periodic) {
        t = ((t - 1) % n + n) % n + 1;
      } else {
        if (t <= 0) t = 1 - t;
        if (t >= n + 1) t = 2 * n + 1 - t;
      }
      a.at(i - 1, t - 1) += psf.at(j);
    }
  }
  return a;
}

std::vector<cplx> eigs_via_e1_ratio(const Psf& psf, int n, BoundaryCondition bc) {
  if (bc != BoundaryCondition::periodic && bc != BoundaryCondition::reflective)
    throw ValidationError("e1-ratio trick covers periodic and reflective only");
  const RealMatrix a = dense_blur_stencil(psf, n, bc);
  std::vector<double> e1(static_cast<std::size_t>(n), 0.0);
  e1[0] = 1.0;
  const std::vector<double> ae1 = a.matvec(e1);

  std::vector<cplx> num(static_cast<std::size_t>(n)), den(static_cast<std::size_t>(n));
  if (bc == BoundaryCondition::periodic) {
    const ComplexMatrix f = dense_fourier(n);
    std::vector<cplx> ac(ae1.begin(), ae1.end()), ec(e1.begin(), e1.end());
    num = f.matvec(ac);
    den = f.matvec(ec);
  } else {
    const RealMatrix c = dense_cosine(n);
    const std::vector<double> nr = c.matvec(ae1);
    const std::vector<double> dr = c.matvec(e1);
    for (int i = 0; i < n; ++i) {
      num[static_cast<std::size_t>(i)] = nr[static_cast<std::size_t>(i)];
      den[static_cast<std::size_t>(i)] = dr[static_cast<std::size_t>(i)];
    }
  }
  std::vector<cplx> lambda(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (std::abs(den[static_cast<std::size_t>(i)]) < 1e-300)
      throw DegenerateError("e1-ratio: zero denominator entry");
    lambda[static_cast<std::size_t>(i)] =
        num[static_cast<std::size_t>(i)] / den[static_cast<std::size_t>(i)];
  }
  return lambda;
}

template <class Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> k(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      for (int p = 0; p < b.rows; ++p)
        for (int q = 0; q < b.cols; ++q)
          k.at(i * b.rows + p, j * b.cols + q) = a.at(i, j) * b.at(p, q);
  return k;
}

template DenseMatrix<double> kron(const DenseMatrix<double>&, const DenseMatrix<double>&);
template DenseMatrix<cplx> kron(const DenseMatrix<cplx>&, const DenseMatrix<cplx>&);

} // namespace fastdeblur::oracle
