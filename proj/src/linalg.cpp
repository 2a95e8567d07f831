#include "nres/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace nres {

cxd inner_product(const CVector& x, const CVector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("inner_product: dimensions " + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
  cxd s(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double norm_sq(const CVector& x) {
  double s = 0.0;
  for (const cxd& v : x) s += std::norm(v);
  return s;
}

double norm(const CVector& x) { return std::sqrt(norm_sq(x)); }

CVector operator+(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector add: dimension mismatch");
  CVector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

CVector operator-(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector sub: dimension mismatch");
  CVector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

CVector operator*(cxd s, const CVector& x) {
  CVector r(x);
  for (cxd& v : r) v *= s;
  return r;
}

CVector operator*(double s, const CVector& x) { return cxd(s, 0.0) * x; }

CVector& operator+=(CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector add: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

CVector& operator-=(CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector sub: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

CMatrix::CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, cxd(0.0, 0.0)) {
  if (n <= 0) throw DimensionMismatch("matrix dimension must be positive");
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(const CVector& d) {
  CMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::hermitian_part() const {
  CMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return m;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cxd& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::operator_norm() const {
  if (n_ == 1) return std::abs(a_[0]);
  const CMatrix gram = adjoint() * (*this);
  const double scale = std::max(1.0, gram.max_abs());
  const double top = hermitian_max_eigenvalue(gram, 1e-14 * scale);
  return std::sqrt(std::max(0.0, top));
}

CVector operator*(const CMatrix& a, const CVector& x) {
  if (static_cast<int>(x.size()) != a.dim()) throw DimensionMismatch("matvec: dimension mismatch");
  CVector r(x.size(), cxd(0.0, 0.0));
  for (int i = 0; i < a.dim(); ++i) {
    cxd s(0.0, 0.0);
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matmul: dimension mismatch");
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd(0.0, 0.0)) continue;
      for (int j = 0; j < a.dim(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix operator*(cxd s, const CMatrix& a) {
  CMatrix r(a);
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) r(i, j) *= s;
  return r;
}

CMatrix operator*(double s, const CMatrix& a) { return cxd(s, 0.0) * a; }

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix add: dimension mismatch");
  CMatrix r(a);
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) r(i, j) += b(i, j);
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix sub: dimension mismatch");
  CMatrix r(a);
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) r(i, j) -= b(i, j);
  return r;
}

CVector lu_solve(CMatrix a, CVector b) {
  const int n = a.dim();
  if (static_cast<int>(b.size()) != n) throw DimensionMismatch("lu_solve: dimension mismatch");
  const double scale = std::max(1.0, a.max_abs());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= 1e-14 * scale) throw SingularMatrix("lu_solve: pivot below threshold");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const cxd m = a(i, k) / a(k, k);
      a(i, k) = m;
      if (m == cxd(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
      b[i] -= m * b[k];
    }
  }
  CVector x(b.size());
  for (int k = n - 1; k >= 0; --k) {
    cxd s = b[k];
    for (int j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

namespace {

double off_diagonal_norm(const CMatrix& h) {
  double s = 0.0;
  for (int p = 0; p < h.dim(); ++p)
    for (int q = p + 1; q < h.dim(); ++q) s += std::norm(h(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(CMatrix h, double off_tol) {
  const int n = h.dim();
  if (n == 1) return {h(0, 0).real()};
  // The input is Hermitian up to rounding; symmetrize so the updates stay consistent.
  h = h.hermitian_part();
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(h) <= off_tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(h(p, q));
        if (g <= off_tol / (16.0 * n * n)) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double delta = app - aqq;
        // Root of g*t^2 - delta*t - g = 0 with the smaller magnitude.
        double t;
        if (delta == 0.0) {
          t = 1.0;
        } else {
          const double tau = delta / (2.0 * g);
          t = -((tau >= 0.0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cxd phase = h(p, q) / g;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cxd hkp = h(k, p);
          const cxd hkq = h(k, q);
          h(k, p) = c * hkp - s * std::conj(phase) * hkq;
          h(k, q) = s * phase * hkp + c * hkq;
          h(p, k) = std::conj(h(k, p));
          h(q, k) = std::conj(h(k, q));
        }
        h(p, p) = app - t * g;
        h(q, q) = aqq + t * g;
        h(p, q) = 0.0;
        h(q, p) = 0.0;
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm(h) > off_tol)
    throw NumericalError("hermitian_eigenvalues: Jacobi sweeps did not converge");
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = h(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double hermitian_max_eigenvalue(const CMatrix& h, double off_tol) {
  return hermitian_eigenvalues(h, off_tol).back();
}

}  // namespace nres
