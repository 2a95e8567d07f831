#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nres {

using cxd = std::complex<double>;

/// Point of the complex Euclidean space C^n.
using CVector = std::vector<cxd>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct DomainViolation : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct InvalidGenerator : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

/// Hermitian pairing sum x_i * conj(y_i). Throws DimensionMismatch.
cxd inner_product(const CVector& x, const CVector& y);

double norm_sq(const CVector& x);
double norm(const CVector& x);

CVector operator+(const CVector& x, const CVector& y);
CVector operator-(const CVector& x, const CVector& y);
CVector operator*(cxd s, const CVector& x);
CVector operator*(double s, const CVector& x);
CVector& operator+=(CVector& x, const CVector& y);
CVector& operator-=(CVector& x, const CVector& y);

/// Dense square complex matrix, row major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n);

  static CMatrix identity(int n);
  static CMatrix diagonal(const CVector& d);

  int dim() const { return n_; }

  cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  cxd operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  CMatrix adjoint() const;
  CMatrix hermitian_part() const;  // (M + M^H)/2

  /// Largest singular value.
  double operator_norm() const;
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<cxd> a_;
};

CVector operator*(const CMatrix& a, const CVector& x);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cxd s, const CMatrix& a);
CMatrix operator*(double s, const CMatrix& a);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

/// Solves a*y = b by partial-pivot LU. Throws SingularMatrix on a degenerate pivot.
CVector lu_solve(CMatrix a, CVector b);

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
/// Sweeps run until the off-diagonal Frobenius norm drops below off_tol.
std::vector<double> hermitian_eigenvalues(CMatrix h, double off_tol = 1e-12);

double hermitian_max_eigenvalue(const CMatrix& h, double off_tol = 1e-12);

}  // namespace nres
