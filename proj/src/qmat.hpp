#pragma once

// Small dense complex-matrix kernel: arithmetic, Kronecker products and the
// Hermitian eigendecompositions the rest of the library is built on.

#include <complex>
#include <initializer_list>
#include <vector>

#include "error.hpp"

namespace qcorr {

using cplx = std::complex<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n);
  // Row-major entries, e.g. Matrix::from_rows({{1, 0}, {0, -1}}).
  static Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  Matrix adjoint() const;
  Matrix conjugate() const;
  Matrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cplx scale);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cplx scale, Matrix m);
Matrix operator*(Matrix m, cplx scale);

Matrix kron(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& m, double tol = 1e-10);

const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& identity2();

struct EigResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // value k's eigenvector in column k
};

// Cyclic complex Jacobi. Throws NotHermitian (tolerance 1e-10) and
// NoConvergence (off-diagonal Frobenius norm must fall below 1e-12).
EigResult hermitian_eig(const Matrix& m);
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Hermitian square root of a PSD matrix. Eigenvalues in [-1e-9, 0) are
// clamped to zero, anything below that is NotPSD.
Matrix psd_sqrt(const Matrix& m);

}  // namespace qcorr
