#include "qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcorr {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    require(static_cast<int>(row.size()) == c, ErrorCode::domain, "ragged matrix literal");
    int j = 0;
    for (const cplx& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::conjugate() const {
  Matrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool Matrix::is_finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::domain, "shape mismatch in +");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::domain, "shape mismatch in -");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx scale) {
  for (cplx& v : data_) v *= scale;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  require(lhs.cols() == rhs.rows(), ErrorCode::domain, "shape mismatch in *");
  Matrix out(lhs.rows(), rhs.cols());
  for (int i = 0; i < lhs.rows(); ++i)
    for (int k = 0; k < lhs.cols(); ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{}) continue;
      for (int j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Matrix operator*(cplx scale, Matrix m) { return m *= scale; }
Matrix operator*(Matrix m, cplx scale) { return m *= scale; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx av = a(i, j);
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
    }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::domain,
          "shape mismatch in max_abs_diff");
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

const Matrix& pauli_x() {
  static const Matrix m = Matrix::from_rows({{0, 1}, {1, 0}});
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = Matrix::from_rows({{0, cplx(0, -1)}, {cplx(0, 1), 0}});
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = Matrix::from_rows({{1, 0}, {0, -1}});
  return m;
}

const Matrix& identity2() {
  static const Matrix m = Matrix::identity(2);
  return m;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

constexpr double kOffTol = 1e-12;
constexpr int kMaxSweeps = 64;

}  // namespace

EigResult hermitian_eig(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::domain, "eigendecomposition needs a square matrix");
  require(m.is_finite(), ErrorCode::domain, "non-finite matrix entry");
  require(is_hermitian(m), ErrorCode::not_hermitian, "matrix is not Hermitian within 1e-10");

  const int n = m.rows();
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  Matrix v = Matrix::identity(n);

  int sweep = 0;
  while (off_diagonal_norm(a) >= kOffTol) {
    require(++sweep <= kMaxSweeps, ErrorCode::no_convergence, "Jacobi sweep limit exceeded");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double h = std::abs(apq);
        if (h == 0.0) continue;
        // Phase rotation turns the (p,q) block real, then a standard real
        // Jacobi rotation annihilates it.
        const cplx phase = apq / h;  // e^{i alpha}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * h);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Plane unitary J: J(p,p)=c, J(p,q)=s, J(q,p)=-s e^{-ia}, J(q,q)=c e^{-ia}.
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        for (int i = 0; i < n; ++i) {  // A <- A J, V <- V J
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * c + aiq * jqp;
          a(i, q) = aip * s + aiq * jqq;
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * c + viq * jqp;
          v(i, q) = vip * s + viq * jqq;
        }
        for (int j = 0; j < n; ++j) {  // A <- J^dag A
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(jqp) * aqj;
          a(q, j) = s * apj + std::conj(jqq) * aqj;
        }
        a(p, q) = std::conj(a(q, p));  // restore exact Hermitian symmetry
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

  EigResult out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) { return hermitian_eig(m).values; }

Matrix psd_sqrt(const Matrix& m) {
  EigResult eig = hermitian_eig(m);
  const int n = m.rows();
  std::vector<double> root(n);
  for (int k = 0; k < n; ++k) {
    double lam = eig.values[k];
    require(lam >= -1e-9, ErrorCode::not_psd, "negative eigenvalue beyond clamp tolerance");
    root[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += eig.vectors(i, k) * root[k] * std::conj(eig.vectors(j, k));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace qcorr
