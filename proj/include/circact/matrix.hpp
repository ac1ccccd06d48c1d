#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace circact {

using Complex = std::complex<double>;

class ComplexVector;

/// Dense complex matrix, row-major. Entry (i, j) lives at flat index
/// i * cols + j. Every module shares this layout, including the tensor index
/// convention of kron().
class ComplexMatrix {
public:
  /// Zero matrix. Both dimensions must be positive.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::initializer_list<Complex> d);
  static ComplexMatrix scalar(Complex c) { return {1, 1, {c}}; }
  /// Column matrix holding `v`.
  static ComplexMatrix column(const ComplexVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  double frobenius_norm() const;
  /// Upper bound on the spectral norm (the Frobenius norm).
  double operator_norm_bound() const { return frobenius_norm(); }
  Complex trace() const;

  /// Exact zero test (no tolerance).
  bool is_zero() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);

/// Column vector of complex numbers.
class ComplexVector {
public:
  explicit ComplexVector(std::size_t dim);
  explicit ComplexVector(std::vector<Complex> data);
  ComplexVector(std::initializer_list<Complex> data)
      : ComplexVector(std::vector<Complex>(data)) {}

  std::size_t dim() const noexcept { return data_.size(); }
  Complex operator[](std::size_t i) const { return data_[i]; }
  Complex& operator[](std::size_t i) { return data_[i]; }
  std::span<const Complex> data() const noexcept { return data_; }

  double norm() const;
  ComplexVector conj() const;

  ComplexVector& operator+=(const ComplexVector& o);
  ComplexVector& operator-=(const ComplexVector& o);
  ComplexVector& operator*=(Complex s);

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

private:
  std::vector<Complex> data_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(Complex s, ComplexVector a);
/// Hermitian inner product, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);

/// Frobenius inner product tr(a* b).
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product. Index (i, k) of the product space maps to flat index
/// i * y.rows() + k, so block (i, j) of the result is x(i, j) * y.
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix block_diag(const ComplexMatrix& x, const ComplexMatrix& y);

/// Reshape an m*k vector into an m x k matrix using the flat-index convention.
ComplexMatrix reshape(const ComplexVector& v, std::size_t rows, std::size_t cols);
ComplexVector flatten(const ComplexMatrix& m);

/// Columns [first, first + count) of m.
ComplexMatrix columns(const ComplexMatrix& m, std::size_t first, std::size_t count);
ComplexVector column(const ComplexMatrix& m, std::size_t j);
/// Matrix whose columns are `cols` (all of equal dimension, at least one).
ComplexMatrix from_columns(std::span<const ComplexVector> cols);

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);

struct HermitianEigen {
  std::vector<double> values; // ascending
  ComplexMatrix vectors;      // unitary, column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Throws NotHermitian when ||H - H*||_F > 1e-12 max(1, ||H||_F) and
/// NoConvergence after 100 n sweeps.
HermitianEigen hermitian_eig(const ComplexMatrix& h);

/// Orthonormal basis of the numerical nullspace
/// { v : ||M v|| <= tol ||M||_F ||v|| }, found by Householder QR with column
/// pivoting of M*. Empty when the nullspace is trivial.
std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& m, double tol);

/// Numerical rank under the same tolerance policy as nullspace_basis.
std::size_t numerical_rank(const ComplexMatrix& m, double tol);

} // namespace circact
