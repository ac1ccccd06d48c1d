#include "circact/matrix.hpp"

#include "circact/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace circact {

namespace {

void require_finite(std::span<const Complex> data) {
  for (const auto& z : data) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("matrix entries must be finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

} // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgument("matrix dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgument("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw DimensionMismatch("ragged matrix literal");
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return {r, c, std::move(data)};
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(i, i) = d[i];
  }
  require_finite(m.data());
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> d) {
  return diagonal(std::span<const Complex>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::column(const ComplexVector& v) {
  return {v.dim(), 1, std::vector<Complex>(v.data().begin(), v.data().end())};
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      r(j, i) = std::conj((*this)(i, j));
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      r(j, i) = (*this)(i, j);
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r = *this;
  for (auto& z : r.data_) {
    z = std::conj(z);
  }
  return r;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
    t += (*this)(i, i);
  }
  return t;
}

bool ComplexMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Complex z) { return z == Complex{}; });
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] += o.data_[k];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] -= o.data_[k];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) {
    z *= s;
  }
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("multiply: inner dimensions " + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()));
  }
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        r(i, j) += aik * b(k, j);
      }
    }
  }
  return r;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.dim()) {
    throw DimensionMismatch("matrix-vector: " + std::to_string(a.cols()) + " vs " +
                            std::to_string(v.dim()));
  }
  ComplexVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      s += a(i, j) * v[j];
    }
    r[i] = s;
  }
  return r;
}

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(std::size_t dim) : data_(dim) {
  if (dim == 0) {
    throw InvalidArgument("vector dimension must be positive");
  }
}

ComplexVector::ComplexVector(std::vector<Complex> data) : data_(std::move(data)) {
  if (data_.empty()) {
    throw InvalidArgument("vector dimension must be positive");
  }
  require_finite(data_);
}

double ComplexVector::norm() const {
  double s = 0.0;
  for (const auto& z : data_) {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

ComplexVector ComplexVector::conj() const {
  ComplexVector r = *this;
  for (auto& z : r.data_) {
    z = std::conj(z);
  }
  return r;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& o) {
  if (dim() != o.dim()) {
    throw DimensionMismatch("vector add");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] += o.data_[k];
  }
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& o) {
  if (dim() != o.dim()) {
    throw DimensionMismatch("vector subtract");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] -= o.data_[k];
  }
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (auto& z : data_) {
    z *= s;
  }
  return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
ComplexVector operator*(Complex s, ComplexVector a) { return a *= s; }

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("inner product");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    s += std::conj(a[k]) * b[k];
  }
  return s;
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    s += std::conj(a.data()[k]) * b.data()[k];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Structural helpers

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix r(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const Complex xij = x(i, j);
      if (xij == Complex{}) {
        continue;
      }
      for (std::size_t k = 0; k < y.rows(); ++k) {
        for (std::size_t l = 0; l < y.cols(); ++l) {
          r(i * y.rows() + k, j * y.cols() + l) = xij * y(k, l);
        }
      }
    }
  }
  return r;
}

ComplexMatrix block_diag(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix r(x.rows() + y.rows(), x.cols() + y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      r(i, j) = x(i, j);
    }
  }
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      r(x.rows() + i, x.cols() + j) = y(i, j);
    }
  }
  return r;
}

ComplexMatrix reshape(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  if (v.dim() != rows * cols) {
    throw DimensionMismatch("reshape: vector of dimension " + std::to_string(v.dim()) +
                            " into " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  return {rows, cols, std::vector<Complex>(v.data().begin(), v.data().end())};
}

ComplexVector flatten(const ComplexMatrix& m) {
  return ComplexVector(std::vector<Complex>(m.data().begin(), m.data().end()));
}

ComplexMatrix columns(const ComplexMatrix& m, std::size_t first, std::size_t count) {
  if (first + count > m.cols()) {
    throw DimensionMismatch("column range out of bounds");
  }
  ComplexMatrix r(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      r(i, j) = m(i, first + j);
    }
  }
  return r;
}

ComplexVector column(const ComplexMatrix& m, std::size_t j) {
  ComplexVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    v[i] = m(i, j);
  }
  return v;
}

ComplexMatrix from_columns(std::span<const ComplexVector> cols) {
  if (cols.empty()) {
    throw InvalidArgument("from_columns: need at least one column");
  }
  ComplexMatrix r(cols.front().dim(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].dim() != r.rows()) {
      throw DimensionMismatch("from_columns: ragged columns");
    }
    for (std::size_t i = 0; i < r.rows(); ++i) {
      r(i, j) = cols[j][i];
    }
  }
  return r;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x * y - y * x;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic complex Jacobi.

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) {
    throw NotHermitian("hermitian_eig: matrix is not square");
  }
  const std::size_t n = h.rows();
  const double scale = h.frobenius_norm();
  if ((h - h.adjoint()).frobenius_norm() > 1e-12 * std::max(1.0, scale)) {
    throw NotHermitian("hermitian_eig: ||H - H*||_F exceeds 1e-12 max(1, ||H||_F)");
  }

  ComplexMatrix a = h;
  ComplexMatrix w = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
  }

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) {
          s += std::norm(a(p, q));
        }
      }
    }
    return std::sqrt(s);
  };

  const std::size_t max_sweeps = 100 * n;
  const double target = 1e-14 * scale;
  std::size_t sweep = 0;
  while (off_diagonal() > target) {
    if (++sweep > max_sweeps) {
      throw NoConvergence("hermitian_eig: exceeded " + std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex c = a(p, q);
        const double mag = std::abs(c);
        if (mag == 0.0) {
          continue;
        }
        const Complex phase = c / mag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        // J = diag(1, conj(phase)) * [[cs, sn], [-sn, cs]] on the (p, q) plane.
        const Complex jpp = cs;
        const Complex jpq = sn;
        const Complex jqp = -sn * std::conj(phase);
        const Complex jqq = cs * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex hp = a(k, p);
          const Complex hq = a(k, q);
          a(k, p) = hp * jpp + hq * jqp;
          a(k, q) = hp * jpq + hq * jqq;
          const Complex wp = w(k, p);
          const Complex wq = w(k, q);
          w(k, p) = wp * jpp + wq * jqp;
          w(k, q) = wp * jpq + wq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex rp = a(p, k);
          const Complex rq = a(q, k);
          a(p, k) = std::conj(jpp) * rp + std::conj(jqp) * rq;
          a(q, k) = std::conj(jpq) * rp + std::conj(jqq) * rq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) {
      out.vectors(i, k) = w(i, order[k]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nullspace via rank-revealing QR of M*.

namespace {

struct PivotedQr {
  ComplexMatrix q; // n x n unitary
  std::size_t rank;
};

// Householder QR with column pivoting of `r` (n x m), stopping once the largest
// remaining column norm drops to `cutoff`.
PivotedQr pivoted_qr(ComplexMatrix r, double cutoff) {
  const std::size_t n = r.rows();
  const std::size_t m = r.cols();
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(n, m); ++k) {
    std::size_t pivot = k;
    double best = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) {
        s += std::norm(r(i, j));
      }
      if (s > best) {
        best = s;
        pivot = j;
      }
    }
    if (std::sqrt(best) <= cutoff) {
      break;
    }
    if (pivot != k) {
      for (std::size_t i = 0; i < n; ++i) {
        std::swap(r(i, k), r(i, pivot));
      }
    }
    const double xnorm = std::sqrt(best);
    const Complex x0 = r(k, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    std::vector<Complex> v(n - k);
    for (std::size_t i = k; i < n; ++i) {
      v[i - k] = r(i, k);
    }
    v[0] -= alpha;
    double vnorm = 0.0;
    for (const auto& z : v) {
      vnorm += std::norm(z);
    }
    vnorm = std::sqrt(vnorm);
    ++rank;
    if (vnorm == 0.0) {
      continue;
    }
    for (auto& z : v) {
      z /= vnorm;
    }
    // R <- (I - 2 v v*) R on rows k.., Q <- Q (I - 2 v v*) on columns k..
    for (std::size_t j = k; j < m; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k; i < n; ++i) {
        s += std::conj(v[i - k]) * r(i, j);
      }
      for (std::size_t i = k; i < n; ++i) {
        r(i, j) -= 2.0 * v[i - k] * s;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t l = k; l < n; ++l) {
        s += q(i, l) * v[l - k];
      }
      for (std::size_t l = k; l < n; ++l) {
        q(i, l) -= 2.0 * s * std::conj(v[l - k]);
      }
    }
  }
  return {std::move(q), rank};
}

} // namespace

std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& m, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("nullspace_basis: tol must be positive");
  }
  const double cutoff = tol * m.frobenius_norm();
  const auto qr = pivoted_qr(m.adjoint(), cutoff);
  std::vector<ComplexVector> basis;
  for (std::size_t j = qr.rank; j < m.cols(); ++j) {
    basis.push_back(column(qr.q, j));
  }
  return basis;
}

std::size_t numerical_rank(const ComplexMatrix& m, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("numerical_rank: tol must be positive");
  }
  return pivoted_qr(m.adjoint(), tol * m.frobenius_norm()).rank;
}

} // namespace circact
