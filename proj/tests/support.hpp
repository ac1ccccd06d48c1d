#pragma once

// Seeded generators and hand-written oracles shared by the unit tests and the
// acceptance binary. Oracles here deliberately avoid the library's own
// algebra (kron, compose, tensor_product) so they can catch drift in it.

#include "circact/category.hpp"
#include "circact/coaction.hpp"
#include "circact/derivation.hpp"
#include "circact/solver.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace testing {

using namespace circact;

using Gen = std::mt19937_64;

inline Complex gaussian(Gen& g) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(g);
  return {re, nd(g)};
}

inline Complex unit_phase(Gen& g) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(g));
}

inline std::size_t pick(Gen& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline ComplexMatrix gaussian_matrix(std::size_t r, std::size_t c, Gen& g) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = gaussian(g);
    }
  }
  return m;
}

inline ComplexMatrix hermitian_matrix(std::size_t n, Gen& g) {
  const auto m = gaussian_matrix(n, n, g);
  return 0.5 * (m + m.adjoint());
}

inline ConstraintPoint gaussian_point(std::size_t n, Gen& g) {
  auto a = gaussian_matrix(n, n, g);
  auto b = gaussian_matrix(n, n, g);
  auto c = gaussian_matrix(n, n, g);
  return {a, b, c, gaussian_matrix(n, n, g)};
}

/// A random valid (classical, hence commutative) object of dimension n.
inline LinearObject valid_object(std::size_t n, Gen& g) {
  return sample_classical(n, g()).object();
}

/// Naive product with explicit index loops.
inline ComplexMatrix naive_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < x.cols(); ++k) {
        acc += x(i, k) * y(k, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

/// Kronecker product from its index formula (X (x) Y)[(i,k),(j,l)] = X[i,j] Y[k,l].
inline ComplexMatrix naive_kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < y.rows(); ++k) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t l = 0; l < y.cols(); ++l) {
          out(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
        }
      }
    }
  }
  return out;
}

inline double relative(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x - y).frobenius_norm() / std::max(1.0, y.frobenius_norm());
}

/// Symbolic oracle for the tensor product: write beta(Z) as a list of
/// (monomial, matrix) terms, substitute alpha into the function factor of
/// every term and collect the Z and Zbar coefficients.
struct SymbolicTerm {
  bool is_z; // Z or Zbar
  ComplexMatrix m;
};

inline std::vector<SymbolicTerm> symbolic_alpha(const LinearObject& x, bool of_z) {
  if (of_z) {
    return {{true, x.a()}, {false, x.b()}};
  }
  return {{false, x.a().adjoint()}, {true, x.b().adjoint()}};
}

inline std::pair<ComplexMatrix, ComplexMatrix> symbolic_tensor(const LinearObject& x,
                                                               const LinearObject& y) {
  const std::size_t n = x.n() * y.n();
  ComplexMatrix za(n, n), zb(n, n);
  for (const auto& outer : symbolic_alpha(y, true)) {
    for (const auto& inner : symbolic_alpha(x, outer.is_z)) {
      (inner.is_z ? za : zb) += naive_kron(inner.m, outer.m);
    }
  }
  return {za, zb};
}

/// Pair with a perturbation of size `noise` added to all four matrices.
inline ConjugatePair perturbed(const ConjugatePair& p, double noise, Gen& g) {
  const std::size_t n = p.n();
  auto bump = [&](const ComplexMatrix& m) { return m + noise * gaussian_matrix(n, n, g); };
  return {LinearObject(bump(p.a()), bump(p.b())), bump(p.c()), bump(p.d())};
}

inline double unit(Complex z) { return std::abs(std::abs(z) - 1.0); }

} // namespace testing
