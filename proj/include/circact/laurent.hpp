#pragma once

#include "circact/matrix.hpp"

#include <map>
#include <utility>

namespace circact {

/// Largest |degree| a LaurentMatrixPoly may carry.
inline constexpr int kMaxLaurentDegree = 64;

/// Polynomial in the commuting generators Z and Zbar of C(S^1), kept as
/// monomials Z^a Zbar^b (a, b >= 0). The relation Z Zbar = 1 is deliberately
/// not applied, so apply_coaction(obj, Z*Zbar) really evaluates
/// alpha(Z) alpha(Zbar).
class ScalarPoly {
public:
  using Monomial = std::pair<int, int>; // (power of Z, power of Zbar)

  ScalarPoly() = default;
  static ScalarPoly constant(Complex c);
  static ScalarPoly monomial(int z_power, int zbar_power, Complex c = 1.0);
  static ScalarPoly z() { return monomial(1, 0); }
  static ScalarPoly zbar() { return monomial(0, 1); }

  const std::map<Monomial, Complex>& terms() const noexcept { return terms_; }

  /// Complex conjugate: Z^a Zbar^b -> Z^b Zbar^a, coefficients conjugated.
  ScalarPoly conj() const;

  ScalarPoly& operator+=(const ScalarPoly& o);
  friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  friend ScalarPoly operator*(Complex s, const ScalarPoly& a);

private:
  void add(Monomial m, Complex c);
  std::map<Monomial, Complex> terms_;
};

/// Element sum_k Z^k (x) M_k of C(S^1) (x) M_n with finitely many nonzero M_k.
/// Degree -1 encodes Zbar. Zero coefficients are never stored.
class LaurentMatrixPoly {
public:
  explicit LaurentMatrixPoly(std::size_t n);
  /// Single term Z^degree (x) m.
  LaurentMatrixPoly(int degree, ComplexMatrix m);

  static LaurentMatrixPoly identity(std::size_t n) { return {0, ComplexMatrix::identity(n)}; }

  std::size_t dim() const noexcept { return n_; }
  const std::map<int, ComplexMatrix>& coefficients() const noexcept { return coeffs_; }
  /// Coefficient of Z^degree (zero matrix when absent).
  ComplexMatrix coefficient(int degree) const;

  void add_term(int degree, const ComplexMatrix& m);

  /// Involution: degree k -> -k, matrix -> adjoint.
  LaurentMatrixPoly adjoint() const;
  /// Apply every coefficient to v: sum_k Z^k (x) (M_k v), as a map degree -> vector.
  std::map<int, ComplexVector> apply(const ComplexVector& v) const;

  LaurentMatrixPoly& operator+=(const LaurentMatrixPoly& o);
  LaurentMatrixPoly& operator*=(Complex s);
  friend LaurentMatrixPoly operator+(LaurentMatrixPoly a, const LaurentMatrixPoly& b) {
    return a += b;
  }
  friend LaurentMatrixPoly operator-(LaurentMatrixPoly a, const LaurentMatrixPoly& b);
  /// Product in C(S^1) (x) M_n: convolution over degrees.
  friend LaurentMatrixPoly operator*(const LaurentMatrixPoly& a, const LaurentMatrixPoly& b);

  /// Largest Frobenius norm of (this - other) over all degrees.
  double max_distance(const LaurentMatrixPoly& other) const;

private:
  std::size_t n_;
  std::map<int, ComplexMatrix> coeffs_;
};

} // namespace circact
