#include "circact/laurent.hpp"

#include "circact/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace circact {

ScalarPoly ScalarPoly::constant(Complex c) { return monomial(0, 0, c); }

ScalarPoly ScalarPoly::monomial(int z_power, int zbar_power, Complex c) {
  if (z_power < 0 || zbar_power < 0) {
    throw InvalidArgument("ScalarPoly: monomial powers must be non-negative");
  }
  ScalarPoly p;
  p.add({z_power, zbar_power}, c);
  return p;
}

void ScalarPoly::add(Monomial m, Complex c) {
  if (c == Complex{}) {
    return;
  }
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) {
      terms_.erase(it);
    }
  }
}

ScalarPoly ScalarPoly::conj() const {
  ScalarPoly r;
  for (const auto& [m, c] : terms_) {
    r.add({m.second, m.first}, std::conj(c));
  }
  return r;
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    add(m, c);
  }
  return *this;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    }
  }
  return r;
}

ScalarPoly operator*(Complex s, const ScalarPoly& a) {
  ScalarPoly r;
  for (const auto& [m, c] : a.terms_) {
    r.add(m, s * c);
  }
  return r;
}

// ---------------------------------------------------------------------------

LaurentMatrixPoly::LaurentMatrixPoly(std::size_t n) : n_(n) {
  if (n == 0) {
    throw InvalidArgument("LaurentMatrixPoly: dimension must be positive");
  }
}

LaurentMatrixPoly::LaurentMatrixPoly(int degree, ComplexMatrix m) : n_(m.rows()) {
  if (!m.is_square()) {
    throw DimensionMismatch("LaurentMatrixPoly: coefficients must be square");
  }
  add_term(degree, m);
}

ComplexMatrix LaurentMatrixPoly::coefficient(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? ComplexMatrix::zero(n_, n_) : it->second;
}

void LaurentMatrixPoly::add_term(int degree, const ComplexMatrix& m) {
  if (m.rows() != n_ || m.cols() != n_) {
    throw DimensionMismatch("LaurentMatrixPoly: coefficient of wrong size");
  }
  if (std::abs(degree) > kMaxLaurentDegree) {
    throw SupportOverflow("LaurentMatrixPoly: degree " + std::to_string(degree) +
                          " exceeds the support bound " + std::to_string(kMaxLaurentDegree));
  }
  auto it = coeffs_.find(degree);
  if (it == coeffs_.end()) {
    if (!m.is_zero()) {
      coeffs_.emplace(degree, m);
    }
    return;
  }
  it->second += m;
  if (it->second.is_zero()) {
    coeffs_.erase(it);
  }
}

LaurentMatrixPoly LaurentMatrixPoly::adjoint() const {
  LaurentMatrixPoly r(n_);
  for (const auto& [k, m] : coeffs_) {
    r.add_term(-k, m.adjoint());
  }
  return r;
}

std::map<int, ComplexVector> LaurentMatrixPoly::apply(const ComplexVector& v) const {
  std::map<int, ComplexVector> out;
  for (const auto& [k, m] : coeffs_) {
    out.emplace(k, m * v);
  }
  return out;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator+=(const LaurentMatrixPoly& o) {
  if (o.n_ != n_) {
    throw DimensionMismatch("LaurentMatrixPoly: dimension mismatch in sum");
  }
  for (const auto& [k, m] : o.coeffs_) {
    add_term(k, m);
  }
  return *this;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, m] : coeffs_) {
    m *= s;
  }
  return *this;
}

LaurentMatrixPoly operator-(LaurentMatrixPoly a, const LaurentMatrixPoly& b) {
  if (a.n_ != b.n_) {
    throw DimensionMismatch("LaurentMatrixPoly: dimension mismatch in difference");
  }
  for (const auto& [k, m] : b.coeffs_) {
    a.add_term(k, -m);
  }
  return a;
}

LaurentMatrixPoly operator*(const LaurentMatrixPoly& a, const LaurentMatrixPoly& b) {
  if (a.n_ != b.n_) {
    throw DimensionMismatch("LaurentMatrixPoly: dimension mismatch in product");
  }
  LaurentMatrixPoly r(a.n_);
  for (const auto& [ka, ma] : a.coeffs_) {
    for (const auto& [kb, mb] : b.coeffs_) {
      r.add_term(ka + kb, ma * mb);
    }
  }
  return r;
}

double LaurentMatrixPoly::max_distance(const LaurentMatrixPoly& other) const {
  if (other.n_ != n_) {
    throw DimensionMismatch("LaurentMatrixPoly: dimension mismatch in comparison");
  }
  double worst = 0.0;
  for (const auto& [k, m] : (*this - other).coeffs_) {
    worst = std::max(worst, m.frobenius_norm());
  }
  return worst;
}

} // namespace circact
