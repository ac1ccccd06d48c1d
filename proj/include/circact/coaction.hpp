#pragma once

#include "circact/laurent.hpp"
#include "circact/matrix.hpp"

#include <string>
#include <vector>

namespace circact {

inline constexpr double kDefaultTolerance = 1e-9;

/// Linear coaction alpha(Z) = Z (x) A + Zbar (x) B on C(S^1), acting on C^n.
/// Only the matrix pair is stored; the function factor is implicit.
class LinearObject {
public:
  LinearObject(ComplexMatrix a, ComplexMatrix b);

  std::size_t n() const noexcept { return a_.rows(); }
  const ComplexMatrix& a() const noexcept { return a_; }
  const ComplexMatrix& b() const noexcept { return b_; }

  /// Z -> lambda Z.
  static LinearObject rotation(Complex lambda);
  /// Z -> b Zbar.
  static LinearObject reflection(Complex b);
  /// The unit object, rotation(1).
  static LinearObject trivial() { return rotation(1.0); }

  friend bool operator==(const LinearObject&, const LinearObject&) = default;

private:
  ComplexMatrix a_;
  ComplexMatrix b_;
};

/// Kac duality vector sum_i e_i (x) e_i of dimension n^2 (entry i*n+i is 1).
ComplexVector kac_vector(std::size_t n);
bool is_kac_vector(const ComplexVector& v, std::size_t n);

/// A linear object together with candidate dual data
/// alpha_hat(Z) = Z (x) C + Zbar (x) D and duality vectors s, t.
class ConjugatePair {
public:
  /// s and t default to the Kac vectors.
  ConjugatePair(LinearObject object, ComplexMatrix c, ComplexMatrix d);
  ConjugatePair(LinearObject object, ComplexMatrix c, ComplexMatrix d, ComplexVector s,
                ComplexVector t);

  std::size_t n() const noexcept { return object_.n(); }
  const LinearObject& object() const noexcept { return object_; }
  const ComplexMatrix& a() const noexcept { return object_.a(); }
  const ComplexMatrix& b() const noexcept { return object_.b(); }
  const ComplexMatrix& c() const noexcept { return c_; }
  const ComplexMatrix& d() const noexcept { return d_; }
  const ComplexVector& s() const noexcept { return s_; }
  const ComplexVector& t() const noexcept { return t_; }

  /// The coaction alpha_hat viewed as a linear object (C, D).
  LinearObject dual_object() const { return {c_, d_}; }
  bool has_kac_vectors() const;

  friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;

private:
  LinearObject object_;
  ComplexMatrix c_;
  ComplexMatrix d_;
  ComplexVector s_;
  ComplexVector t_;
};

struct CheckResult {
  std::string name;
  double residual;
  double threshold;
  bool pass;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Named residuals with pass/fail verdicts against per-check thresholds.
class CertificateReport {
public:
  explicit CertificateReport(double tolerance) : tolerance_(tolerance) {}

  /// Appends a check with threshold = tolerance().
  void add(std::string name, double residual);
  void add(std::string name, double residual, double threshold);
  /// Appends every check of `other` (names prefixed with `prefix`).
  void merge(const CertificateReport& other, const std::string& prefix = "");

  double tolerance() const noexcept { return tolerance_; }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  bool overall_pass() const;
  double max_residual() const;
  /// Residual of the check called `name`; throws InvalidArgument if absent.
  double residual(const std::string& name) const;

  friend bool operator==(const CertificateReport&, const CertificateReport&) = default;

private:
  double tolerance_;
  std::vector<CheckResult> checks_;
};

/// Named constraint matrix that vanishes on valid input.
struct NamedMatrix {
  std::string name;
  ComplexMatrix value;
};

/// The six *-homomorphism constraints of the pair (X, Y) read as
/// alpha(Z) = Z (x) X + Zbar (x) Y. Names use the given letters for X and Y.
std::vector<NamedMatrix> homomorphism_constraints(const ComplexMatrix& x, const ComplexMatrix& y,
                                                  char x_name = 'A', char y_name = 'B');
/// The eight compact duality constraints between (A, B) and (C, D), Kac s, t.
std::vector<NamedMatrix> duality_constraints(const ComplexMatrix& a, const ComplexMatrix& b,
                                             const ComplexMatrix& c, const ComplexMatrix& d);

/// Image of p under the unital *-homomorphic extension of
/// Z -> Z (x) A + Zbar (x) B, Zbar -> Zbar (x) A* + Z (x) B*.
/// Monomials Z^a Zbar^b evaluate as alpha(Z)^a alpha(Zbar)^b.
LaurentMatrixPoly apply_coaction(const LinearObject& obj, const ScalarPoly& p);
/// alpha(Z) and alpha(Zbar) as Laurent polynomials.
LaurentMatrixPoly coaction_of_z(const LinearObject& obj);
LaurentMatrixPoly coaction_of_zbar(const LinearObject& obj);

/// (outer (x) id) applied to `inner`: sum_k outer(Z^k) (x) M_k, where Z^k for
/// negative k means Zbar^|k|. Result acts on C^{outer.n} (x) C^{inner.dim}.
LaurentMatrixPoly compose(const LinearObject& outer, const LaurentMatrixPoly& inner);

CertificateReport check_homomorphism(const LinearObject& obj, double tol = kDefaultTolerance);

/// Compact duality equations plus the homomorphism equations of (C, D).
/// Assumes Kac s, t (the compact form is derived for them).
CertificateReport check_conjugate_matrix(const ConjugatePair& pair,
                                         double tol = kDefaultTolerance);

/// Evaluates the four snake conditions literally on the n^2-dimensional tensor
/// space, using pair.s and pair.t, and the homomorphism equations of alpha_hat
/// through Laurent polynomial products. Works for arbitrary s, t.
CertificateReport check_conjugate_raw(const ConjugatePair& pair, double tol = kDefaultTolerance);

} // namespace circact
