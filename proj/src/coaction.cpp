#include "circact/coaction.hpp"

#include "circact/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace circact {

namespace {

void require_square_pair(const ComplexMatrix& x, const ComplexMatrix& y, const char* what) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) {
    throw DimensionMismatch(std::string(what) + ": matrices must be square of equal size");
  }
}

LaurentMatrixPoly power(const LaurentMatrixPoly& base, int k) {
  LaurentMatrixPoly r = LaurentMatrixPoly::identity(base.dim());
  for (int i = 0; i < k; ++i) {
    r = r * base;
  }
  return r;
}

} // namespace

LinearObject::LinearObject(ComplexMatrix a, ComplexMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  require_square_pair(a_, b_, "LinearObject");
}

LinearObject LinearObject::rotation(Complex lambda) {
  return {ComplexMatrix::scalar(lambda), ComplexMatrix::scalar(0.0)};
}

LinearObject LinearObject::reflection(Complex b) {
  return {ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(b)};
}

ComplexVector kac_vector(std::size_t n) {
  ComplexVector v(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
  }
  return v;
}

bool is_kac_vector(const ComplexVector& v, std::size_t n) { return v == kac_vector(n); }

ConjugatePair::ConjugatePair(LinearObject object, ComplexMatrix c, ComplexMatrix d)
    : ConjugatePair(object, std::move(c), std::move(d), kac_vector(object.n()),
                    kac_vector(object.n())) {}

ConjugatePair::ConjugatePair(LinearObject object, ComplexMatrix c, ComplexMatrix d,
                             ComplexVector s, ComplexVector t)
    : object_(std::move(object)), c_(std::move(c)), d_(std::move(d)), s_(std::move(s)),
      t_(std::move(t)) {
  require_square_pair(c_, d_, "ConjugatePair");
  const std::size_t n = object_.n();
  if (c_.rows() != n) {
    throw DimensionMismatch("ConjugatePair: dual matrices must match the object dimension");
  }
  if (s_.dim() != n * n || t_.dim() != n * n) {
    throw DimensionMismatch("ConjugatePair: s and t must have dimension n^2 = " +
                            std::to_string(n * n));
  }
}

bool ConjugatePair::has_kac_vectors() const {
  return is_kac_vector(s_, n()) && is_kac_vector(t_, n());
}

// ---------------------------------------------------------------------------

void CertificateReport::add(std::string name, double residual) {
  add(std::move(name), residual, tolerance_);
}

void CertificateReport::add(std::string name, double residual, double threshold) {
  checks_.push_back({std::move(name), residual, threshold, residual <= threshold});
}

void CertificateReport::merge(const CertificateReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    checks_.push_back({prefix + c.name, c.residual, c.threshold, c.pass});
  }
}

bool CertificateReport::overall_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.pass; });
}

double CertificateReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks_) {
    m = std::max(m, c.residual);
  }
  return m;
}

double CertificateReport::residual(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) {
      return c.residual;
    }
  }
  throw InvalidArgument("no check named '" + name + "'");
}

// ---------------------------------------------------------------------------

std::vector<NamedMatrix> homomorphism_constraints(const ComplexMatrix& x, const ComplexMatrix& y,
                                                  char x_name, char y_name) {
  require_square_pair(x, y, "homomorphism_constraints");
  const std::string X(1, x_name);
  const std::string Y(1, y_name);
  const auto id = ComplexMatrix::identity(x.rows());
  const auto xs = x.adjoint();
  const auto ys = y.adjoint();
  return {
      {X + X + "* + " + Y + Y + "* - I", x * xs + y * ys - id},
      {X + Y + "*", x * ys},
      {Y + X + "*", y * xs},
      {X + "*" + X + " + " + Y + "*" + Y + " - I", xs * x + ys * y - id},
      {Y + "*" + X, ys * x},
      {X + "*" + Y, xs * y},
  };
}

std::vector<NamedMatrix> duality_constraints(const ComplexMatrix& a, const ComplexMatrix& b,
                                             const ComplexMatrix& c, const ComplexMatrix& d) {
  require_square_pair(a, b, "duality_constraints");
  require_square_pair(c, d, "duality_constraints");
  if (a.rows() != c.rows()) {
    throw DimensionMismatch("duality_constraints: (A, B) and (C, D) differ in size");
  }
  const auto id = ComplexMatrix::identity(a.rows());
  const auto at = a.transpose();
  const auto bt = b.transpose();
  const auto ct = c.transpose();
  const auto dt = d.transpose();
  return {
      {"CA^t + D*B^t - I", c * at + d.adjoint() * bt - id},
      {"DA^t + C*B^t", d * at + c.adjoint() * bt},
      {"C*conj(A) + Dconj(B) - I", c.adjoint() * a.conj() + d * b.conj() - id},
      {"D*conj(A) + Cconj(B)", d.adjoint() * a.conj() + c * b.conj()},
      {"AC^t + B*D^t - I", a * ct + b.adjoint() * dt - id},
      {"BC^t + A*D^t", b * ct + a.adjoint() * dt},
      {"A*conj(C) + Bconj(D) - I", a.adjoint() * c.conj() + b * d.conj() - id},
      {"B*conj(C) + Aconj(D)", b.adjoint() * c.conj() + a * d.conj()},
  };
}

// ---------------------------------------------------------------------------

LaurentMatrixPoly coaction_of_z(const LinearObject& obj) {
  LaurentMatrixPoly p(obj.n());
  p.add_term(1, obj.a());
  p.add_term(-1, obj.b());
  return p;
}

LaurentMatrixPoly coaction_of_zbar(const LinearObject& obj) {
  LaurentMatrixPoly p(obj.n());
  p.add_term(-1, obj.a().adjoint());
  p.add_term(1, obj.b().adjoint());
  return p;
}

LaurentMatrixPoly apply_coaction(const LinearObject& obj, const ScalarPoly& p) {
  const auto z = coaction_of_z(obj);
  const auto zbar = coaction_of_zbar(obj);
  LaurentMatrixPoly out(obj.n());
  for (const auto& [mono, coeff] : p.terms()) {
    if (mono.first + mono.second > kMaxLaurentDegree) {
      throw SupportOverflow("apply_coaction: monomial degree exceeds the support bound");
    }
    auto term = power(z, mono.first) * power(zbar, mono.second);
    term *= coeff;
    out += term;
  }
  return out;
}

LaurentMatrixPoly compose(const LinearObject& outer, const LaurentMatrixPoly& inner) {
  const auto z = coaction_of_z(outer);
  const auto zbar = coaction_of_zbar(outer);
  LaurentMatrixPoly out(outer.n() * inner.dim());
  for (const auto& [k, m] : inner.coefficients()) {
    const auto image = k >= 0 ? power(z, k) : power(zbar, -k);
    for (const auto& [j, mj] : image.coefficients()) {
      out.add_term(j, kron(mj, m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CertificateReport check_homomorphism(const LinearObject& obj, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("check_homomorphism: tol must be positive");
  }
  CertificateReport report(tol);
  for (const auto& c : homomorphism_constraints(obj.a(), obj.b())) {
    report.add(c.name, c.value.frobenius_norm());
  }
  return report;
}

CertificateReport check_conjugate_matrix(const ConjugatePair& pair, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("check_conjugate_matrix: tol must be positive");
  }
  CertificateReport report(tol);
  for (const auto& c : duality_constraints(pair.a(), pair.b(), pair.c(), pair.d())) {
    report.add(c.name, c.value.frobenius_norm());
  }
  for (const auto& c : homomorphism_constraints(pair.c(), pair.d(), 'C', 'D')) {
    report.add(c.name, c.value.frobenius_norm());
  }
  return report;
}

namespace {

// Residuals of `op` applied to v against Z^expected (x) v: the expected degree
// must reproduce v, every other degree must vanish.
void add_snake_residuals(CertificateReport& report, const std::string& label,
                         const LaurentMatrixPoly& op, const ComplexVector& v, int expected) {
  const auto images = op.apply(v);
  double on_degree = v.norm();
  double off_degree = 0.0;
  for (const auto& [k, w] : images) {
    if (k == expected) {
      on_degree = (w - v).norm();
    } else {
      off_degree += w.norm() * w.norm();
    }
  }
  const char* own = expected > 0 ? "[Z]" : "[Zbar]";
  const char* other = expected > 0 ? "[Zbar]" : "[Z]";
  report.add(label + own, on_degree);
  report.add(label + other, std::sqrt(off_degree));
}

void add_product_residuals(CertificateReport& report, const std::string& label,
                           const LaurentMatrixPoly& product) {
  const std::size_t n = product.dim();
  report.add(label + "[1]", (product.coefficient(0) - ComplexMatrix::identity(n)).frobenius_norm());
  report.add(label + "[Z^2]", product.coefficient(2).frobenius_norm());
  report.add(label + "[Zbar^2]", product.coefficient(-2).frobenius_norm());
  double rest = 0.0;
  for (const auto& [k, m] : product.coefficients()) {
    if (k != 0 && k != 2 && k != -2) {
      rest += m.frobenius_norm() * m.frobenius_norm();
    }
  }
  if (rest > 0.0) {
    report.add(label + "[other]", std::sqrt(rest));
  }
}

} // namespace

CertificateReport check_conjugate_raw(const ConjugatePair& pair, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("check_conjugate_raw: tol must be positive");
  }
  const std::size_t n = pair.n();
  if (pair.s().dim() != n * n || pair.t().dim() != n * n) {
    throw DimensionMismatch("check_conjugate_raw: s and t must have dimension n^2");
  }
  const LinearObject& alpha = pair.object();
  const LinearObject alpha_hat = pair.dual_object();

  CertificateReport report(tol);
  // (alpha_hat (x) id) o alpha on Hbar (x) H, tested on s.
  add_snake_residuals(report, "(alpha_hat x id)alpha(Z) s", compose(alpha_hat, coaction_of_z(alpha)),
                      pair.s(), 1);
  add_snake_residuals(report, "(alpha_hat x id)alpha(Zbar) s",
                      compose(alpha_hat, coaction_of_zbar(alpha)), pair.s(), -1);
  // (alpha (x) id) o alpha_hat on H (x) Hbar, tested on t.
  add_snake_residuals(report, "(alpha x id)alpha_hat(Z) t", compose(alpha, coaction_of_z(alpha_hat)),
                      pair.t(), 1);
  add_snake_residuals(report, "(alpha x id)alpha_hat(Zbar) t",
                      compose(alpha, coaction_of_zbar(alpha_hat)), pair.t(), -1);

  // alpha_hat must itself be a unital *-homomorphism: both orderings of
  // alpha_hat(Z) alpha_hat(Zbar) reduce to the unit.
  add_product_residuals(report, "alpha_hat(Z)alpha_hat(Zbar)",
                        coaction_of_z(alpha_hat) * coaction_of_zbar(alpha_hat));
  add_product_residuals(report, "alpha_hat(Zbar)alpha_hat(Z)",
                        coaction_of_zbar(alpha_hat) * coaction_of_z(alpha_hat));
  return report;
}

} // namespace circact
