#include "circact/derivation.hpp"

#include "circact/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace circact {

PartialIsometryCheck is_partial_isometry(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) {
    throw DimensionMismatch("is_partial_isometry: matrix must be square");
  }
  if (!(tol > 0.0)) {
    throw InvalidArgument("is_partial_isometry: tol must be positive");
  }
  const double residual = (m * m.adjoint() * m - m).frobenius_norm();
  return {residual <= tol * std::max(1.0, m.frobenius_norm()), residual};
}

PolarData polar_data(const ConjugatePair& pair, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("polar_data: tol must be positive");
  }
  const auto& a = pair.a();
  const auto& b = pair.b();
  const auto& c = pair.c();
  const auto& d = pair.d();
  const auto id = ComplexMatrix::identity(pair.n());

  PolarData out{a + b, c + d, a.adjoint() * a, c.adjoint() * c, CertificateReport(tol)};
  const auto& u = out.u;
  const auto& v = out.v;
  const auto& p = out.p;
  const auto& q = out.q;
  auto& cert = out.certificate;
  cert.add("UU* - I", (u * u.adjoint() - id).frobenius_norm());
  cert.add("VV* - I", (v * v.adjoint() - id).frobenius_norm());
  cert.add("P^2 - P", (p * p - p).frobenius_norm());
  cert.add("P - P*", (p - p.adjoint()).frobenius_norm());
  cert.add("Q^2 - Q", (q * q - q).frobenius_norm());
  cert.add("Q - Q*", (q - q.adjoint()).frobenius_norm());
  cert.add("UP - A", (u * p - a).frobenius_norm());
  cert.add("U(I-P) - B", (u * (id - p) - b).frobenius_norm());
  cert.add("VQ - C", (v * q - c).frobenius_norm());
  cert.add("V(I-Q) - D", (v * (id - q) - d).frobenius_norm());

  if (!cert.overall_pass()) {
    for (const auto& check : cert.checks()) {
      if (!check.pass) {
        throw ConstraintViolation("polar_data: invariant '" + check.name + "' has residual " +
                                  std::to_string(check.residual) + " > " +
                                  std::to_string(check.threshold));
      }
    }
  }
  return out;
}

CertificateReport certify_duality(const ConjugatePair& pair, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("certify_duality: tol must be positive");
  }
  if (!pair.has_kac_vectors()) {
    throw InvalidArgument("certify_duality: only Kac duality vectors are supported");
  }
  const double threshold = tol * std::sqrt(static_cast<double>(pair.n()));
  CertificateReport report(tol);
  report.add("A - conj(C)", (pair.a() - pair.c().conj()).frobenius_norm(), threshold);
  report.add("B - D^t", (pair.b() - pair.d().transpose()).frobenius_norm(), threshold);
  return report;
}

ConjugatePair canonical_dual(const LinearObject& obj) {
  return {obj, obj.a().conj(), obj.b().transpose()};
}

CertificateReport certify_commutativity(const LinearObject& obj, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("certify_commutativity: tol must be positive");
  }
  const auto& a = obj.a();
  const auto& b = obj.b();
  const auto as = a.adjoint();
  const auto bs = b.adjoint();
  CertificateReport report(tol);
  report.add("AB - BA", commutator(a, b).frobenius_norm());
  report.add("AA* - A*A", commutator(a, as).frobenius_norm());
  report.add("BB* - B*B", commutator(b, bs).frobenius_norm());
  report.add("AB* - B*A", commutator(a, bs).frobenius_norm());
  report.add("A*B - BA*", commutator(as, b).frobenius_norm());
  return report;
}

// ---------------------------------------------------------------------------
// Joint diagonalization

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& h) { return 0.5 * (h + h.adjoint()); }

double scalar_defect(const ComplexMatrix& h) {
  const double k = static_cast<double>(h.rows());
  const Complex mean = h.trace() / k;
  return (h - mean * ComplexMatrix::identity(h.rows())).frobenius_norm();
}

// Eigenvalue clusters closer than this (relative to the generator scale) are
// split further by recursion instead of being trusted.
constexpr double kClusterGap = 1e-3;
constexpr int kAttemptsPerLevel = 8;

void split(const ComplexMatrix& basis, const std::vector<ComplexMatrix>& gens, double scale,
           std::mt19937_64& rng, std::size_t depth, std::vector<ComplexVector>& out) {
  const std::size_t k = basis.cols();
  if (k == 1) {
    out.push_back(column(basis, 0));
    return;
  }
  const auto basis_adj = basis.adjoint();
  std::vector<ComplexMatrix> restricted;
  restricted.reserve(gens.size());
  for (const auto& g : gens) {
    restricted.push_back(hermitian_part(basis_adj * g * basis));
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < kAttemptsPerLevel; ++attempt) {
    ComplexMatrix word(k, k);
    for (const auto& r : restricted) {
      word += normal(rng) * r;
    }
    const auto eig = hermitian_eig(hermitian_part(word));

    std::vector<std::pair<std::size_t, std::size_t>> clusters; // [first, last)
    std::size_t first = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (i == k || eig.values[i] - eig.values[i - 1] > kClusterGap * scale) {
        clusters.emplace_back(first, i);
        first = i;
      }
    }

    if (clusters.size() == 1) {
      const bool all_scalar = std::all_of(restricted.begin(), restricted.end(), [&](const auto& r) {
        return scalar_defect(r) <= kClusterGap * scale;
      });
      if (!all_scalar) {
        continue;
      }
      // Joint eigenspace up to noise: the eigenvectors of the word are as good
      // a basis as any.
      const auto local = basis * eig.vectors;
      for (std::size_t j = 0; j < k; ++j) {
        out.push_back(column(local, j));
      }
      return;
    }

    if (depth == 0) {
      throw NotSimultaneouslyDiagonalizable("joint_eigenbasis: recursion depth exhausted");
    }
    for (const auto& [lo, hi] : clusters) {
      const auto sub = basis * columns(eig.vectors, lo, hi - lo);
      split(sub, gens, scale, rng, depth - 1, out);
    }
    return;
  }
  throw NotSimultaneouslyDiagonalizable(
      "joint_eigenbasis: could not separate a cluster; generators do not commute");
}

} // namespace

ComplexMatrix joint_eigenbasis(const std::vector<ComplexMatrix>& hermitian, double tol,
                               std::uint64_t seed) {
  if (hermitian.empty()) {
    throw InvalidArgument("joint_eigenbasis: need at least one generator");
  }
  if (!(tol > 0.0)) {
    throw InvalidArgument("joint_eigenbasis: tol must be positive");
  }
  const std::size_t n = hermitian.front().rows();
  double scale = 1.0;
  for (const auto& h : hermitian) {
    if (!h.is_square() || h.rows() != n) {
      throw DimensionMismatch("joint_eigenbasis: generators must be square of equal size");
    }
    scale = std::max(scale, h.frobenius_norm());
  }
  std::mt19937_64 rng(seed);
  std::vector<ComplexVector> cols;
  split(ComplexMatrix::identity(n), hermitian, scale, rng, n, cols);
  return from_columns(cols);
}

ClassicalDecomposition classical_form(const LinearObject& obj, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("classical_form: tol must be positive");
  }
  const auto& a = obj.a();
  const auto& b = obj.b();
  const Complex i(0.0, 1.0);
  const std::vector<ComplexMatrix> gens{a + a.adjoint(), i * (a - a.adjoint()), b + b.adjoint(),
                                        i * (b - b.adjoint())};
  const auto w = joint_eigenbasis(gens, tol, seed);

  const auto wa = w.adjoint() * a * w;
  const auto wb = w.adjoint() * b * w;
  const std::size_t n = obj.n();
  const double limit = tol * std::sqrt(static_cast<double>(n));
  auto off_mass = [n](const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) {
          s += std::norm(m(p, q));
        }
      }
    }
    return std::sqrt(s);
  };
  const double off = std::max(off_mass(wa), off_mass(wb));
  if (off > limit) {
    throw NotSimultaneouslyDiagonalizable("classical_form: off-diagonal mass " +
                                          std::to_string(off) + " exceeds " +
                                          std::to_string(limit));
  }

  ClassicalDecomposition out{w, {}};
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ak = wa(k, k);
    const Complex bk = wb(k, k);
    const double ma = std::abs(ak);
    const double mb = std::abs(bk);
    if (std::min(ma, mb) > tol) {
      throw AmbiguousSlot("classical_form: slot " + std::to_string(k) +
                          " has both rotation and reflection weight");
    }
    if (ma >= mb) {
      out.characters.push_back({CharacterKind::Rotation, ma > 0.0 ? ak / ma : Complex{1.0}});
    } else {
      out.characters.push_back({CharacterKind::Reflection, bk / mb});
    }
  }
  return out;
}

double dichotomy_residual(const LinearObject& obj, const ClassicalDecomposition& dec) {
  const auto wa = dec.w.adjoint() * obj.a() * dec.w;
  const auto wb = dec.w.adjoint() * obj.b() * dec.w;
  double worst = 0.0;
  for (std::size_t k = 0; k < obj.n(); ++k) {
    const double ma = std::abs(wa(k, k));
    const double mb = std::abs(wb(k, k));
    worst = std::max({worst, std::abs(ma * ma + mb * mb - 1.0), std::min(ma, mb)});
  }
  return worst;
}

double reconstruction_residual(const LinearObject& obj, const ComplexMatrix& w) {
  const auto ws = w.adjoint();
  auto diag_of = [&](const ComplexMatrix& m) {
    const auto full = ws * m * w;
    std::vector<Complex> d(obj.n());
    for (std::size_t k = 0; k < obj.n(); ++k) {
      d[k] = full(k, k);
    }
    return ComplexMatrix::diagonal(d);
  };
  const double ra = (obj.a() - w * diag_of(obj.a()) * ws).frobenius_norm();
  const double rb = (obj.b() - w * diag_of(obj.b()) * ws).frobenius_norm();
  return std::max(ra, rb);
}

bool same_characters(std::vector<Character> x, std::vector<Character> y, double tol) {
  if (x.size() != y.size()) {
    return false;
  }
  std::vector<bool> used(y.size(), false);
  for (const auto& cx : x) {
    bool matched = false;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!used[j] && y[j].kind == cx.kind && std::abs(y[j].phase - cx.phase) <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      return false;
    }
  }
  return true;
}

} // namespace circact
