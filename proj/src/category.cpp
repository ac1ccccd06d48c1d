#include "circact/category.hpp"

#include "circact/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace circact {

LinearObject direct_sum(const LinearObject& x, const LinearObject& y) {
  return {block_diag(x.a(), y.a()), block_diag(x.b(), y.b())};
}

LinearObject tensor_product(const LinearObject& x, const LinearObject& y) {
  return {kron(x.a(), y.a()) + kron(x.b().adjoint(), y.b()),
          kron(x.b(), y.a()) + kron(x.a().adjoint(), y.b())};
}

ComplexMatrix intertwiner_operator(const LinearObject& x, const LinearObject& y) {
  const std::size_t nx = x.n();
  const std::size_t ny = y.n();
  const auto ix = ComplexMatrix::identity(nx);
  const auto iy = ComplexMatrix::identity(ny);
  // vec(T M) = (I (x) M^t) vec(T) and vec(M T) = (M (x) I) vec(T), row-major.
  const auto on_a = kron(iy, x.a().transpose()) - kron(y.a(), ix);
  const auto on_b = kron(iy, x.b().transpose()) - kron(y.b(), ix);
  const std::size_t m = nx * ny;
  ComplexMatrix op(2 * m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      op(i, j) = on_a(i, j);
      op(m + i, j) = on_b(i, j);
    }
  }
  return op;
}

MorphismBasis morphism_space(const LinearObject& x, const LinearObject& y, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("morphism_space: tol must be positive");
  }
  MorphismBasis out{x, y, {}};
  const auto op = intertwiner_operator(x, y);
  // Cutoff tol * max(1, ||op||): an operator made of rounding noise (e.g. the
  // equations for 1 -> rot(1) computed in floating point) is zero, not full rank.
  const double scale = op.frobenius_norm();
  if (scale <= tol) {
    for (std::size_t k = 0; k < x.n() * y.n(); ++k) {
      ComplexVector e(x.n() * y.n());
      e[k] = 1.0;
      out.basis.push_back(reshape(e, y.n(), x.n()));
    }
    return out;
  }
  for (const auto& v : nullspace_basis(op, scale >= 1.0 ? tol : tol / scale)) {
    out.basis.push_back(reshape(v, y.n(), x.n()));
  }
  return out;
}

bool is_irreducible(const LinearObject& x, double tol) {
  return morphism_space(x, x, tol).dimension() == 1;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kClusterGap = 1e-3;
constexpr int kAttemptsPerLevel = 8;

LinearObject restrict_to(const LinearObject& x, const ComplexMatrix& v) {
  const auto vs = v.adjoint();
  return {vs * x.a() * v, vs * x.b() * v};
}

void split(const LinearObject& x, const ComplexMatrix& isometry, double tol, std::mt19937_64& rng,
           std::size_t depth, std::vector<Summand>& out) {
  const auto end = morphism_space(x, x, tol);
  if (end.dimension() <= 1) {
    out.push_back({x, isometry});
    return;
  }
  if (depth == 0) {
    throw DecompositionFailure("decompose: recursion exceeded the object dimension");
  }

  const std::size_t n = x.n();
  const Complex i(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < kAttemptsPerLevel; ++attempt) {
    ComplexMatrix h(n, n);
    for (const auto& t : end.basis) {
      h += normal(rng) * (t + t.adjoint());
      h += normal(rng) * (i * (t - t.adjoint()));
    }
    h = 0.5 * (h + h.adjoint());
    const double scale = std::max(1.0, h.frobenius_norm());
    const auto eig = hermitian_eig(h);

    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    std::size_t first = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (k == n || eig.values[k] - eig.values[k - 1] > kClusterGap * scale) {
        clusters.emplace_back(first, k);
        first = k;
      }
    }
    if (clusters.size() == 1) {
      continue;
    }
    for (const auto& [lo, hi] : clusters) {
      const auto v = columns(eig.vectors, lo, hi - lo);
      split(restrict_to(x, v), isometry * v, tol, rng, depth - 1, out);
    }
    return;
  }
  throw DecompositionFailure("decompose: endomorphism algebra has no splitting projection");
}

} // namespace

Decomposition decompose(const LinearObject& x, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("decompose: tol must be positive");
  }
  std::mt19937_64 rng(seed);
  Decomposition dec{x, {}, seed};
  split(x, ComplexMatrix::identity(x.n()), tol, rng, x.n(), dec.summands);
  const double residual = decomposition_residual(dec);
  const double limit = tol * std::sqrt(static_cast<double>(x.n()));
  if (residual > limit) {
    throw DecompositionFailure("decompose: isometry residual " + std::to_string(residual) +
                               " exceeds " + std::to_string(limit));
  }
  return dec;
}

double decomposition_residual(const Decomposition& dec) {
  const std::size_t n = dec.parent.n();
  ComplexMatrix completeness = -ComplexMatrix::identity(n);
  double worst = 0.0;
  for (const auto& s : dec.summands) {
    const auto& v = s.isometry;
    if (v.rows() != n || v.cols() != s.object.n()) {
      throw DimensionMismatch("decomposition: isometry shape does not match its summand");
    }
    const auto vs = v.adjoint();
    completeness += v * vs;
    worst = std::max(worst, (vs * v - ComplexMatrix::identity(v.cols())).frobenius_norm());
    worst = std::max(worst, (dec.parent.a() * v - v * s.object.a()).frobenius_norm());
    worst = std::max(worst, (dec.parent.b() * v - v * s.object.b()).frobenius_norm());
  }
  return std::max(worst, completeness.frobenius_norm());
}

LinearObject conjugate_object(const LinearObject& x) { return {x.a().conj(), x.b().transpose()}; }

CertificateReport check_snake(const ComplexVector& s, const ComplexVector& t, std::size_t n,
                              double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("check_snake: tol must be positive");
  }
  if (n == 0 || s.dim() != n * n || t.dim() != n * n) {
    throw DimensionMismatch("check_snake: s and t must have dimension n^2 = " +
                            std::to_string(n * n));
  }
  // R_v : C -> C^n (x) C^n, 1 -> v, as an n^2 x 1 matrix.
  const auto r_s = ComplexMatrix::column(s);
  const auto r_t = ComplexMatrix::column(t);
  const auto id = ComplexMatrix::identity(n);
  const auto first = kron(r_s.adjoint(), id) * kron(id, r_t);
  const auto second = kron(r_t.adjoint(), id) * kron(id, r_s);
  CertificateReport report(tol);
  report.add("(R_s* x 1)(1 x R_t) - 1", (first - id).frobenius_norm());
  report.add("(R_t* x 1)(1 x R_s) - 1", (second - id).frobenius_norm());
  return report;
}

} // namespace circact
