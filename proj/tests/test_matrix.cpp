#include "support.hpp"

#include "circact/error.hpp"

#include <doctest.h>

using namespace testing;

TEST_CASE("kron small cases") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));

  Gen g(1);
  const auto y = gaussian_matrix(3, 2, g);
  CHECK(relative(kron(ComplexMatrix::scalar(2.0), y), 2.0 * y) == 0.0);

  CHECK(kron(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})) ==
        ComplexMatrix::diagonal({0.0, 1.0, 0.0, 0.0}));
}

TEST_CASE("kron matches the index formula") {
  Gen g(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = gaussian_matrix(pick(g, 1, 3), pick(g, 1, 3), g);
    const auto y = gaussian_matrix(pick(g, 1, 3), pick(g, 1, 3), g);
    CHECK(kron(x, y) == naive_kron(x, y));
  }
}

TEST_CASE("property: adjoint reverses products") {
  Gen g(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = pick(g, 1, 5), k = pick(g, 1, 5), c = pick(g, 1, 5);
    const auto x = gaussian_matrix(r, k, g);
    const auto y = gaussian_matrix(k, c, g);
    CHECK(relative((x * y).adjoint(), y.adjoint() * x.adjoint()) <= 1e-13);
    CHECK(relative(x * y, naive_product(x, y)) <= 1e-13);
  }
}

TEST_CASE("property: kron is multiplicative") {
  Gen g(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = pick(g, 1, 4), b = pick(g, 1, 4), c = pick(g, 1, 4), d = pick(g, 1, 4);
    const auto x1 = gaussian_matrix(a, b, g), x2 = gaussian_matrix(b, pick(g, 1, 4), g);
    const auto y1 = gaussian_matrix(c, d, g), y2 = gaussian_matrix(d, pick(g, 1, 4), g);
    CHECK(relative(kron(x1 * x2, y1 * y2), kron(x1, y1) * kron(x2, y2)) <= 1e-12);
  }
}

TEST_CASE("hermitian_eig on known spectra") {
  const auto d = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0}));
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(3.0));
  // A permutation: every entry has modulus 0 or 1.
  for (const auto& z : d.vectors.data()) {
    CHECK((std::abs(z) < 1e-14 || unit(z) < 1e-14));
  }

  const auto f = hermitian_eig(ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  CHECK(f.values[0] == doctest::Approx(-1.0));
  CHECK(f.values[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), NotHermitian);
}

TEST_CASE("property: hermitian_eig reconstructs") {
  Gen g(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = pick(g, 1, 8);
    const auto h = hermitian_matrix(n, g);
    const auto e = hermitian_eig(h);
    std::vector<Complex> lam(e.values.begin(), e.values.end());
    const auto& w = e.vectors;
    CHECK(relative(w * ComplexMatrix::diagonal(lam) * w.adjoint(), h) <= 1e-10);
    CHECK(relative(w.adjoint() * w, ComplexMatrix::identity(n)) <= 1e-12);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(e.values[k - 1] <= e.values[k]);
    }
  }
}

TEST_CASE("hermitian_eig handles degenerate spectra") {
  Gen g(6);
  const auto w = random_unitary(5, g);
  const auto h = w * ComplexMatrix::diagonal({2.0, 2.0, 2.0, -1.0, -1.0}) * w.adjoint();
  const auto e = hermitian_eig(0.5 * (h + h.adjoint()));
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.values[4] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("nullspace_basis examples") {
  CHECK(nullspace_basis(ComplexMatrix::identity(3), 1e-12).empty());

  const auto z = nullspace_basis(ComplexMatrix::zero(2, 2), 1e-12);
  REQUIRE(z.size() == 2);
  CHECK(std::abs(inner(z[0], z[1])) < 1e-14);

  const auto v = nullspace_basis(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}}), 1e-12);
  REQUIRE(v.size() == 1);
  CHECK(v[0].norm() == doctest::Approx(1.0));
  // Proportional to (1, -1)/sqrt(2), up to a phase.
  CHECK(std::abs(v[0][0] + v[0][1]) < 1e-14);
  CHECK(std::abs(v[0][0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("property: nullity plus rank is the column count") {
  Gen g(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = pick(g, 1, 5), cols = pick(g, 1, 5);
    const auto rank = pick(g, 0, std::min(rows, cols));
    ComplexMatrix m(rows, cols);
    if (rank > 0) {
      m = gaussian_matrix(rows, rank, g) * gaussian_matrix(rank, cols, g);
    }
    const auto null = nullspace_basis(m, 1e-10);
    CHECK(null.size() == cols - numerical_rank(m, 1e-10));
    CHECK(numerical_rank(m, 1e-10) == rank);
    for (const auto& v : null) {
      CHECK((m * v).norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
    }
  }
}

TEST_CASE("exhaustive 0/1 matrices of size 2x2") {
  // Rank by hand: determinant test over all sixteen patterns.
  for (int bits = 0; bits < 16; ++bits) {
    const double a = bits & 1, b = (bits >> 1) & 1, c = (bits >> 2) & 1, d = (bits >> 3) & 1;
    const auto m = ComplexMatrix::from_rows({{a, b}, {c, d}});
    const std::size_t rank = bits == 0 ? 0 : (a * d - b * c != 0.0 ? 2 : 1);
    CHECK(numerical_rank(m, 1e-12) == rank);
    CHECK(nullspace_basis(m, 1e-12).size() == 2 - rank);
  }
}

TEST_CASE("constructors reject bad shapes and values") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix::identity(2) * ComplexMatrix::identity(3), DimensionMismatch);
}

TEST_CASE("reshape and flatten are row-major inverses") {
  Gen g(8);
  const auto m = gaussian_matrix(2, 3, g);
  const auto v = flatten(m);
  CHECK(v[1] == m(0, 1));
  CHECK(reshape(v, 2, 3) == m);
}
