#include "support.hpp"

#include <doctest.h>

using namespace testing;

namespace {

LinearObject random_character(Gen& g) {
  return g() % 2 ? LinearObject::rotation(unit_phase(g)) : LinearObject::reflection(unit_phase(g));
}

// Composition table of the circle symmetries, written out by hand.
Character fuse_table(const Character& x, const Character& y) {
  using K = CharacterKind;
  if (x.kind == K::Rotation && y.kind == K::Rotation) {
    return {K::Rotation, x.phase * y.phase};
  }
  if (x.kind == K::Rotation) {
    return {K::Reflection, std::conj(x.phase) * y.phase};
  }
  if (y.kind == K::Rotation) {
    return {K::Reflection, x.phase * y.phase};
  }
  return {K::Rotation, std::conj(x.phase) * y.phase};
}

std::vector<Character> characters_of(const Decomposition& dec) {
  std::vector<Character> out;
  for (const auto& s : dec.summands) {
    for (const auto& c : classical_form(s.object).characters) {
      out.push_back(c);
    }
  }
  return out;
}

} // namespace

TEST_CASE("direct_sum examples") {
  const auto one = LinearObject::trivial();
  const auto s = direct_sum(one, one);
  CHECK(s.a() == ComplexMatrix::identity(2));
  CHECK(s.b() == ComplexMatrix::zero(2, 2));

  const Complex lambda = std::polar(1.0, 0.5), mu = std::polar(1.0, 2.5);
  const auto m = direct_sum(LinearObject::rotation(lambda), LinearObject::reflection(mu));
  CHECK(m.a() == ComplexMatrix::diagonal({lambda, 0.0}));
  CHECK(m.b() == ComplexMatrix::diagonal({0.0, mu}));
}

TEST_CASE("tensor_product examples") {
  const Complex lambda = std::polar(1.0, 0.5), mu = std::polar(1.0, -1.5);
  const auto rr = tensor_product(LinearObject::rotation(lambda), LinearObject::rotation(mu));
  CHECK(std::abs(rr.a()(0, 0) - lambda * mu) < 1e-15);
  CHECK(rr.b()(0, 0) == 0.0);

  const auto ff = tensor_product(LinearObject::reflection(lambda), LinearObject::reflection(mu));
  CHECK(std::abs(ff.a()(0, 0) - std::conj(lambda) * mu) < 1e-15);
  CHECK(ff.b()(0, 0) == 0.0);
}

TEST_CASE("property: sums and products of valid objects are valid") {
  Gen g(30);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = valid_object(pick(g, 1, 3), g), y = valid_object(pick(g, 1, 3), g);
    CHECK(check_homomorphism(direct_sum(x, y), 1e-10).overall_pass());
    CHECK(check_homomorphism(tensor_product(x, y), 1e-10).overall_pass());
  }
}

TEST_CASE("property: tensor closed form matches the symbolic oracle") {
  Gen g(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto nx = pick(g, 1, 3), ny = pick(g, 1, 3);
    // Arbitrary matrices: the formula is pure algebra.
    const LinearObject x(gaussian_matrix(nx, nx, g), gaussian_matrix(nx, nx, g));
    const LinearObject y(gaussian_matrix(ny, ny, g), gaussian_matrix(ny, ny, g));
    const auto t = tensor_product(x, y);
    const auto [za, zb] = symbolic_tensor(x, y);
    double worst = 0.0;
    for (std::size_t k = 0; k < za.data().size(); ++k) {
      worst = std::max({worst, std::abs(t.a().data()[k] - za.data()[k]),
                        std::abs(t.b().data()[k] - zb.data()[k])});
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("morphism_space examples") {
  const Complex lambda = std::polar(1.0, 0.4), mu = std::polar(1.0, 1.9);
  const auto rot = LinearObject::rotation(lambda);
  const auto self = morphism_space(rot, rot);
  REQUIRE(self.dimension() == 1);
  CHECK(unit(self.basis[0](0, 0)) < 1e-14);

  CHECK(morphism_space(rot, LinearObject::rotation(mu)).dimension() == 0);
  CHECK(morphism_space(rot, LinearObject::reflection(mu)).dimension() == 0);
}

TEST_CASE("is_irreducible examples") {
  const auto one = LinearObject::trivial();
  CHECK(is_irreducible(LinearObject::rotation(std::polar(1.0, 0.1))));
  CHECK_FALSE(is_irreducible(direct_sum(one, one)));
  CHECK(morphism_space(direct_sum(one, one), direct_sum(one, one)).dimension() == 4);
  const auto mixed = direct_sum(one, LinearObject::rotation(Complex(0.0, 1.0)));
  CHECK_FALSE(is_irreducible(mixed));
  CHECK(morphism_space(mixed, mixed).dimension() == 2);
}

TEST_CASE("decompose examples") {
  const Complex i(0.0, 1.0);
  const auto mixed = direct_sum(LinearObject::trivial(), LinearObject::rotation(i));
  const auto d = decompose(mixed);
  CHECK(d.summands.size() == 2);
  CHECK(same_characters(characters_of(d),
                        {{CharacterKind::Rotation, 1.0}, {CharacterKind::Rotation, i}}));

  const auto p = ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  const auto d2 = decompose(LinearObject(p, ComplexMatrix::identity(2) - p));
  CHECK(same_characters(characters_of(d2),
                        {{CharacterKind::Rotation, 1.0}, {CharacterKind::Reflection, 1.0}}));

  const auto refl = LinearObject::reflection(std::polar(1.0, 0.8));
  const auto d3 = decompose(refl);
  REQUIRE(d3.summands.size() == 1);
  CHECK(d3.summands[0].isometry == ComplexMatrix::identity(1));
}

TEST_CASE("property: decompose splits valid objects into characters") {
  Gen g(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = pick(g, 1, 6);
    const auto sample = draw_classical(n, g());
    const auto d = decompose(sample.pair.object(), kDefaultTolerance, g());
    CHECK(d.summands.size() == n);
    for (const auto& s : d.summands) {
      CHECK(s.object.n() == 1);
    }
    CHECK(decomposition_residual(d) <= 1e-9);
    CHECK(same_characters(characters_of(d), classical_form(sample.pair.object()).characters));
  }
}

TEST_CASE("property: fusion of characters follows the circle group law") {
  Gen g(33);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_character(g), y = random_character(g);
    const auto d = decompose(tensor_product(x, y));
    REQUIRE(d.summands.size() == 1);
    const auto got = characters_of(d);
    const auto want = fuse_table(classical_form(x).characters[0], classical_form(y).characters[0]);
    CHECK(same_characters(got, {want}));
  }
}

TEST_CASE("property: fusion is associative") {
  Gen g(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = valid_object(pick(g, 1, 2), g), y = valid_object(pick(g, 1, 2), g),
               z = valid_object(pick(g, 1, 2), g);
    const auto left = decompose(tensor_product(tensor_product(x, y), z));
    const auto right = decompose(tensor_product(x, tensor_product(y, z)));
    CHECK(same_characters(characters_of(left), characters_of(right)));
  }
}

TEST_CASE("property: intertwiner spaces are additive") {
  Gen g(35);
  for (int trial = 0; trial < 30; ++trial) {
    // Characters drawn from a small pool so coincidences actually happen.
    const Complex pool[] = {1.0, Complex(0.0, 1.0), -1.0};
    auto pick_obj = [&]() {
      const auto n = pick(g, 1, 2);
      LinearObject acc = g() % 2 ? LinearObject::rotation(pool[g() % 3])
                                 : LinearObject::reflection(pool[g() % 3]);
      for (std::size_t k = 1; k < n; ++k) {
        acc = direct_sum(acc, g() % 2 ? LinearObject::rotation(pool[g() % 3])
                                      : LinearObject::reflection(pool[g() % 3]));
      }
      return acc;
    };
    const auto x = pick_obj(), y = pick_obj(), w = pick_obj();
    CHECK(morphism_space(direct_sum(x, y), w).dimension() ==
          morphism_space(x, w).dimension() + morphism_space(y, w).dimension());
  }
}

TEST_CASE("conjugate_object examples and the unit in X (x) conj(X)") {
  const Complex lambda = std::polar(1.0, 0.6);
  CHECK(conjugate_object(LinearObject::rotation(lambda)) ==
        LinearObject::rotation(std::conj(lambda)));
  const auto refl = LinearObject::reflection(lambda);
  CHECK(conjugate_object(refl) == refl);
  const auto rc = conjugate_object(refl);
  CHECK(check_conjugate_raw(ConjugatePair(refl, rc.a(), rc.b())).overall_pass());

  Gen g(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = pick(g, 1, 4);
    std::vector<Complex> a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
      (g() % 2 ? a[k] : b[k]) = unit_phase(g);
    }
    const LinearObject diag(ComplexMatrix::diagonal(a), ComplexMatrix::diagonal(b));
    CHECK(conjugate_object(conjugate_object(diag)) == diag);

    const auto x = valid_object(n, g);
    CHECK(morphism_space(LinearObject::trivial(), tensor_product(x, conjugate_object(x)))
              .dimension() >= 1);
  }
}

TEST_CASE("check_snake examples") {
  CHECK(check_snake(kac_vector(2), kac_vector(2), 2).max_residual() == 0.0);
  CHECK(check_snake(kac_vector(3), kac_vector(3), 3).overall_pass());
  const auto scaled = check_snake(2.0 * kac_vector(1), kac_vector(1), 1);
  CHECK_FALSE(scaled.overall_pass());
  CHECK(scaled.max_residual() == doctest::Approx(1.0));
}

TEST_CASE("rounding-level intertwiner equations count as exact") {
  // rot(l) (x) rot(conj l) is rot(1) only up to rounding in l * conj(l).
  const Complex lambda = std::polar(1.0, 0.123456789);
  const auto t = tensor_product(LinearObject::rotation(lambda),
                                LinearObject::rotation(std::conj(lambda)));
  CHECK(morphism_space(LinearObject::trivial(), t).dimension() == 1);
  CHECK(is_irreducible(t));
}
