#pragma once

#include "circact/coaction.hpp"

#include <cstdint>
#include <vector>

namespace circact {

struct PartialIsometryCheck {
  bool holds;
  double residual; // ||M M* M - M||_F
};

/// M M* M = M within tol * max(1, ||M||_F).
PartialIsometryCheck is_partial_isometry(const ComplexMatrix& m, double tol);

/// Polar data of a valid conjugate pair: A = U P, B = U (I - P),
/// C = V Q, D = V (I - Q).
struct PolarData {
  ComplexMatrix u;
  ComplexMatrix v;
  ComplexMatrix p;
  ComplexMatrix q;
  CertificateReport certificate;
};

/// U = A + B, V = C + D, P = A*A, Q = C*C, with every invariant verified.
/// Throws ConstraintViolation when any invariant residual exceeds tol.
PolarData polar_data(const ConjugatePair& pair, double tol = kDefaultTolerance);

/// Residuals ||A - conj(C)||_F and ||B - D^t||_F against tol * sqrt(n).
/// Requires Kac s, t (InvalidArgument otherwise).
CertificateReport certify_duality(const ConjugatePair& pair, double tol = kDefaultTolerance);

/// The pair (A, B; conj(A), B^t) with Kac vectors. Validity is not implied;
/// run check_conjugate_matrix on the result.
ConjugatePair canonical_dual(const LinearObject& obj);

/// Commutators and self-commutators of the *-algebra generated by A and B.
CertificateReport certify_commutativity(const LinearObject& obj, double tol = kDefaultTolerance);

enum class CharacterKind { Rotation, Reflection };

/// One-dimensional classical symmetry of the circle: Z -> phase Z (rotation)
/// or Z -> phase Zbar (reflection).
struct Character {
  CharacterKind kind;
  Complex phase;
};

struct ClassicalDecomposition {
  ComplexMatrix w;                   // unitary, columns are the joint eigenvectors
  std::vector<Character> characters; // slot i belongs to column i of w
};

/// Simultaneously diagonalizes A and B and reads off one rotation or
/// reflection character per slot. `seed` drives the random self-adjoint words.
/// Throws NotSimultaneouslyDiagonalizable or AmbiguousSlot on invalid input.
ClassicalDecomposition classical_form(const LinearObject& obj, double tol = kDefaultTolerance,
                                      std::uint64_t seed = 0);

/// Largest violation of |a_i|^2 + |b_i|^2 = 1 and min(|a_i|, |b_i|) = 0 over the
/// diagonal of W* A W, W* B W.
double dichotomy_residual(const LinearObject& obj, const ClassicalDecomposition& dec);

/// Residual max(||A - W diag(a) W*||, ||B - W diag(b) W*||) where a, b are the
/// diagonals of W* A W and W* B W.
double reconstruction_residual(const LinearObject& obj, const ComplexMatrix& w);

/// Unitary W whose columns jointly diagonalize the given commuting Hermitian
/// matrices: one random real combination, then recursion on every degenerate
/// eigenvalue cluster. Exposed for reuse by the category engine.
ComplexMatrix joint_eigenbasis(const std::vector<ComplexMatrix>& hermitian, double tol,
                               std::uint64_t seed);

/// True when the two decompositions carry the same multiset of characters
/// (phases compared within tol).
bool same_characters(std::vector<Character> x, std::vector<Character> y, double tol = 1e-8);

} // namespace circact
