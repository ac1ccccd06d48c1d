#pragma once

#include "circact/coaction.hpp"

#include <cstdint>
#include <vector>

namespace circact {

/// Orthonormal (Frobenius) basis of the intertwiners X -> Y, i.e. the
/// target.n x source.n matrices T with T A_X = A_Y T and T B_X = B_Y T.
struct MorphismBasis {
  LinearObject source;
  LinearObject target;
  std::vector<ComplexMatrix> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
};

struct Summand {
  LinearObject object;
  ComplexMatrix isometry; // parent.n x object.n
};

struct Decomposition {
  LinearObject parent;
  std::vector<Summand> summands;
  std::uint64_t seed;
};

LinearObject direct_sum(const LinearObject& x, const LinearObject& y);

/// (alpha_X (x) id) o alpha_Y on C^{n_X} (x) C^{n_Y}:
/// A = A_X (x) A_Y + B_X* (x) B_Y,  B = B_X (x) A_Y + A_X* (x) B_Y.
LinearObject tensor_product(const LinearObject& x, const LinearObject& y);

/// The linear operator T -> (T A_X - A_Y T, T B_X - B_Y T) on row-major
/// flattened n_Y x n_X matrices.
ComplexMatrix intertwiner_operator(const LinearObject& x, const LinearObject& y);

MorphismBasis morphism_space(const LinearObject& x, const LinearObject& y,
                             double tol = kDefaultTolerance);

bool is_irreducible(const LinearObject& x, double tol = kDefaultTolerance);

/// Splits x into irreducible summands along eigenspaces of random self-adjoint
/// endomorphisms. Throws DecompositionFailure when recursion exceeds n levels
/// or the resulting isometries violate their invariants by more than tol.
Decomposition decompose(const LinearObject& x, double tol = kDefaultTolerance,
                        std::uint64_t seed = 0);

/// Largest residual among the Decomposition invariants (orthonormal columns,
/// completeness, intertwining).
double decomposition_residual(const Decomposition& dec);

/// Conjugate object (conj(A), B^t).
LinearObject conjugate_object(const LinearObject& x);

/// Both snake composites (R_s* (x) 1)(1 (x) R_t) and (R_t* (x) 1)(1 (x) R_s)
/// compared against the identity on C^n.
CertificateReport check_snake(const ComplexVector& s, const ComplexVector& t, std::size_t n,
                              double tol = kDefaultTolerance);

} // namespace circact
