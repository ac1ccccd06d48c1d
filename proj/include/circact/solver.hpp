#pragma once

#include "circact/coaction.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace circact {

/// Random engine used throughout: 64-bit Mersenne Twister, with per-stream
/// seeds derived by SplitMix64 so that stream k depends only on (seed, k).
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64/splitmix64";

std::uint64_t splitmix64(std::uint64_t x);
/// Generator for sub-stream `index` of `seed`.
Rng stream_rng(std::uint64_t seed, std::uint64_t index);

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);
/// Complex Gaussian entries with E|z|^2 = variance.
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, double variance, Rng& rng);

/// A point (A, B, C, D) of the constraint system.
using ConstraintPoint = std::array<ComplexMatrix, 4>;

/// Sum of squared Frobenius norms of the twenty constraint matrices: six
/// homomorphism equations for (A, B), six for (C, D), eight duality equations.
double residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                const ComplexMatrix& d);
double residual(const ConstraintPoint& x);

/// Analytic gradient of residual(). Entry (i, j) of component k holds
/// d/dRe + i d/dIm of the residual with respect to entry (i, j) of matrix k.
ConstraintPoint residual_gradient(const ConstraintPoint& x);

/// Max over 32 seeded random unit directions of
/// |central difference - analytic directional derivative| / max(1, |analytic|),
/// with finite-difference step 1e-6.
double gradient_check(const ConstraintPoint& x, std::uint64_t seed);

enum class SolverMethod {
  GaussNewton,     // damped Gauss-Newton steps, Armijo gradient step as fallback
  GradientDescent, // Armijo-backtracked steepest descent only
};

struct SolverConfig {
  std::size_t n = 2;
  std::size_t restarts = 200;
  std::size_t max_iters = 500;
  double residual_tol = 1e-10;
  double grad_tol = 1e-13;
  std::uint64_t seed = 0;
  double step_init = 1.0;
  SolverMethod method = SolverMethod::GaussNewton;
  /// Extra undamped Gauss-Newton steps taken once residual <= residual_tol, so
  /// that converged points sit well inside the tolerance (GaussNewton only).
  std::size_t polish_iters = 4;

  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

enum class StopReason { Residual, Gradient, MaxIters, LineSearch };

struct SolverOutcome {
  std::size_t start_index;
  bool converged;
  double residual;
  std::size_t iterations;
  std::size_t polish_steps;
  StopReason stop_reason;
  ConjugatePair pair;
  std::optional<double> commutativity_residual; // converged outcomes only
  std::optional<double> duality_residual;       // max(||A - conj(C)||, ||B - D^t||)
};

struct SolverSummary {
  std::size_t converged = 0;
  std::size_t stalled = 0;
  double max_commutativity_residual = 0.0;
  double max_duality_residual = 0.0;
  /// Converged outcomes failing certify_commutativity at 1e-6.
  std::size_t counterexamples = 0;
};

struct SolverRun {
  SolverConfig config;
  std::string rng = kRngName;
  std::vector<SolverOutcome> outcomes;

  SolverSummary summary() const;
};

/// Tolerance at which converged outcomes are certified commutative.
inline constexpr double kCommutativityTolerance = 1e-6;

/// Minimizes residual() from `start`. Deterministic.
SolverOutcome minimize(const ConstraintPoint& start, const SolverConfig& config,
                       std::size_t start_index = 0);

/// One minimization per restart from complex Gaussian starts (entry variance
/// 1/n) drawn from stream_rng(seed, restart). Restarts run on `threads`
/// workers (0 = hardware concurrency); results are ordered by start index
/// and independent of scheduling.
SolverRun solve(const SolverConfig& config, unsigned threads = 0);

/// A classical solution together with the data it was built from.
struct ClassicalSample {
  ConjugatePair pair;
  ComplexMatrix w;
  std::vector<Complex> phases;
  std::vector<bool> rotation_slot; // slot i carries a rotation iff true
};

/// A = W diag(u_i [i in S]) W*, B = W diag(u_i [i not in S]) W*, C = conj(A),
/// D = B^t, Kac vectors.
ClassicalSample make_classical(const ComplexMatrix& w, const std::vector<Complex>& phases,
                               const std::vector<bool>& rotation_slot);
ClassicalSample draw_classical(std::size_t n, std::uint64_t seed);
ConjugatePair sample_classical(std::size_t n, std::uint64_t seed);

ConstraintPoint to_point(const ConjugatePair& pair);

std::string to_string(StopReason r);
std::string to_string(SolverMethod m);

} // namespace circact
