#include "circact/solver.hpp"

#include "circact/derivation.hpp"
#include "circact/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace circact {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, double variance, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = {re, im};
    }
  }
  return m;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  for (;;) {
    const auto g = random_gaussian(n, n, 1.0, rng);
    std::vector<ComplexVector> cols;
    bool degenerate = false;
    for (std::size_t j = 0; j < n && !degenerate; ++j) {
      auto v = column(g, j);
      // Two passes of modified Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : cols) {
          v -= inner(q, v) * q;
        }
      }
      const double norm = v.norm();
      if (norm < 1e-8) {
        degenerate = true;
        break;
      }
      v *= 1.0 / norm;
      cols.push_back(std::move(v));
    }
    if (!degenerate) {
      return from_columns(cols);
    }
  }
}

// ---------------------------------------------------------------------------
// Constraint table

namespace {

enum class Op { Id, Adj, Tr, Conj };

struct Factor {
  int var; // 0..3 for A, B, C, D
  Op op;
};

struct Term {
  Factor left;
  Factor right;
};

struct Constraint {
  std::vector<Term> terms;
  bool minus_identity;
};

constexpr int kA = 0, kB = 1, kC = 2, kD = 3;

std::vector<Constraint> homomorphism_table(int x, int y) {
  return {
      {{{{x, Op::Id}, {x, Op::Adj}}, {{y, Op::Id}, {y, Op::Adj}}}, true},
      {{{{x, Op::Id}, {y, Op::Adj}}}, false},
      {{{{y, Op::Id}, {x, Op::Adj}}}, false},
      {{{{x, Op::Adj}, {x, Op::Id}}, {{y, Op::Adj}, {y, Op::Id}}}, true},
      {{{{y, Op::Adj}, {x, Op::Id}}}, false},
      {{{{x, Op::Adj}, {y, Op::Id}}}, false},
  };
}

const std::vector<Constraint>& constraint_table() {
  static const std::vector<Constraint> table = [] {
    auto t = homomorphism_table(kA, kB);
    auto dual = homomorphism_table(kC, kD);
    t.insert(t.end(), dual.begin(), dual.end());
    const std::vector<Constraint> duality{
        {{{{kC, Op::Id}, {kA, Op::Tr}}, {{kD, Op::Adj}, {kB, Op::Tr}}}, true},
        {{{{kD, Op::Id}, {kA, Op::Tr}}, {{kC, Op::Adj}, {kB, Op::Tr}}}, false},
        {{{{kC, Op::Adj}, {kA, Op::Conj}}, {{kD, Op::Id}, {kB, Op::Conj}}}, true},
        {{{{kD, Op::Adj}, {kA, Op::Conj}}, {{kC, Op::Id}, {kB, Op::Conj}}}, false},
        {{{{kA, Op::Id}, {kC, Op::Tr}}, {{kB, Op::Adj}, {kD, Op::Tr}}}, true},
        {{{{kB, Op::Id}, {kC, Op::Tr}}, {{kA, Op::Adj}, {kD, Op::Tr}}}, false},
        {{{{kA, Op::Adj}, {kC, Op::Conj}}, {{kB, Op::Id}, {kD, Op::Conj}}}, true},
        {{{{kB, Op::Adj}, {kC, Op::Conj}}, {{kA, Op::Id}, {kD, Op::Conj}}}, false},
    };
    t.insert(t.end(), duality.begin(), duality.end());
    return t;
  }();
  return table;
}

ComplexMatrix apply_op(const ComplexMatrix& m, Op op) {
  switch (op) {
  case Op::Id:
    return m;
  case Op::Adj:
    return m.adjoint();
  case Op::Tr:
    return m.transpose();
  case Op::Conj:
    return m.conj();
  }
  return m;
}

// Pullback of the real pairing Re<K, op(dM)> to Re<op_dagger(K), dM>.
ComplexMatrix pull_back(const ComplexMatrix& k, Op op) {
  switch (op) {
  case Op::Id:
    return k;
  case Op::Adj:
    return k.adjoint();
  case Op::Tr:
    return k.transpose();
  case Op::Conj:
    return k.conj();
  }
  return k;
}

struct Evaluated {
  // ops[var][op] = op(M_var)
  std::array<std::array<ComplexMatrix, 4>, 4> ops;
  std::vector<ComplexMatrix> values; // one residual matrix per constraint
};

void require_point(const ConstraintPoint& x) {
  const std::size_t n = x[0].rows();
  for (const auto& m : x) {
    if (!m.is_square() || m.rows() != n) {
      throw DimensionMismatch("constraint point: all four matrices must be n x n");
    }
  }
}

Evaluated evaluate(const ConstraintPoint& x) {
  require_point(x);
  const std::size_t n = x[0].rows();
  const auto id = ComplexMatrix::identity(n);
  Evaluated e{{{{x[0], x[0], x[0], x[0]},
                {x[1], x[1], x[1], x[1]},
                {x[2], x[2], x[2], x[2]},
                {x[3], x[3], x[3], x[3]}}},
              {}};
  for (int v = 0; v < 4; ++v) {
    for (int o = 0; o < 4; ++o) {
      e.ops[v][o] = apply_op(x[v], static_cast<Op>(o));
    }
  }
  const auto& table = constraint_table();
  e.values.reserve(table.size());
  for (const auto& c : table) {
    ComplexMatrix f = c.minus_identity ? -id : ComplexMatrix::zero(n, n);
    for (const auto& t : c.terms) {
      f += e.ops[t.left.var][static_cast<int>(t.left.op)] *
           e.ops[t.right.var][static_cast<int>(t.right.op)];
    }
    e.values.push_back(std::move(f));
  }
  return e;
}

double sum_of_squares(const std::vector<ComplexMatrix>& values) {
  double s = 0.0;
  for (const auto& f : values) {
    for (const auto& z : f.data()) {
      s += std::norm(z);
    }
  }
  return s;
}

// Real coordinates: matrix k, entry (i, j) -> 2 * (k n^2 + i n + j) (+1 for Im).
Eigen::VectorXd pack(const ConstraintPoint& x) {
  const std::size_t n2 = x[0].rows() * x[0].rows();
  Eigen::VectorXd v(8 * n2);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t e = 0; e < n2; ++e) {
      v(2 * (k * n2 + e)) = x[k].data()[e].real();
      v(2 * (k * n2 + e) + 1) = x[k].data()[e].imag();
    }
  }
  return v;
}

ConstraintPoint unpack(const Eigen::VectorXd& v, std::size_t n) {
  const std::size_t n2 = n * n;
  auto build = [&](std::size_t k) {
    std::vector<Complex> data(n2);
    for (std::size_t e = 0; e < n2; ++e) {
      data[e] = {v(2 * (k * n2 + e)), v(2 * (k * n2 + e) + 1)};
    }
    return ComplexMatrix(n, n, std::move(data));
  };
  return {build(0), build(1), build(2), build(3)};
}

Eigen::VectorXd residual_vector(const Evaluated& e) {
  const std::size_t n2 = e.values.front().data().size();
  Eigen::VectorXd r(2 * n2 * e.values.size());
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    for (std::size_t idx = 0; idx < n2; ++idx) {
      r(2 * (k * n2 + idx)) = e.values[k].data()[idx].real();
      r(2 * (k * n2 + idx) + 1) = e.values[k].data()[idx].imag();
    }
  }
  return r;
}

// Image of the elementary perturbation sigma * E_pq under op: scale * E_ab.
struct Elementary {
  Complex scale;
  std::size_t row;
  std::size_t col;
};

Elementary elementary(Op op, Complex sigma, std::size_t p, std::size_t q) {
  switch (op) {
  case Op::Id:
    return {sigma, p, q};
  case Op::Adj:
    return {std::conj(sigma), q, p};
  case Op::Tr:
    return {sigma, q, p};
  case Op::Conj:
    return {std::conj(sigma), p, q};
  }
  return {sigma, p, q};
}

// Jacobian of residual_vector with respect to the packed real coordinates.
Eigen::MatrixXd jacobian(const Evaluated& e, std::size_t n) {
  const std::size_t n2 = n * n;
  const auto& table = constraint_table();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * n2 * table.size()),
                                              static_cast<Eigen::Index>(8 * n2));
  auto add = [&](std::size_t constraint, std::size_t i, std::size_t j, Eigen::Index coord,
                 Complex value) {
    const auto row = static_cast<Eigen::Index>(2 * (constraint * n2 + i * n + j));
    jac(row, coord) += value.real();
    jac(row + 1, coord) += value.imag();
  };
  for (std::size_t var = 0; var < 4; ++var) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        for (int part = 0; part < 2; ++part) {
          const Complex sigma = part == 0 ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
          const auto coord = static_cast<Eigen::Index>(2 * (var * n2 + p * n + q) + part);
          for (std::size_t k = 0; k < table.size(); ++k) {
            for (const auto& t : table[k].terms) {
              if (t.left.var == static_cast<int>(var)) {
                // sigma' E_ab * R: row b of R lands in row a.
                const auto el = elementary(t.left.op, sigma, p, q);
                const auto& r = e.ops[t.right.var][static_cast<int>(t.right.op)];
                for (std::size_t j = 0; j < n; ++j) {
                  add(k, el.row, j, coord, el.scale * r(el.col, j));
                }
              }
              if (t.right.var == static_cast<int>(var)) {
                // L * sigma' E_ab: column a of L lands in column b.
                const auto el = elementary(t.right.op, sigma, p, q);
                const auto& l = e.ops[t.left.var][static_cast<int>(t.left.op)];
                for (std::size_t i = 0; i < n; ++i) {
                  add(k, i, el.col, coord, el.scale * l(i, el.row));
                }
              }
            }
          }
        }
      }
    }
  }
  return jac;
}

Eigen::VectorXd pack_gradient(const ConstraintPoint& g) { return pack(g); }

} // namespace

double residual(const ConstraintPoint& x) { return sum_of_squares(evaluate(x).values); }

double residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                const ComplexMatrix& d) {
  return residual(ConstraintPoint{a, b, c, d});
}

ConstraintPoint residual_gradient(const ConstraintPoint& x) {
  const auto e = evaluate(x);
  const std::size_t n = x[0].rows();
  ConstraintPoint g{ComplexMatrix(n, n), ComplexMatrix(n, n), ComplexMatrix(n, n),
                    ComplexMatrix(n, n)};
  const auto& table = constraint_table();
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& f = e.values[k];
    for (const auto& t : table[k].terms) {
      const auto& l = e.ops[t.left.var][static_cast<int>(t.left.op)];
      const auto& r = e.ops[t.right.var][static_cast<int>(t.right.op)];
      g[t.left.var] += pull_back(f * r.adjoint(), t.left.op);
      g[t.right.var] += pull_back(l.adjoint() * f, t.right.op);
    }
  }
  for (auto& m : g) {
    m *= 2.0;
  }
  return g;
}

double gradient_check(const ConstraintPoint& x, std::uint64_t seed) {
  require_point(x);
  const std::size_t n = x[0].rows();
  const Eigen::VectorXd x0 = pack(x);
  const Eigen::VectorXd grad = pack_gradient(residual_gradient(x));
  Rng rng = stream_rng(seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    Eigen::VectorXd dir(x0.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i) {
      dir(i) = normal(rng);
    }
    dir.normalize();
    const double analytic = grad.dot(dir);
    const double fd =
        (residual(unpack(x0 + h * dir, n)) - residual(unpack(x0 - h * dir, n))) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)));
  }
  return worst;
}

// ---------------------------------------------------------------------------

void SolverConfig::validate() const {
  if (n == 0) {
    throw InvalidArgument("solver: n must be positive");
  }
  if (n > 8) {
    throw InvalidArgument("solver: n > 8 is not supported");
  }
  if (restarts == 0) {
    throw InvalidArgument("solver: restarts must be at least 1");
  }
  if (max_iters == 0) {
    throw InvalidArgument("solver: max_iters must be positive");
  }
  if (!(residual_tol >= 1e-14)) {
    throw InvalidArgument("solver: residual_tol must be at least 1e-14");
  }
  if (!(grad_tol > 0.0)) {
    throw InvalidArgument("solver: grad_tol must be positive");
  }
  if (!(step_init > 0.0)) {
    throw InvalidArgument("solver: step_init must be positive");
  }
}

std::string to_string(StopReason r) {
  switch (r) {
  case StopReason::Residual:
    return "residual";
  case StopReason::Gradient:
    return "gradient";
  case StopReason::MaxIters:
    return "max_iters";
  case StopReason::LineSearch:
    return "line_search";
  }
  return "unknown";
}

std::string to_string(SolverMethod m) {
  return m == SolverMethod::GaussNewton ? "gauss_newton" : "gradient_descent";
}

ConstraintPoint to_point(const ConjugatePair& pair) {
  return {pair.a(), pair.b(), pair.c(), pair.d()};
}

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

// Below this the residual is pure rounding noise; polishing stops.
constexpr double kPolishFloor = 1e-28;

Eigen::VectorXd gauss_newton_step(const Evaluated& eval, std::size_t n, double mu) {
  const Eigen::MatrixXd jac = jacobian(eval, n);
  const Eigen::VectorXd r = residual_vector(eval);
  Eigen::MatrixXd normal = jac.transpose() * jac;
  normal.diagonal().array() += mu;
  return normal.ldlt().solve(-(jac.transpose() * r));
}

SolverOutcome finish(ConstraintPoint x, double f, std::size_t iters, StopReason reason,
                     const SolverConfig& config, std::size_t start_index) {
  std::size_t polished = 0;
  if (f <= config.residual_tol && config.method == SolverMethod::GaussNewton) {
    const std::size_t n = x[0].rows();
    auto eval = evaluate(x);
    while (polished < config.polish_iters && f > kPolishFloor) {
      const Eigen::VectorXd delta = gauss_newton_step(eval, n, 1e-14);
      if (!delta.allFinite()) {
        break;
      }
      auto trial = unpack(pack(x) + delta, n);
      auto trial_eval = evaluate(trial);
      const double trial_f = sum_of_squares(trial_eval.values);
      if (!(trial_f < f)) {
        break;
      }
      x = std::move(trial);
      eval = std::move(trial_eval);
      f = trial_f;
      ++polished;
    }
  }
  ConjugatePair pair(LinearObject(x[0], x[1]), x[2], x[3]);
  SolverOutcome out{start_index, f <= config.residual_tol, f, iters, polished, reason, pair,
                    std::nullopt, std::nullopt};
  if (out.converged) {
    out.commutativity_residual =
        certify_commutativity(pair.object(), kCommutativityTolerance).max_residual();
    out.duality_residual = std::max((x[0] - x[2].conj()).frobenius_norm(),
                                    (x[1] - x[3].transpose()).frobenius_norm());
  }
  return out;
}

} // namespace

SolverOutcome minimize(const ConstraintPoint& start, const SolverConfig& config,
                       std::size_t start_index) {
  require_point(start);
  const std::size_t n = start[0].rows();
  Eigen::VectorXd x = pack(start);
  auto point = start;
  auto eval = evaluate(point);
  double f = sum_of_squares(eval.values);
  double mu = 1e-3;
  double step = config.step_init;

  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    if (f <= config.residual_tol) {
      return finish(point, f, iter, StopReason::Residual, config, start_index);
    }
    const Eigen::VectorXd grad = pack_gradient(residual_gradient(point));
    const double gnorm = grad.norm();
    if (gnorm <= config.grad_tol) {
      return finish(point, f, iter, StopReason::Gradient, config, start_index);
    }

    bool accepted = false;
    if (config.method == SolverMethod::GaussNewton) {
      const Eigen::VectorXd delta = gauss_newton_step(eval, n, mu);
      if (delta.allFinite()) {
        const Eigen::VectorXd trial = x + delta;
        auto trial_point = unpack(trial, n);
        auto trial_eval = evaluate(trial_point);
        const double trial_f = sum_of_squares(trial_eval.values);
        if (trial_f <= f + kArmijo * grad.dot(delta) && trial_f < f) {
          x = trial;
          point = std::move(trial_point);
          eval = std::move(trial_eval);
          f = trial_f;
          mu = std::max(mu / 3.0, 1e-15);
          accepted = true;
        } else {
          mu = std::min(mu * 4.0, 1e8);
        }
      }
    }
    if (accepted) {
      continue;
    }

    // Armijo backtracking along the negative gradient.
    double alpha = step;
    bool moved = false;
    for (int b = 0; b < kMaxBacktracks; ++b) {
      const Eigen::VectorXd trial = x - alpha * grad;
      auto trial_point = unpack(trial, n);
      auto trial_eval = evaluate(trial_point);
      const double trial_f = sum_of_squares(trial_eval.values);
      if (trial_f <= f - kArmijo * alpha * gnorm * gnorm) {
        x = trial;
        point = std::move(trial_point);
        eval = std::move(trial_eval);
        f = trial_f;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) {
      return finish(point, f, iter, StopReason::LineSearch, config, start_index);
    }
    step = std::min(alpha * 2.0, config.step_init * 1e3);
  }
  const StopReason reason =
      f <= config.residual_tol ? StopReason::Residual : StopReason::MaxIters;
  return finish(point, f, config.max_iters, reason, config, start_index);
}

SolverRun solve(const SolverConfig& config, unsigned threads) {
  config.validate();
  SolverRun run{config, kRngName, {}};
  std::vector<std::optional<SolverOutcome>> slots(config.restarts);

  auto work = [&](std::size_t index) {
    Rng rng = stream_rng(config.seed, index);
    const double variance = 1.0 / static_cast<double>(config.n);
    ConstraintPoint start{random_gaussian(config.n, config.n, variance, rng),
                          random_gaussian(config.n, config.n, variance, rng),
                          random_gaussian(config.n, config.n, variance, rng),
                          random_gaussian(config.n, config.n, variance, rng)};
    slots[index] = minimize(start, config, index);
  };

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.restarts));
  if (threads <= 1) {
    for (std::size_t i = 0; i < config.restarts; ++i) {
      work(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.restarts; i = next++) {
          work(i);
        }
      });
    }
  }

  run.outcomes.reserve(config.restarts);
  for (auto& s : slots) {
    run.outcomes.push_back(std::move(*s));
  }
  return run;
}

SolverSummary SolverRun::summary() const {
  SolverSummary s;
  for (const auto& o : outcomes) {
    if (!o.converged) {
      ++s.stalled;
      continue;
    }
    ++s.converged;
    s.max_commutativity_residual =
        std::max(s.max_commutativity_residual, o.commutativity_residual.value_or(0.0));
    s.max_duality_residual = std::max(s.max_duality_residual, o.duality_residual.value_or(0.0));
    if (o.commutativity_residual.value_or(0.0) > kCommutativityTolerance) {
      ++s.counterexamples;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

ClassicalSample make_classical(const ComplexMatrix& w, const std::vector<Complex>& phases,
                               const std::vector<bool>& rotation_slot) {
  const std::size_t n = w.rows();
  if (!w.is_square() || phases.size() != n || rotation_slot.size() != n) {
    throw DimensionMismatch("make_classical: W, phases and slots must agree in size");
  }
  std::vector<Complex> da(n), db(n);
  for (std::size_t i = 0; i < n; ++i) {
    (rotation_slot[i] ? da : db)[i] = phases[i];
  }
  const auto ws = w.adjoint();
  const auto a = w * ComplexMatrix::diagonal(da) * ws;
  const auto b = w * ComplexMatrix::diagonal(db) * ws;
  return {ConjugatePair(LinearObject(a, b), a.conj(), b.transpose()), w, phases, rotation_slot};
}

ClassicalSample draw_classical(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw InvalidArgument("sample_classical: n must be positive");
  }
  Rng rng = stream_rng(seed, 0);
  const auto w = random_unitary(n, rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution coin(0.5);
  std::vector<Complex> phases(n);
  std::vector<bool> rotation(n);
  for (std::size_t i = 0; i < n; ++i) {
    phases[i] = std::polar(1.0, angle(rng));
    rotation[i] = coin(rng);
  }
  return make_classical(w, phases, rotation);
}

ConjugatePair sample_classical(std::size_t n, std::uint64_t seed) {
  return draw_classical(n, seed).pair;
}

} // namespace circact
