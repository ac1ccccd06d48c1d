#include "circact/json_io.hpp"

#include "circact/error.hpp"

#include <cmath>
#include <limits>

namespace circact::io {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) {
    throw SchemaError(path.empty() ? "/" : path, "expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(child(path, key), "missing required field");
  }
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) {
    throw SchemaError(path, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(path, "expected a finite number");
  }
  return v;
}

std::uint64_t unsigned_integer(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::size_t positive(const Json& j, const std::string& path) {
  const auto v = unsigned_integer(j, path);
  if (v == 0) {
    throw SchemaError(path, "expected a positive integer");
  }
  return static_cast<std::size_t>(v);
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) {
    throw SchemaError(path, "expected true or false");
  }
  return j.get<bool>();
}

const std::string& string(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    throw SchemaError(path, "expected a string");
  }
  return j.get_ref<const std::string&>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) {
    throw SchemaError(path, "expected an array");
  }
  return j;
}

std::optional<double> optional_number(const Json& j, const std::string& path) {
  if (j.is_null()) {
    return std::nullopt;
  }
  return number(j, path);
}

Json optional_to_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

// ---------------------------------------------------------------------------
// Serialization

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const auto& z : m.data()) {
    data.push_back(to_json(z));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json to_json(const ComplexVector& v) {
  Json data = Json::array();
  for (const auto& z : v.data()) {
    data.push_back(to_json(z));
  }
  return data;
}

Json to_json(const LinearObject& obj) {
  return {{"n", obj.n()}, {"A", to_json(obj.a())}, {"B", to_json(obj.b())}};
}

Json to_json(const ConjugatePair& pair) {
  Json j = to_json(pair.object());
  j["C"] = to_json(pair.c());
  j["D"] = to_json(pair.d());
  j["s"] = to_json(pair.s());
  j["t"] = to_json(pair.t());
  return j;
}

Json to_json(const CertificateReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks()) {
    checks.push_back(
        {{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  return {{"tolerance", report.tolerance()},
          {"checks", std::move(checks)},
          {"overall_pass", report.overall_pass()}};
}

Json to_json(const ClassicalDecomposition& dec) {
  Json chars = Json::array();
  for (const auto& c : dec.characters) {
    chars.push_back({{"kind", c.kind == CharacterKind::Rotation ? "rotation" : "reflection"},
                     {"phase", to_json(c.phase)}});
  }
  return {{"W", to_json(dec.w)}, {"characters", std::move(chars)}};
}

Json to_json(const Decomposition& dec) {
  Json summands = Json::array();
  for (const auto& s : dec.summands) {
    summands.push_back({{"object", to_json(s.object)}, {"isometry", to_json(s.isometry)}});
  }
  return {{"summands", std::move(summands)}, {"seed", dec.seed}};
}

Json to_json(const SolverConfig& c) {
  return {{"n", c.n},
          {"restarts", c.restarts},
          {"max_iters", c.max_iters},
          {"residual_tol", c.residual_tol},
          {"grad_tol", c.grad_tol},
          {"seed", c.seed},
          {"step_init", c.step_init},
          {"method", to_string(c.method)},
          {"polish_iters", c.polish_iters}};
}

Json to_json(const SolverRun& run) {
  Json outcomes = Json::array();
  for (const auto& o : run.outcomes) {
    outcomes.push_back({{"start_index", o.start_index},
                        {"converged", o.converged},
                        {"residual", o.residual},
                        {"iterations", o.iterations},
                        {"polish_steps", o.polish_steps},
                        {"stop_reason", to_string(o.stop_reason)},
                        {"commutativity_residual", optional_to_json(o.commutativity_residual)},
                        {"duality_residual", optional_to_json(o.duality_residual)},
                        {"pair", to_json(o.pair)}});
  }
  const auto s = run.summary();
  return {{"config", to_json(run.config)},
          {"rng", run.rng},
          {"summary",
           {{"converged", s.converged},
            {"stalled", s.stalled},
            {"counterexamples", s.counterexamples},
            {"max_commutativity_residual", s.max_commutativity_residual},
            {"max_duality_residual", s.max_duality_residual},
            {"commutativity_tolerance", kCommutativityTolerance}}},
          {"outcomes", std::move(outcomes)}};
}

// ---------------------------------------------------------------------------
// Parsing

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError(path, "expected a [re, im] pair");
  }
  return {number(j[0], child(path, 0)), number(j[1], child(path, 1))};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  const auto rows = positive(field(j, path, "rows"), child(path, "rows"));
  const auto cols = positive(field(j, path, "cols"), child(path, "cols"));
  const auto data_path = child(path, "data");
  const auto& data = array(field(j, path, "data"), data_path);
  if (data.size() != rows * cols) {
    throw SchemaError(data_path, "expected " + std::to_string(rows * cols) + " entries, found " +
                                     std::to_string(data.size()));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    entries.push_back(complex_from_json(data[k], child(data_path, k)));
  }
  return {rows, cols, std::move(entries)};
}

ComplexVector vector_from_json(const Json& j, const std::string& path) {
  const auto& data = array(j, path);
  if (data.empty()) {
    throw SchemaError(path, "expected a non-empty array");
  }
  std::vector<Complex> entries;
  for (std::size_t k = 0; k < data.size(); ++k) {
    entries.push_back(complex_from_json(data[k], child(path, k)));
  }
  return ComplexVector(std::move(entries));
}

namespace {

ComplexMatrix square_field(const Json& j, const std::string& path, const char* key,
                           std::size_t n) {
  auto m = matrix_from_json(field(j, path, key), child(path, key));
  if (m.rows() != n || m.cols() != n) {
    throw SchemaError(child(path, key), "expected a " + std::to_string(n) + "x" +
                                            std::to_string(n) + " matrix");
  }
  return m;
}

ComplexVector duality_field(const Json& j, const std::string& path, const char* key,
                            std::size_t n) {
  auto it = j.find(key);
  if (it == j.end()) {
    return kac_vector(n);
  }
  auto v = vector_from_json(*it, child(path, key));
  if (v.dim() != n * n) {
    throw SchemaError(child(path, key), "expected dimension n^2 = " + std::to_string(n * n));
  }
  return v;
}

} // namespace

LinearObject linear_object_from_json(const Json& j, const std::string& path) {
  const auto n = positive(field(j, path, "n"), child(path, "n"));
  return {square_field(j, path, "A", n), square_field(j, path, "B", n)};
}

ConjugatePair conjugate_pair_from_json(const Json& j, const std::string& path) {
  auto obj = linear_object_from_json(j, path);
  const auto n = obj.n();
  return {std::move(obj), square_field(j, path, "C", n), square_field(j, path, "D", n),
          duality_field(j, path, "s", n), duality_field(j, path, "t", n)};
}

CertificateReport certificate_from_json(const Json& j, const std::string& path) {
  CertificateReport report(number(field(j, path, "tolerance"), child(path, "tolerance")));
  const auto checks_path = child(path, "checks");
  const auto& checks = array(field(j, path, "checks"), checks_path);
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto p = child(checks_path, k);
    const auto& c = checks[k];
    const auto& name = string(field(c, p, "name"), child(p, "name"));
    const double residual = number(field(c, p, "residual"), child(p, "residual"));
    const double threshold = number(field(c, p, "threshold"), child(p, "threshold"));
    const bool pass = boolean(field(c, p, "pass"), child(p, "pass"));
    report.add(name, residual, threshold);
    if (report.checks().back().pass != pass) {
      throw SchemaError(child(p, "pass"), "verdict disagrees with residual and threshold");
    }
  }
  const bool overall = boolean(field(j, path, "overall_pass"), child(path, "overall_pass"));
  if (overall != report.overall_pass()) {
    throw SchemaError(child(path, "overall_pass"), "disagrees with the individual checks");
  }
  return report;
}

ClassicalDecomposition classical_decomposition_from_json(const Json& j, const std::string& path) {
  ClassicalDecomposition dec{matrix_from_json(field(j, path, "W"), child(path, "W")), {}};
  const auto chars_path = child(path, "characters");
  const auto& chars = array(field(j, path, "characters"), chars_path);
  for (std::size_t k = 0; k < chars.size(); ++k) {
    const auto p = child(chars_path, k);
    const auto& kind = string(field(chars[k], p, "kind"), child(p, "kind"));
    CharacterKind parsed;
    if (kind == "rotation") {
      parsed = CharacterKind::Rotation;
    } else if (kind == "reflection") {
      parsed = CharacterKind::Reflection;
    } else {
      throw SchemaError(child(p, "kind"), "expected \"rotation\" or \"reflection\"");
    }
    dec.characters.push_back(
        {parsed, complex_from_json(field(chars[k], p, "phase"), child(p, "phase"))});
  }
  if (dec.characters.size() != dec.w.cols()) {
    throw SchemaError(chars_path, "expected one character per column of W");
  }
  return dec;
}

Decomposition decomposition_from_json(const Json& j, const std::string& path) {
  const auto summands_path = child(path, "summands");
  const auto& summands = array(field(j, path, "summands"), summands_path);
  if (summands.empty()) {
    throw SchemaError(summands_path, "expected at least one summand");
  }
  std::vector<Summand> parsed;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const auto p = child(summands_path, k);
    auto obj = linear_object_from_json(field(summands[k], p, "object"), child(p, "object"));
    auto iso = matrix_from_json(field(summands[k], p, "isometry"), child(p, "isometry"));
    if (iso.cols() != obj.n() || (!parsed.empty() && iso.rows() != parsed.front().isometry.rows())) {
      throw SchemaError(child(p, "isometry"), "shape does not match the summand");
    }
    parsed.push_back({std::move(obj), std::move(iso)});
  }
  // The parent is the sum of the embedded summands.
  const std::size_t n = parsed.front().isometry.rows();
  ComplexMatrix a(n, n), b(n, n);
  for (const auto& s : parsed) {
    a += s.isometry * s.object.a() * s.isometry.adjoint();
    b += s.isometry * s.object.b() * s.isometry.adjoint();
  }
  return {LinearObject(a, b), std::move(parsed),
          unsigned_integer(field(j, path, "seed"), child(path, "seed"))};
}

SolverConfig solver_config_from_json(const Json& j, const std::string& path) {
  SolverConfig c;
  c.n = positive(field(j, path, "n"), child(path, "n"));
  c.restarts = positive(field(j, path, "restarts"), child(path, "restarts"));
  c.max_iters = positive(field(j, path, "max_iters"), child(path, "max_iters"));
  c.residual_tol = number(field(j, path, "residual_tol"), child(path, "residual_tol"));
  c.grad_tol = number(field(j, path, "grad_tol"), child(path, "grad_tol"));
  c.seed = unsigned_integer(field(j, path, "seed"), child(path, "seed"));
  c.step_init = number(field(j, path, "step_init"), child(path, "step_init"));
  const auto& method = string(field(j, path, "method"), child(path, "method"));
  if (method == "gauss_newton") {
    c.method = SolverMethod::GaussNewton;
  } else if (method == "gradient_descent") {
    c.method = SolverMethod::GradientDescent;
  } else {
    throw SchemaError(child(path, "method"), "unknown solver method '" + method + "'");
  }
  c.polish_iters = static_cast<std::size_t>(
      unsigned_integer(field(j, path, "polish_iters"), child(path, "polish_iters")));
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError(path.empty() ? "/" : path, e.what());
  }
  return c;
}

SolverRun solver_run_from_json(const Json& j, const std::string& path) {
  SolverRun run{solver_config_from_json(field(j, path, "config"), child(path, "config")),
                string(field(j, path, "rng"), child(path, "rng")),
                {}};
  const auto out_path = child(path, "outcomes");
  const auto& outcomes = array(field(j, path, "outcomes"), out_path);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto p = child(out_path, k);
    const auto& o = outcomes[k];
    const auto& reason = string(field(o, p, "stop_reason"), child(p, "stop_reason"));
    StopReason parsed_reason;
    if (reason == "residual") {
      parsed_reason = StopReason::Residual;
    } else if (reason == "gradient") {
      parsed_reason = StopReason::Gradient;
    } else if (reason == "max_iters") {
      parsed_reason = StopReason::MaxIters;
    } else if (reason == "line_search") {
      parsed_reason = StopReason::LineSearch;
    } else {
      throw SchemaError(child(p, "stop_reason"), "unknown stop reason '" + reason + "'");
    }
    run.outcomes.push_back(SolverOutcome{
        static_cast<std::size_t>(unsigned_integer(field(o, p, "start_index"), child(p, "start_index"))),
        boolean(field(o, p, "converged"), child(p, "converged")),
        number(field(o, p, "residual"), child(p, "residual")),
        static_cast<std::size_t>(unsigned_integer(field(o, p, "iterations"), child(p, "iterations"))),
        static_cast<std::size_t>(
            unsigned_integer(field(o, p, "polish_steps"), child(p, "polish_steps"))),
        parsed_reason,
        conjugate_pair_from_json(field(o, p, "pair"), child(p, "pair")),
        optional_number(field(o, p, "commutativity_residual"), child(p, "commutativity_residual")),
        optional_number(field(o, p, "duality_residual"), child(p, "duality_residual")),
    });
  }
  return run;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace circact::io
