#include "circact/cli.hpp"

#include "circact/category.hpp"
#include "circact/derivation.hpp"
#include "circact/error.hpp"
#include "circact/json_io.hpp"
#include "circact/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace circact {

namespace {

using io::Json;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string input;
  std::string output;
  std::vector<std::string> files; // fuse only
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t n = 2;
  std::size_t restarts = 200;
  std::size_t max_iters = 500;
  double residual_tol = 1e-10;
  std::string method = "gauss_newton";
  unsigned threads = 0;
  bool reproducible = false;
};

// A user-facing failure that maps to exit code 2.
struct UsageError {
  std::string message;
};

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path.empty() || path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) {
    throw UsageError{"cannot open input file '" + path + "'"};
  }
  buffer << file.rdbuf();
  return buffer.str();
}

// Parses one JSON document, prefixing schema diagnostics with the source name.
template <class F>
auto load(const std::string& path, std::istream& in, F&& parse_fn) {
  const std::string source = path.empty() ? "<stdin>" : path;
  try {
    return parse_fn(io::parse(read_source(path, in)));
  } catch (const SchemaError& e) {
    throw UsageError{source + ": " + e.what()};
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json error_entry(const std::string& step, const std::exception& e) {
  return {{"step", step}, {"message", e.what()}};
}

// --- subcommands -----------------------------------------------------------
// Each returns the exit status and fills `result`.

int cmd_check(const Options& o, std::istream& in, Json& result) {
  const auto obj = load(o.input, in, [](const Json& j) { return io::linear_object_from_json(j); });
  const auto report = check_homomorphism(obj, o.tol);
  result["report"] = io::to_json(report);
  result["pass"] = report.overall_pass();
  return report.overall_pass() ? kExitPass : kExitFail;
}

int cmd_conjugate(const Options& o, std::istream& in, Json& result) {
  const auto obj = load(o.input, in, [](const Json& j) { return io::linear_object_from_json(j); });
  const auto pair = canonical_dual(obj);
  const auto matrix = check_conjugate_matrix(pair, o.tol);
  const auto raw = check_conjugate_raw(pair, o.tol);
  const bool pass = matrix.overall_pass() && raw.overall_pass();
  result["pair"] = io::to_json(pair);
  result["matrix_report"] = io::to_json(matrix);
  result["raw_report"] = io::to_json(raw);
  result["pass"] = pass;
  return pass ? kExitPass : kExitFail;
}

int cmd_certify(const Options& o, std::istream& in, Json& result) {
  const auto pair = load(o.input, in, [](const Json& j) { return io::conjugate_pair_from_json(j); });
  CertificateReport report(o.tol);
  Json errors = Json::array();

  report.merge(check_conjugate_matrix(pair, o.tol), "conjugate: ");
  const std::pair<const char*, const ComplexMatrix*> parts[] = {
      {"A", &pair.a()}, {"B", &pair.b()}, {"C", &pair.c()}, {"D", &pair.d()}};
  for (const auto& [name, m] : parts) {
    const auto check = is_partial_isometry(*m, o.tol);
    report.add(std::string("partial isometry: ") + name, check.residual,
               o.tol * std::max(1.0, m->frobenius_norm()));
  }
  try {
    report.merge(polar_data(pair, o.tol).certificate, "polar: ");
  } catch (const Error& e) {
    errors.push_back(error_entry("polar_data", e));
  }
  try {
    report.merge(certify_duality(pair, o.tol), "duality: ");
  } catch (const Error& e) {
    errors.push_back(error_entry("certify_duality", e));
  }
  report.merge(certify_commutativity(pair.object(), o.tol), "commutativity: ");

  Json classical = nullptr;
  try {
    const auto dec = classical_form(pair.object(), o.tol, o.seed);
    report.add("classical: dichotomy", dichotomy_residual(pair.object(), dec),
               o.tol * std::sqrt(static_cast<double>(pair.n())));
    classical = io::to_json(dec);
  } catch (const Error& e) {
    errors.push_back(error_entry("classical_form", e));
  }

  const bool pass = report.overall_pass() && errors.empty();
  result["report"] = io::to_json(report);
  result["classical"] = std::move(classical);
  result["errors"] = std::move(errors);
  result["pass"] = pass;
  return pass ? kExitPass : kExitFail;
}

SolverMethod parse_method(const std::string& name) {
  if (name == "gauss_newton") {
    return SolverMethod::GaussNewton;
  }
  if (name == "gradient_descent") {
    return SolverMethod::GradientDescent;
  }
  throw UsageError{"--method must be gauss_newton or gradient_descent"};
}

int cmd_solve(const Options& o, std::istream&, Json& result) {
  SolverConfig config;
  config.n = o.n;
  config.restarts = o.restarts;
  config.max_iters = o.max_iters;
  config.residual_tol = o.residual_tol;
  config.seed = o.seed;
  config.method = parse_method(o.method);
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError{e.what()};
  }
  const auto run = solve(config, o.threads);
  const bool pass = run.summary().counterexamples == 0;
  result["run"] = io::to_json(run);
  result["pass"] = pass;
  return pass ? kExitPass : kExitFail;
}

int cmd_decompose(const Options& o, std::istream& in, Json& result) {
  const auto obj = load(o.input, in, [](const Json& j) { return io::linear_object_from_json(j); });
  const auto dec = decompose(obj, o.tol, o.seed);
  result["decomposition"] = io::to_json(dec);
  result["residual"] = decomposition_residual(dec);
  result["pass"] = true;
  return kExitPass;
}

int cmd_sample(const Options& o, std::istream&, Json& result) {
  if (o.n == 0 || o.n > 8) {
    throw UsageError{"--n must be between 1 and 8"};
  }
  const auto sample = draw_classical(o.n, o.seed);
  ClassicalDecomposition dec{sample.w, {}};
  for (std::size_t i = 0; i < o.n; ++i) {
    dec.characters.push_back(
        {sample.rotation_slot[i] ? CharacterKind::Rotation : CharacterKind::Reflection,
         sample.phases[i]});
  }
  result["pair"] = io::to_json(sample.pair);
  result["classical"] = io::to_json(dec);
  result["pass"] = true;
  return kExitPass;
}

int cmd_fuse(const Options& o, std::istream& in, Json& result) {
  std::vector<LinearObject> factors;
  if (!o.files.empty()) {
    if (o.files.size() != 2) {
      throw UsageError{"fuse takes exactly two object files"};
    }
    for (const auto& f : o.files) {
      factors.push_back(load(f, in, [](const Json& j) { return io::linear_object_from_json(j); }));
    }
  } else {
    factors = load(o.input, in, [](const Json& j) {
      if (!j.is_array() || j.size() != 2) {
        throw SchemaError("/", "expected an array of two objects");
      }
      return std::vector<LinearObject>{io::linear_object_from_json(j[0], "/0"),
                                       io::linear_object_from_json(j[1], "/1")};
    });
  }
  const auto product = tensor_product(factors[0], factors[1]);
  const auto dec = decompose(product, o.tol, o.seed);

  // Irreducible summands of a valid object are characters.
  Json characters = Json::array();
  bool all_characters = true;
  for (const auto& s : dec.summands) {
    try {
      if (s.object.n() != 1) {
        throw AmbiguousSlot("summand has dimension " + std::to_string(s.object.n()));
      }
      const auto c = classical_form(s.object, o.tol, o.seed).characters.front();
      characters.push_back(
          {{"kind", c.kind == CharacterKind::Rotation ? "rotation" : "reflection"},
           {"phase", io::to_json(c.phase)}});
    } catch (const Error&) {
      characters.push_back(nullptr);
      all_characters = false;
    }
  }
  result["product"] = io::to_json(product);
  result["decomposition"] = io::to_json(dec);
  result["characters"] = std::move(characters);
  result["pass"] = all_characters;
  return all_characters ? kExitPass : kExitFail;
}

int cmd_snake(const Options& o, std::istream& in, Json& result) {
  struct Input {
    std::size_t n;
    ComplexVector s, t;
  };
  const auto data = load(o.input, in, [](const Json& j) {
    if (!j.is_object()) {
      throw SchemaError("/", "expected an object");
    }
    for (const char* key : {"n", "s", "t"}) {
      if (!j.contains(key)) {
        throw SchemaError(std::string("/") + key, "missing required field");
      }
    }
    if (!j["n"].is_number_integer() || j["n"].get<std::int64_t>() <= 0) {
      throw SchemaError("/n", "expected a positive integer");
    }
    const auto n = j["n"].get<std::size_t>();
    Input out{n, io::vector_from_json(j["s"], "/s"), io::vector_from_json(j["t"], "/t")};
    for (const auto& [key, v] : {std::pair{"/s", &out.s}, std::pair{"/t", &out.t}}) {
      if (v->dim() != n * n) {
        throw SchemaError(key, "expected dimension n^2 = " + std::to_string(n * n));
      }
    }
    return out;
  });
  const auto report = check_snake(data.s, data.t, data.n, o.tol);
  result["report"] = io::to_json(report);
  result["pass"] = report.overall_pass();
  return report.overall_pass() ? kExitPass : kExitFail;
}

void write_output(const Options& o, const Json& result, std::ostream& out) {
  const auto text = io::dump(result);
  if (o.output.empty() || o.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(o.output);
  if (!file || !(file << text)) {
    throw UsageError{"cannot write output file '" + o.output + "'"};
  }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Linear coactions on the circle: checks, certificates and the solver experiment",
               "circact"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  using Handler = std::function<int(const Options&, std::istream&, Json&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const char* name, const char* help, Handler h, bool reads_input) {
    auto* sub = app.add_subcommand(name, help);
    if (reads_input) {
      sub->add_option("-i,--input", o.input, "Input JSON file (stdin when omitted)");
    }
    sub->add_option("-o,--output", o.output, "Output JSON file (stdout when omitted)");
    sub->add_option("--tol", o.tol, "Residual tolerance")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_flag("--reproducible", o.reproducible, "Omit timestamps and environment metadata");
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  add("check", "Check that a linear object is a *-homomorphism", cmd_check, true);
  add("conjugate", "Build the canonical dual of an object and verify it", cmd_conjugate, true);
  add("certify", "Run the derivation chain on a conjugate pair", cmd_certify, true);
  auto* solve_cmd = add("solve", "Run the random-restart solver experiment", cmd_solve, false);
  solve_cmd->add_option("--n", o.n, "Dimension")->capture_default_str();
  solve_cmd->add_option("--restarts", o.restarts, "Number of restarts")->capture_default_str();
  solve_cmd->add_option("--max-iters", o.max_iters, "Iterations per restart")
      ->capture_default_str();
  solve_cmd->add_option("--residual-tol", o.residual_tol, "Convergence threshold")
      ->capture_default_str();
  solve_cmd->add_option("--method", o.method, "gauss_newton or gradient_descent")
      ->capture_default_str();
  solve_cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  add("decompose", "Split an object into irreducible summands", cmd_decompose, true);
  auto* sample_cmd = add("sample", "Draw a random classical conjugate pair", cmd_sample, false);
  sample_cmd->add_option("--n", o.n, "Dimension")->capture_default_str();
  auto* fuse_cmd = add("fuse", "Tensor two objects and decompose the product", cmd_fuse, true);
  fuse_cmd->add_option("files", o.files, "Two object files (else an array of two on input)");
  add("snake", "Check the snake identities for vectors s, t", cmd_snake, true);

  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) {
    err << "circact: error: --tol must be a positive finite number\n";
    return kExitUsage;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) {
      continue;
    }
    Json result = {{"command", sub->get_name()}};
    int status;
    try {
      status = handler(o, in, result);
    } catch (const UsageError& e) {
      err << "circact: error: " << e.message << "\n";
      return kExitUsage;
    } catch (const Error& e) {
      // Well-formed input on which the computation itself fails.
      err << "circact: " << sub->get_name() << " failed: " << e.what() << "\n";
      result["pass"] = false;
      result["errors"] = Json::array({error_entry(sub->get_name(), e)});
      status = kExitFail;
    }
    if (!o.reproducible) {
      result["meta"] = {{"timestamp", utc_timestamp()}, {"version", kVersion}};
    }
    try {
      write_output(o, result, out);
    } catch (const UsageError& e) {
      err << "circact: error: " << e.message << "\n";
      return kExitUsage;
    }
    return status;
  }
  return kExitUsage;
}

} // namespace circact
