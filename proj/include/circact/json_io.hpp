#pragma once

// JSON encodings shared by every tool. Parsers take the JSON pointer of the
// node they are reading so that SchemaError can name the offending path.

#include "circact/category.hpp"
#include "circact/coaction.hpp"
#include "circact/derivation.hpp"
#include "circact/solver.hpp"

#include <json.hpp>

#include <string>

namespace circact::io {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const LinearObject& obj);
Json to_json(const ConjugatePair& pair);
Json to_json(const CertificateReport& report);
Json to_json(const ClassicalDecomposition& dec);
Json to_json(const Decomposition& dec);
Json to_json(const SolverConfig& config);
Json to_json(const SolverRun& run);

Complex complex_from_json(const Json& j, const std::string& path = "");
ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "");
ComplexVector vector_from_json(const Json& j, const std::string& path = "");
LinearObject linear_object_from_json(const Json& j, const std::string& path = "");
ConjugatePair conjugate_pair_from_json(const Json& j, const std::string& path = "");
CertificateReport certificate_from_json(const Json& j, const std::string& path = "");
ClassicalDecomposition classical_decomposition_from_json(const Json& j,
                                                         const std::string& path = "");
Decomposition decomposition_from_json(const Json& j, const std::string& path = "");
SolverConfig solver_config_from_json(const Json& j, const std::string& path = "");
SolverRun solver_run_from_json(const Json& j, const std::string& path = "");

/// Parses text, turning syntax errors into SchemaError at the root.
Json parse(const std::string& text);

/// Serialized form used by every tool: two-space indent, trailing newline.
std::string dump(const Json& j);

} // namespace circact::io
