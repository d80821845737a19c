#pragma once

// JSON and CSV formats shared by the CLI and the tests.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "icr/dist.hpp"
#include "icr/polytope.hpp"
#include "icr/symfm.hpp"
#include "icr/terms.hpp"

namespace icr::io {

using json = nlohmann::ordered_json;

// Integers as JSON numbers, everything else as "p/q".
json to_json(const Rational& r);
// Accepts integers, "p/q" strings and finite doubles (converted exactly).
Rational rational_from_json(const json& j);

// {"form": ..., "alphabets": {"Q": 2, ...}, "factors": {...}}. Throws
// SpecError naming the offending factor.
FactorSpec spec_from_json(const json& j);
json to_json(const FactorSpec& spec);

json to_json(const TermVector& terms);
json to_json(const Binding& binding);
Binding binding_from_json(const json& j);

json to_json(const Inequality& q);
json to_json(const LinearSystem& system);
LinearSystem system_from_json(const json& j);

json to_json(const Derivation& d, const AxiomSet& axioms);

// Header "R1,R2", one vertex per line, 12 significant digits.
std::string vertices_csv(const VertexList2& v);
json to_json(const VertexList2& v);

json read_json(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace icr::io
