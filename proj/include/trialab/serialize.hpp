#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "trialab/cyccomp.hpp"
#include "trialab/symcomp.hpp"
#include "trialab/triality.hpp"

namespace trialab {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or schema-violating input; the message carries a location
/// (line/column for syntax errors, a JSON pointer for schema errors).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Canonical text: sorted keys, no whitespace, trailing newline.
std::string canonical_dump(const Json& j);

Json field_to_json(const FiniteField& F);
FiniteField field_from_json(const Json& j, const std::string& where = "/field");
/// Coordinates over the prime field, constant term first.
Json element_to_json(const FiniteField& F, Fe x);
Fe element_from_json(const FiniteField& F, const Json& j, const std::string& where);

Json to_json(const SymmetricComposition& s, const std::string& provenance = "");
Json to_json(const CyclicComposition& g);
/// kind "semilinear": aut_power, map and multiplier over L.
Json to_json(const CubicCyclicExtension& ext, const SemilinearIsotopy& f);
/// The scalar chain and fixed basis of a descent.
Json descent_to_json(const CubicCyclicExtension& ext, const DescentResult& d);

struct StructureFile {
  std::string kind;  // symmetric | cyclic
  std::optional<SymmetricComposition> symmetric;
  std::optional<CyclicComposition> cyclic;
  std::string provenance;
};

Json parse_json(const std::string& text);
StructureFile structure_from_json(const Json& j);
StructureFile parse_structure(const std::string& text);
SemilinearIsotopy semilinear_from_json(const Json& j, const CubicCyclicExtension& ext);

std::string serialize(const SymmetricComposition& s, const std::string& provenance = "");
std::string serialize(const CyclicComposition& g);

}  // namespace trialab
