#include "trialab/serialize.hpp"

#include <set>

namespace trialab {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError("schema error at " + where + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, "missing key '" + key + "'");
  return *it;
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) schema_error(where, "unexpected key '" + k + "'");
  }
}

std::uint64_t as_uint(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_error(where, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

const Json& sized_array(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) schema_error(where, "expected an array of length " + std::to_string(n));
  return j;
}

Json matrix_to_json(const FiniteField& F, const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(F, m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const FiniteField& F, const Json& j, const std::string& where) {
  sized_array(j, kDim, where);
  Matrix m(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    const std::string wi = where + "/" + std::to_string(i);
    sized_array(j[i], kDim, wi);
    for (std::size_t k = 0; k < kDim; ++k) m(i, k) = element_from_json(F, j[i][k], wi + "/" + std::to_string(k));
  }
  return m;
}

Json tensor_to_json(const FiniteField& F, const StructureTensor& t) {
  Json out = Json::array();
  for (std::size_t i = 0; i < kDim; ++i) {
    Json a = Json::array();
    for (std::size_t j = 0; j < kDim; ++j) {
      Json b = Json::array();
      for (std::size_t k = 0; k < kDim; ++k) b.push_back(element_to_json(F, t(i, j, k)));
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

StructureTensor tensor_from_json(const FiniteField& F, const Json& j, const std::string& where) {
  StructureTensor t;
  sized_array(j, kDim, where);
  for (std::size_t i = 0; i < kDim; ++i) {
    const std::string wi = where + "/" + std::to_string(i);
    sized_array(j[i], kDim, wi);
    for (std::size_t k = 0; k < kDim; ++k) {
      const std::string wk = wi + "/" + std::to_string(k);
      sized_array(j[i][k], kDim, wk);
      for (std::size_t l = 0; l < kDim; ++l) t(i, k, l) = element_from_json(F, j[i][k][l], wk + "/" + std::to_string(l));
    }
  }
  return t;
}

CubicCyclicExtension extension_from_json(const Json& j) {
  FiniteField F = field_from_json(member(j, "field", ""), "/field");
  const Json& e = member(j, "extension", "");
  FiniteField L = field_from_json(e, "/extension");
  CubicCyclicExtension ext = make_extension(F);
  if (!(L == ext.top())) schema_error("/extension", "not the canonical cubic extension of " + F.describe());
  return ext;
}

void check_header(const Json& j, const std::string& kind) {
  if (!j.is_object()) schema_error("", "expected an object");
  if (as_uint(member(j, "schema_version", ""), "/schema_version") != kSchemaVersion) {
    schema_error("/schema_version", "unsupported version");
  }
  const Json& k = member(j, "kind", "");
  if (!k.is_string()) schema_error("/kind", "expected a string");
  if (!kind.empty() && k.get<std::string>() != kind) {
    schema_error("/kind", "expected '" + kind + "', found '" + k.get<std::string>() + "'");
  }
}

std::string optional_string(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) return "";
  if (!it->is_string()) schema_error("/" + key, "expected a string");
  return it->get<std::string>();
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump() + "\n"; }

Json field_to_json(const FiniteField& F) {
  return {{"p", F.characteristic()}, {"k", F.degree()}, {"modulus", F.modulus()}};
}

FiniteField field_from_json(const Json& j, const std::string& where) {
  allow_keys(j, {"p", "k", "modulus"}, where);
  const auto p = as_uint(member(j, "p", where), where + "/p");
  const auto k = as_uint(member(j, "k", where), where + "/k");
  const Json& m = member(j, "modulus", where);
  sized_array(m, k + 1, where + "/modulus");
  std::vector<std::uint32_t> modulus;
  for (std::size_t i = 0; i <= k; ++i) modulus.push_back(std::uint32_t(as_uint(m[i], where + "/modulus/" + std::to_string(i))));
  if (p > 0xFFFFFFFFull) schema_error(where + "/p", "out of range");
  try {
    return FiniteField(std::uint32_t(p), modulus);
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
}

Json element_to_json(const FiniteField& F, Fe x) { return F.coords(x); }

Fe element_from_json(const FiniteField& F, const Json& j, const std::string& where) {
  sized_array(j, F.degree(), where);
  std::vector<std::uint32_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = as_uint(j[i], where + "/" + std::to_string(i));
    if (v >= F.characteristic()) schema_error(where + "/" + std::to_string(i), "coordinate not reduced mod p");
    c.push_back(std::uint32_t(v));
  }
  return F.from_coords(c);
}

Json to_json(const SymmetricComposition& s, const std::string& provenance) {
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "symmetric"},
         {"field", field_to_json(s.field)},
         {"gram", matrix_to_json(s.field, s.gram)},
         {"tensor", tensor_to_json(s.field, s.star)}};
  if (!provenance.empty()) j["provenance"] = provenance;
  return j;
}

Json to_json(const CyclicComposition& g) {
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "cyclic"},
         {"field", field_to_json(g.ext.base())},
         {"extension", field_to_json(g.ext.top())},
         {"induced_basis", g.induced_basis},
         {"gram", matrix_to_json(g.field(), g.gram)},
         {"tensor", tensor_to_json(g.field(), g.star)}};
  if (!g.provenance.empty()) j["provenance"] = g.provenance;
  return j;
}

Json to_json(const CubicCyclicExtension& ext, const SemilinearIsotopy& f) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "semilinear"},
          {"field", field_to_json(ext.base())},
          {"extension", field_to_json(ext.top())},
          {"aut_power", ((f.aut_power % 3) + 3) % 3},
          {"map", matrix_to_json(ext.top(), f.map)},
          {"multiplier", element_to_json(ext.top(), f.multiplier)}};
}

Json descent_to_json(const CubicCyclicExtension& ext, const DescentResult& d) {
  const auto& L = ext.top();
  Json basis = Json::array();
  for (std::size_t r = 0; r < d.fixed_basis.rows(); ++r) {
    Json row = Json::array();
    for (Fe x : d.fixed_basis.row(r)) row.push_back(element_to_json(ext.base(), x));
    basis.push_back(std::move(row));
  }
  return {{"xi", element_to_json(L, d.xi)},
          {"eta", element_to_json(L, d.eta)},
          {"mu", element_to_json(L, d.mu)},
          {"zeta", element_to_json(L, d.zeta)},
          {"fixed_basis", std::move(basis)},
          {"embedding", to_json(ext, d.f)},
          {"sigma", to_json(d.sigma)}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

StructureFile structure_from_json(const Json& j) {
  check_header(j, "");
  StructureFile out;
  out.kind = j["kind"].get<std::string>();
  out.provenance = optional_string(j, "provenance");
  if (out.kind == "symmetric") {
    allow_keys(j, {"schema_version", "kind", "field", "gram", "tensor", "provenance"}, "");
    FiniteField F = field_from_json(member(j, "field", ""), "/field");
    SymmetricComposition s{F, matrix_from_json(F, member(j, "gram", ""), "/gram"),
                           tensor_from_json(F, member(j, "tensor", ""), "/tensor")};
    out.symmetric = std::move(s);
  } else if (out.kind == "cyclic") {
    allow_keys(j, {"schema_version", "kind", "field", "extension", "induced_basis", "gram", "tensor", "provenance"},
               "");
    CubicCyclicExtension ext = extension_from_json(j);
    const Json& ib = member(j, "induced_basis", "");
    if (!ib.is_boolean()) schema_error("/induced_basis", "expected a boolean");
    CyclicComposition g{ext, matrix_from_json(ext.top(), member(j, "gram", ""), "/gram"),
                        tensor_from_json(ext.top(), member(j, "tensor", ""), "/tensor"), ib.get<bool>(),
                        out.provenance};
    out.cyclic = std::move(g);
  } else {
    schema_error("/kind", "expected 'symmetric' or 'cyclic', found '" + out.kind + "'");
  }
  return out;
}

StructureFile parse_structure(const std::string& text) { return structure_from_json(parse_json(text)); }

SemilinearIsotopy semilinear_from_json(const Json& j, const CubicCyclicExtension& ext) {
  check_header(j, "semilinear");
  allow_keys(j, {"schema_version", "kind", "field", "extension", "aut_power", "map", "multiplier"}, "");
  if (!(extension_from_json(j) == ext)) schema_error("/field", "map is over a different extension");
  const auto k = as_uint(member(j, "aut_power", ""), "/aut_power");
  if (k > 2) schema_error("/aut_power", "expected 0, 1 or 2");
  return {int(k), matrix_from_json(ext.top(), member(j, "map", ""), "/map"),
          element_from_json(ext.top(), member(j, "multiplier", ""), "/multiplier")};
}

std::string serialize(const SymmetricComposition& s, const std::string& provenance) {
  return canonical_dump(to_json(s, provenance));
}

std::string serialize(const CyclicComposition& g) { return canonical_dump(to_json(g)); }

}  // namespace trialab
