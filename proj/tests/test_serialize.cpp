#include "doctest.h"
#include "trialab/serialize.hpp"

using namespace trialab;

TEST_CASE("field descriptor") {
  auto F = FiniteField::smallest(2, 2);
  auto j = field_to_json(F);
  CHECK(j.dump() == R"({"k":2,"modulus":[1,1,1],"p":2})");
  CHECK(field_from_json(j) == F);
  CHECK_THROWS_AS(field_from_json(Json{{"p", 2}, {"k", 2}, {"modulus", {1, 0, 1}}}), ParseError);
  CHECK_THROWS_AS(field_from_json(Json{{"p", 4}, {"k", 1}, {"modulus", {1, 1}}}), ParseError);
  CHECK_THROWS_AS(field_from_json(Json{{"p", 2}, {"k", 2}, {"modulus", {1, 1, 1}}, {"x", 0}}), ParseError);
  for (std::uint32_t v = 0; v < F.order(); ++v) CHECK(element_from_json(F, element_to_json(F, Fe{v}), "") == Fe{v});
  CHECK_THROWS_AS(element_from_json(F, Json{1, 2}, "/e"), ParseError);
  CHECK_THROWS_AS(element_from_json(F, Json{1}, "/e"), ParseError);
}

TEST_CASE("structure files round-trip") {
  for (auto [p, k] : {std::pair{2u, 2u}, {7u, 1u}}) {
    auto F = FiniteField::smallest(p, k);
    for (const auto& s : {para_cayley_split(F), okubo(F)}) {
      const std::string text = serialize(s, "test");
      auto f = parse_structure(text);
      REQUIRE(f.symmetric);
      CHECK(*f.symmetric == s);
      CHECK(f.provenance == "test");
      CHECK(serialize(*f.symmetric, f.provenance) == text);

      auto g = induce(s, make_extension(F));
      const std::string gt = serialize(g);
      auto fg = parse_structure(gt);
      REQUIRE(fg.cyclic);
      CHECK(*fg.cyclic == g);
      CHECK(serialize(*fg.cyclic) == gt);
    }
  }
}

TEST_CASE("canonical form") {
  auto F = FiniteField::smallest(7, 1);
  const std::string text = serialize(para_cayley_split(F));
  CHECK(text.back() == '\n');
  CHECK(text.find(' ') == std::string::npos);
  // keys in sorted order
  CHECK(text.rfind(R"({"field":{"k":1,"modulus":)", 0) == 0);
  CHECK(text.find(R"("gram")") < text.find(R"("kind")"));
  CHECK(text.find(R"("kind")") < text.find(R"("schema_version")"));
  CHECK(text.find(R"("schema_version")") < text.find(R"("tensor")"));
  // reordered keys and whitespace parse to the same structure
  auto j = parse_json(text);
  CHECK(canonical_dump(parse_json(j.dump(2))) == text);
}

TEST_CASE("semilinear maps round-trip") {
  auto F = FiniteField::smallest(2, 2);
  auto ext = make_extension(F);
  const auto& L = ext.top();
  Rng rng(1);
  SemilinearIsotopy f{2, random_invertible(L, rng, kDim), random_nonzero(L, rng)};
  auto j = to_json(ext, f);
  CHECK(semilinear_from_json(j, ext) == f);
  CHECK_THROWS_AS(semilinear_from_json(j, make_extension(FiniteField::smallest(7, 1))), ParseError);
  j["aut_power"] = 3;
  CHECK_THROWS_AS(semilinear_from_json(j, ext), ParseError);
}

TEST_CASE("descent audit record") {
  auto F = FiniteField::smallest(7, 1);
  auto ext = make_extension(F);
  auto s = okubo(F);
  auto g = induce(s, ext);
  auto d = descend(g, hat_rho(g));
  auto j = descent_to_json(ext, d);
  for (const char* key : {"xi", "eta", "mu", "zeta"}) CHECK(j[key] == Json({1, 0, 0}));
  CHECK(j["fixed_basis"].size() == 8);
  CHECK(j["fixed_basis"][0].size() == 24);
  CHECK(*structure_from_json(j["sigma"]).symmetric == s);
}

TEST_CASE("schema errors carry a location") {
  auto F = FiniteField::smallest(7, 1);
  auto j = to_json(para_cayley_split(F));
  auto expect_error = [](const Json& bad, const std::string& where) {
    try {
      structure_from_json(bad);
      FAIL("accepted malformed structure");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(where) != std::string::npos);
    }
  };
  auto bad = j;
  bad["tensor"][3][2][1] = Json{9};
  expect_error(bad, "/tensor/3/2/1/0");
  bad = j;
  bad["gram"][7].erase(bad["gram"][7].begin());
  expect_error(bad, "/gram/7");
  bad = j;
  bad["kind"] = "jordan";
  expect_error(bad, "/kind");
  bad = j;
  bad.erase("schema_version");
  expect_error(bad, "schema_version");
  bad = j;
  bad["schema_version"] = 2;
  expect_error(bad, "/schema_version");

  auto g = to_json(induce(para_cayley_split(F), make_extension(F)));
  bad = g;
  bad["extension"] = field_to_json(FiniteField(7, {2, 0, 0, 1}));
  expect_error(bad, "/extension");

  try {
    parse_structure("{\"kind\": \"symmetric\",\n  \"gram\": [1,}");
    FAIL("accepted malformed JSON");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
