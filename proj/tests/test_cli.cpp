#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "trialab/cli.hpp"
#include "trialab/serialize.hpp"

using namespace trialab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("trialab_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("compose build") {
  TempDir d;
  auto r = run({"compose", "build", "--kind", "para-cayley", "--field", "7", "--out", d / "pc7.json"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("derivation_dimension 14") != std::string::npos);
  auto f = parse_structure(slurp(d / "pc7.json"));
  REQUIRE(f.symmetric);
  CHECK(validate(*f.symmetric).ok());
  CHECK(*f.symmetric == para_cayley_split(FiniteField::smallest(7, 1)));

  r = run({"compose", "build", "--kind", "okubo", "--field", "4", "--out", d / "ok4.json"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("derivation_dimension 8") != std::string::npos);

  r = run({"compose", "build", "--kind", "okubo", "--field", "5"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("unsupported field") != std::string::npos);

  // no --out: structure on stdout, summary on stderr
  r = run({"compose", "build", "--kind", "para-cayley", "--field", "2^2"});
  CHECK(r.code == kExitPass);
  CHECK(parse_structure(r.out).symmetric);
  CHECK(r.err.find("result: pass") != std::string::npos);

  CHECK(run({"compose", "build", "--kind", "jordan", "--field", "7"}).code == kExitUsage);
  CHECK(run({"compose", "build", "--field", "7"}).code == kExitUsage);
  CHECK(run({"compose", "build", "--kind", "okubo", "--field", "6"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("compose induce and validate") {
  TempDir d;
  REQUIRE(run({"compose", "build", "--kind", "okubo", "--field", "7", "--out", d / "ok7.json"}).code == 0);
  auto r = run({"compose", "induce", "--in", d / "ok7.json", "--out", d / "g7.json"});
  CHECK(r.code == kExitPass);
  auto g = parse_structure(slurp(d / "g7.json"));
  REQUIRE(g.cyclic);
  CHECK(validate(*g.cyclic).ok());
  auto s = parse_structure(slurp(d / "ok7.json"));
  CHECK(g.cyclic->star.c.size() == s.symmetric->star.c.size());
  const auto& ext = g.cyclic->ext;
  for (std::size_t n = 0; n < s.symmetric->star.c.size(); ++n) {
    CHECK(g.cyclic->star.c[n] == ext.embed(s.symmetric->star.c[n]));
  }
  CHECK(run({"compose", "validate", "--in", d / "g7.json"}).code == kExitPass);

  // inducing a cyclic file is the wrong input
  r = run({"compose", "induce", "--in", d / "g7.json", "--out", d / "x.json"});
  CHECK(r.code == kExitUsage);

  // a corrupted tensor fails validation with a witness
  auto j = parse_json(slurp(d / "ok7.json"));
  j["tensor"][0][1][2] = Json{(j["tensor"][0][1][2][0].get<int>() + 1) % 7};
  std::ofstream(d / "bad.json") << j.dump();
  r = run({"compose", "validate", "--in", d / "bad.json"});
  CHECK(r.code == kExitValidation);
  CHECK(r.out.find("[fail]") != std::string::npos);

  std::ofstream(d / "broken.json") << "{\"kind\":\n\"symmetric\",";
  r = run({"compose", "validate", "--in", d / "broken.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"compose", "validate", "--in", d / "missing.json"}).code == kExitUsage);
}

TEST_CASE("triality commands") {
  TempDir d;
  REQUIRE(run({"compose", "build", "--kind", "para-cayley", "--field", "4", "--out", d / "pc.json"}).code == 0);
  REQUIRE(run({"compose", "build", "--kind", "okubo", "--field", "4", "--out", d / "ok.json"}).code == 0);
  REQUIRE(run({"compose", "induce", "--in", d / "pc.json", "--out", d / "gpc.json"}).code == 0);
  REQUIRE(run({"compose", "induce", "--in", d / "ok.json", "--out", d / "gok.json"}).code == 0);

  auto r = run({"triality", "tau", "--gamma", d / "gpc.json", "--t", "rhohat"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("[pass] fixed_dimension") != std::string::npos);

  r = run({"triality", "descend", "--gamma", d / "gpc.json", "--t", "rhohat", "--out", d / "back.json"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("xi   = [1,0,0,0,0,0]") != std::string::npos);
  CHECK(*parse_structure(slurp(d / "back.json")).symmetric == *parse_structure(slurp(d / "pc.json")).symmetric);

  r = run({"triality", "classify", "--gamma", d / "gpc.json", "--gamma2", d / "gok.json"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("verdict: not-conjugate") != std::string::npos);
  CHECK(r.out.find("4162") != std::string::npos);
  CHECK(r.out.find("337") != std::string::npos);

  r = run({"triality", "conjugate", "--gamma", d / "gpc.json", "--scale", "--seed", "5", "--out-gamma", d / "gc.json",
           "--out-t", d / "tc.json", "--out-u", d / "u.json"});
  CHECK(r.code == kExitPass);
  r = run({"triality", "classify", "--gamma", d / "gpc.json", "--gamma2", d / "gc.json", "--t2", d / "tc.json",
           "--provenance", d / "u.json", "--report", d / "rep.json"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("verdict: conjugate") != std::string::npos);
  auto rep = parse_json(slurp(d / "rep.json"));
  CHECK(rep["verdict"] == "conjugate");
  CHECK(rep["witness"].size() == 8);
  CHECK(rep["checks"][0]["status"] == "pass");

  // rhohat needs an induced basis
  CHECK(run({"triality", "tau", "--gamma", d / "gc.json", "--t", "rhohat"}).code == kExitUsage);
  // L-linear t is not a descent input
  auto idj = to_json(parse_structure(slurp(d / "gpc.json")).cyclic->ext,
                     identity_isotopy(parse_structure(slurp(d / "gpc.json")).cyclic->ext));
  std::ofstream(d / "id.json") << canonical_dump(idj);
  r = run({"triality", "descend", "--gamma", d / "gpc.json", "--t", d / "id.json"});
  CHECK(r.code == kExitValidation);
  CHECK(r.out.find("descent.input") != std::string::npos);
  r = run({"triality", "tau", "--gamma", d / "gpc.json", "--t", d / "id.json"});
  CHECK(r.code == kExitValidation);
}

TEST_CASE("determinism and seeds") {
  TempDir d;
  REQUIRE(run({"compose", "build", "--kind", "para-cayley", "--field", "4", "--out", d / "pc.json"}).code == 0);
  REQUIRE(run({"compose", "induce", "--in", d / "pc.json", "--out", d / "g.json"}).code == 0);
  auto conj = [&](const std::string& tag, const std::vector<std::string>& extra) {
    std::vector<std::string> args{"triality", "conjugate", "--gamma", d / "g.json", "--out-gamma", d / (tag + "g.json"),
                                  "--out-t", d / (tag + "t.json")};
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(run(args).code == 0);
    return slurp(d / (tag + "g.json")) + slurp(d / (tag + "t.json"));
  };
  const auto a = conj("a", {"--seed", "17"});
  CHECK(conj("b", {"--seed", "17"}) == a);
  CHECK(conj("c", {"--seed", "18"}) != a);
  ::setenv("TRIALAB_SEED", "17", 1);
  CHECK(resolve_seed("") == 17);
  CHECK(conj("e", {}) == a);
  CHECK(resolve_seed("0x10") == 16);
  ::unsetenv("TRIALAB_SEED");
  CHECK(resolve_seed("") == kDefaultSeed);
  CHECK_THROWS_AS(resolve_seed("12abc"), Error);
  CHECK(run({"compose", "validate", "--in", d / "g.json", "--seed", "zz"}).code == kExitUsage);

  // reports are byte-identical without --timing
  REQUIRE(run({"compose", "validate", "--in", d / "g.json", "--report", d / "r1.json"}).code == 0);
  REQUIRE(run({"compose", "validate", "--in", d / "g.json", "--report", d / "r2.json"}).code == 0);
  CHECK(slurp(d / "r1.json") == slurp(d / "r2.json"));
  auto r = run({"compose", "validate", "--in", d / "g.json", "--timing"});
  CHECK(r.out.find("timing: ") != std::string::npos);
}

TEST_CASE("demo fq") {
  auto r = run({"demo", "fq", "--q", "4"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("verdict: not-conjugate") != std::string::npos);
  CHECK(r.out.find("idempotent_census       4162        337") != std::string::npos);
  CHECK(r.out.find("upper bound of 2 is cited") != std::string::npos);
  r = run({"demo", "fq", "--q", "7"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("derivation_dimension    14          8") != std::string::npos);
  CHECK(run({"demo", "fq", "--q", "5"}).code == kExitUsage);
  CHECK(run({"demo", "fq", "--q", "16"}).code == kExitUsage);
}
