#include "trialab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "trialab/clifford.hpp"
#include "trialab/serialize.hpp"
#include "trialab/triality.hpp"

namespace trialab {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Validation failure already reported on the output stream.
struct Failed {};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw UsageError("cannot write '" + path + "'");
  o << text;
}

std::string status(bool ok) { return ok ? "pass" : "fail"; }

std::string fe_text(const FiniteField& F, Fe x) { return element_to_json(F, x).dump(); }

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string seed_flag;
  std::string report_path;
  bool timing = false;
  std::uint64_t seed = kDefaultSeed;
  Json report;
  std::chrono::steady_clock::time_point start;

  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  void begin(const std::string& command) {
    seed = resolve_seed(seed_flag);
    report = Json{{"command", command}, {"seed", seed}, {"checks", Json::array()}};
    start = std::chrono::steady_clock::now();
  }

  bool checks(const ValidationReport& rep, const std::string& prefix = "") {
    for (const auto& c : rep.checks) {
      const std::string name = prefix + c.name;
      out << "  [" << status(c.passed) << "] " << name << " (" << c.evaluated << " evaluated)";
      if (!c.passed) out << ": " << c.witness;
      out << "\n";
      Json row{{"name", name}, {"status", status(c.passed)}, {"evaluated", c.evaluated}};
      if (!c.witness.empty()) row["witness"] = c.witness;
      report["checks"].push_back(std::move(row));
    }
    return rep.ok();
  }

  bool check(const std::string& name, bool ok, const std::string& witness = "") {
    ValidationReport rep;
    rep.checks.push_back({name, ok, witness, 1});
    return checks(rep);
  }

  int finish(bool ok) {
    report["result"] = status(ok);
    if (timing) {
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report["timing"] = {{"seconds", s}};
      out << "timing: " << std::fixed << std::setprecision(3) << s << " s\n";
    }
    out << "result: " << status(ok) << "\n";
    if (!report_path.empty()) write_file(report_path, canonical_dump(report));
    return ok ? kExitPass : kExitValidation;
  }

  ValidationOptions options() const {
    ValidationOptions o;
    o.seed = seed;
    return o;
  }
};

void add_common(CLI::App* app, Context& ctx) {
  app->add_option("--seed", ctx.seed_flag, "Random seed (default: TRIALAB_SEED or 0xD4)");
  app->add_option("--report", ctx.report_path, "Write a JSON report to this file");
  app->add_flag("--timing", ctx.timing, "Report wall-clock time");
}

FiniteField field_from_spec(const std::string& spec) {
  try {
    auto [p, k] = parse_field_spec(spec);
    return FiniteField::smallest(p, k);
  } catch (const Error& e) {
    throw UsageError(std::string("unsupported field: ") + e.what());
  }
}

CubicCyclicExtension extension_of(const FiniteField& F) {
  try {
    return make_extension(F);
  } catch (const Error& e) {
    throw UsageError(std::string("unsupported field: ") + e.what());
  }
}

SymmetricComposition build_kind(const std::string& kind, const FiniteField& F) {
  try {
    if (kind == "para-cayley") return para_cayley_split(F);
    return okubo(F);
  } catch (const Error& e) {
    throw UsageError(std::string("unsupported field: ") + e.what());
  }
}

SymmetricComposition load_symmetric(const std::string& path) {
  auto f = parse_structure(read_file(path));
  if (!f.symmetric) throw UsageError("'" + path + "' holds a " + f.kind + " composition, expected symmetric");
  return *f.symmetric;
}

CyclicComposition load_cyclic(const std::string& path) {
  auto f = parse_structure(read_file(path));
  if (!f.cyclic) throw UsageError("'" + path + "' holds a " + f.kind + " composition, expected cyclic");
  return *f.cyclic;
}

SemilinearIsotopy load_t(const std::string& spec, const CyclicComposition& g) {
  if (spec == "rhohat" || spec == "thetahat") {
    if (!g.induced_basis) throw UsageError("--t " + spec + " needs an induced composition");
    auto t = hat_rho(g);
    return spec == "rhohat" ? t : power(g.ext, t, 2);
  }
  return semilinear_from_json(parse_json(read_file(spec)), g.ext);
}

void emit(Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty()) {
    ctx.out << text;
  } else {
    write_file(path, text);
    ctx.out << "wrote " << path << "\n";
  }
}

std::string optional_count(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "-"; }

// ---------------------------------------------------------------------------

int cmd_build(Context& ctx, const std::string& kind, const std::string& spec, const std::string& out_path) {
  // with no --out the structure goes to stdout and the summary to stderr
  Context log(out_path.empty() ? ctx.err : ctx.out, ctx.err);
  log.seed_flag = ctx.seed_flag;
  log.report_path = ctx.report_path;
  log.timing = ctx.timing;
  log.begin("compose build");
  const FiniteField F = field_from_spec(spec);
  const auto s = build_kind(kind, F);
  log.out << "compose build: " << kind << " over " << F.describe() << "\n";
  const bool ok = log.checks(validate(s, log.options()));
  const auto der = derivation_dimension(s);
  log.out << "  derivation_dimension " << der << "\n";
  log.report["derivation_dimension"] = der;
  if (out_path.empty()) {
    ctx.out << serialize(s, kind);
  } else {
    write_file(out_path, serialize(s, kind));
    log.out << "wrote " << out_path << "\n";
  }
  return log.finish(ok);
}

int cmd_induce(Context& ctx, const std::string& in, const std::string& out_path) {
  ctx.begin("compose induce");
  const auto s = load_symmetric(in);
  const auto ext = extension_of(s.field);
  auto g = induce(s, ext);
  ctx.out << "compose induce: " << s.field.describe() << " -> " << ext.top().describe() << "\n";
  bool ok = ctx.checks(validate(s, ctx.options()), "sigma.");
  ok = ctx.checks(validate(g, ctx.options()), "gamma.") && ok;
  if (!ok) return ctx.finish(false);
  emit(ctx, out_path, serialize(g));
  return ctx.finish(true);
}

int cmd_validate(Context& ctx, const std::string& in) {
  ctx.begin("compose validate");
  auto f = parse_structure(read_file(in));
  bool ok;
  if (f.symmetric) {
    ctx.out << "compose validate: symmetric over " << f.symmetric->field.describe() << "\n";
    ok = ctx.checks(validate(*f.symmetric, ctx.options()));
  } else {
    ctx.out << "compose validate: cyclic over " << f.cyclic->field().describe() << "\n";
    ok = ctx.checks(validate(*f.cyclic, ctx.options()));
  }
  return ctx.finish(ok);
}

int cmd_tau(Context& ctx, const std::string& gamma, const std::string& t_spec, bool with_alpha) {
  ctx.begin("triality tau");
  const auto g = load_cyclic(gamma);
  const TrialitarianAut tau{g, load_t(t_spec, g)};
  ctx.out << "triality tau: t is " << (tau.t.aut_power == 1 ? "rho" : tau.t.aut_power == 2 ? "theta" : "L")
          << "-semilinear over " << g.field().describe() << "\n";
  std::optional<AlphaStar> alpha;
  if (with_alpha) alpha = alpha_star_assemble(g);
  const bool ok = ctx.checks(check_trialitarian(tau, alpha ? &*alpha : nullptr));
  return ctx.finish(ok);
}

int cmd_descend(Context& ctx, const std::string& gamma, const std::string& t_spec, const std::string& out_path) {
  ctx.begin("triality descend");
  const auto g = load_cyclic(gamma);
  const auto t = load_t(t_spec, g);
  const auto& L = g.field();
  DescentResult d = [&] {
    try {
      return descend(g, t);
    } catch (const DescentError& e) {
      ctx.check("descent." + to_string(e.step()), false, e.what());
      throw Failed{};
    }
  }();
  ctx.out << "triality descend over " << g.ext.base().describe() << "\n";
  ctx.out << "  xi   = " << fe_text(L, d.xi) << "\n";
  ctx.out << "  eta  = " << fe_text(L, d.eta) << "\n";
  ctx.out << "  mu   = " << fe_text(L, d.mu) << "\n";
  ctx.out << "  zeta = " << fe_text(L, d.zeta) << "\n";
  ctx.out << "  dim_F S = " << d.fixed_basis.rows() << "\n";
  ctx.report["scalars"] = descent_to_json(g.ext, d);
  bool ok = ctx.check("xi_in_base", g.ext.in_base(d.xi));
  ok = ctx.check("norm_mu_one", norm(g.ext, d.mu) == L.one()) && ok;
  ok = ctx.check("hilbert90", L.mul(d.zeta, L.inv(g.ext.theta(d.zeta))) == d.mu) && ok;
  ok = ctx.checks(validate(d.sigma, ctx.options()), "sigma.") && ok;
  ok = ctx.check("embedding_isotopy", is_isotopy(induce(d.sigma, g.ext), g, d.f)) && ok;
  ctx.out << "  derivation_dimension " << derivation_dimension(d.sigma) << "\n";
  if (!out_path.empty()) emit(ctx, out_path, serialize(d.sigma, "descended"));
  return ctx.finish(ok);
}

void print_classification(Context& ctx, const Classification& c) {
  ctx.out << "  " << std::left << std::setw(24) << "invariant" << std::setw(12) << "first" << "second\n";
  Json rows = Json::array();
  for (const auto& r : c.invariants) {
    ctx.out << "  " << std::left << std::setw(24) << r.name << std::setw(12) << optional_count(r.first)
            << optional_count(r.second) << "\n";
    Json row{{"name", r.name}};
    row["first"] = r.first ? Json(*r.first) : Json(nullptr);
    row["second"] = r.second ? Json(*r.second) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  ctx.out << std::right;
  ctx.out << "verdict: " << to_string(c.verdict) << "\n";
  ctx.out << "evidence: " << c.evidence << "\n";
  ctx.report["invariants"] = rows;
  ctx.report["verdict"] = to_string(c.verdict);
  ctx.report["evidence"] = c.evidence;
  if (c.witness) {
    Json w = Json::array();
    for (std::size_t i = 0; i < kDim; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < kDim; ++j) row.push_back(element_to_json(c.first.sigma.field, (*c.witness)(i, j)));
      w.push_back(std::move(row));
    }
    ctx.report["witness"] = w;
  }
}

int cmd_classify(Context& ctx, const std::string& gamma, const std::string& t_spec, std::string gamma2,
                 std::string t2_spec, const std::string& provenance) {
  ctx.begin("triality classify");
  if (gamma2.empty()) gamma2 = gamma;
  if (t2_spec.empty()) t2_spec = t_spec;
  const auto g1 = load_cyclic(gamma), g2 = load_cyclic(gamma2);
  if (!(g1.ext == g2.ext)) throw UsageError("the two compositions live over different extensions");
  const auto t1 = load_t(t_spec, g1), t2 = load_t(t2_spec, g2);
  std::optional<SemilinearIsotopy> u;
  if (!provenance.empty()) u = semilinear_from_json(parse_json(read_file(provenance)), g1.ext);
  ctx.out << "triality classify over " << g1.ext.base().describe() << "\n";
  Classification c = [&] {
    try {
      return classify_conjugacy(g1, t1, g2, t2, u);
    } catch (const DescentError& e) {
      ctx.check("descent." + to_string(e.step()), false, e.what());
      throw Failed{};
    }
  }();
  print_classification(ctx, c);
  if (c.witness) ctx.check("witness_isomorphism", check_isomorphism(c.first.sigma, c.second.sigma, *c.witness));
  return ctx.finish(true);
}

int cmd_conjugate(Context& ctx, const std::string& gamma, const std::string& t_spec, bool scale,
                  const std::string& out_gamma, const std::string& out_t, const std::string& out_u) {
  ctx.begin("triality conjugate");
  const auto g = load_cyclic(gamma);
  const auto t = load_t(t_spec, g);
  const auto& L = g.field();
  Rng rng(ctx.seed);
  const SemilinearIsotopy h{0, random_invertible(L, rng, kDim), L.one()};
  auto target = pushforward(g, h);
  target.provenance = "transported";
  auto th = compose(g.ext, h, compose(g.ext, t, invert(g.ext, h)));
  if (scale) {
    th.map = la::scale(L, random_nonzero(L, rng), th.map);
    th.multiplier = multiplier_extract(target, target, th.aut_power, th.map);
  }
  ctx.out << "triality conjugate: random L-linear transport over " << L.describe() << "\n";
  bool ok = ctx.check("transport_isotopy", is_isotopy(g, target, h));
  ok = ctx.check("conjugate_isotopy", is_isotopy(target, target, th)) && ok;
  write_file(out_gamma, serialize(target));
  write_file(out_t, canonical_dump(to_json(g.ext, th)));
  if (!out_u.empty()) write_file(out_u, canonical_dump(to_json(g.ext, h)));
  ctx.out << "wrote " << out_gamma << ", " << out_t << (out_u.empty() ? "" : ", " + out_u) << "\n";
  return ctx.finish(ok);
}

int cmd_demo(Context& ctx, std::uint32_t q) {
  ctx.begin("demo fq");
  if (q % 3 != 1 || (q % 2 == 0 && q != 4)) {
    throw UsageError("demo needs q = 4 or q odd with q = 1 mod 3, got " + std::to_string(q));
  }
  const FiniteField F = field_from_spec(std::to_string(q));
  const auto ext = extension_of(F);
  ctx.out << "demo over " << F.describe() << " with L = " << ext.top().describe() << "\n";
  bool ok = true;
  std::vector<CyclicComposition> gammas;
  const std::vector<std::string> kinds{"para-cayley", "okubo"};
  for (const auto& kind : kinds) {
    ctx.out << kind << ":\n";
    const auto s = build_kind(kind, F);
    auto g = induce(s, ext);
    ok = ctx.checks(validate(s, ctx.options()), kind + ".sigma.") && ok;
    ok = ctx.checks(validate(g, ctx.options()), kind + ".gamma.") && ok;
    const TrialitarianAut tau{g, hat_rho(g)};
    ok = ctx.checks(check_trialitarian(tau), kind + ".tau.") && ok;
    ok = ctx.check(kind + ".round_trip", descend(g, tau.t).sigma == s) && ok;
    gammas.push_back(std::move(g));
  }
  ctx.out << "classification:\n";
  const auto c = classify_conjugacy(gammas[0], hat_rho(gammas[0]), gammas[1], hat_rho(gammas[1]));
  print_classification(ctx, c);
  ok = ctx.check("distinct_classes", c.verdict == Verdict::not_conjugate, c.evidence) && ok;
  const std::string lower = c.verdict == Verdict::not_conjugate
                                ? "at least 2 conjugacy classes certified by differing invariants"
                                : "lower bound not certified";
  ctx.out << "conjugacy classes: " << lower << "; the upper bound of 2 is cited from the literature, not computed\n";
  ctx.report["classes"] = {{"lower_bound_certified", c.verdict == Verdict::not_conjugate ? 2 : 1},
                           {"upper_bound", "cited"}};
  return ctx.finish(ok);
}

}  // namespace

std::uint64_t resolve_seed(const std::string& flag_value) {
  std::string v = flag_value;
  if (v.empty()) {
    const char* env = std::getenv("TRIALAB_SEED");
    if (env && *env) v = env;
  }
  if (v.empty()) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto s = std::stoull(v, &used, 0);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return s;
  } catch (const std::exception&) {
    throw UsageError("malformed seed '" + v + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx(out, err);
  CLI::App app{"Symmetric compositions, cyclic compositions and trialitarian automorphisms over finite fields",
               "trialab"};
  app.require_subcommand(1);
  app.fallthrough();
  add_common(&app, ctx);

  std::function<int()> action;

  auto* compose = app.add_subcommand("compose", "Build, induce and validate compositions");
  compose->require_subcommand(1);
  compose->fallthrough();

  std::string kind, field, in, out_path;
  auto* build = compose->add_subcommand("build", "Construct a symmetric composition");
  build->add_option("--kind", kind, "para-cayley or okubo")
      ->required()
      ->check(CLI::IsMember({"para-cayley", "okubo"}));
  build->add_option("--field", field, "Field order q or p^k")->required();
  build->add_option("--out", out_path, "Output file (default: stdout)");
  build->callback([&] { action = [&] { return cmd_build(ctx, kind, field, out_path); }; });

  auto* ind = compose->add_subcommand("induce", "Induced cyclic composition over the cubic extension");
  ind->add_option("--in", in, "Symmetric composition file")->required();
  ind->add_option("--out", out_path, "Output file")->required();
  ind->callback([&] { action = [&] { return cmd_induce(ctx, in, out_path); }; });

  auto* val = compose->add_subcommand("validate", "Validate a structure file");
  val->add_option("--in", in, "Structure file")->required();
  val->callback([&] { action = [&] { return cmd_validate(ctx, in); }; });

  auto* tri = app.add_subcommand("triality", "Trialitarian automorphisms");
  tri->require_subcommand(1);
  tri->fallthrough();

  std::string gamma, t_spec = "rhohat", gamma2, t2_spec, provenance, out_t, out_u;
  bool with_alpha = false, scale = false;
  auto* tau = tri->add_subcommand("tau", "Check Int(t) on the 64 matrix units");
  tau->add_option("--gamma", gamma, "Cyclic composition file")->required();
  tau->add_option("--t", t_spec, "rhohat, thetahat or a semilinear map file");
  tau->add_flag("--alpha", with_alpha, "Also check compatibility with the even Clifford identification");
  tau->callback([&] { action = [&] { return cmd_tau(ctx, gamma, t_spec, with_alpha); }; });

  auto* desc = tri->add_subcommand("descend", "Recover the symmetric composition fixed by t");
  desc->add_option("--gamma", gamma, "Cyclic composition file")->required();
  desc->add_option("--t", t_spec, "rhohat or a semilinear map file");
  desc->add_option("--out", out_path, "Output file for the descended composition");
  desc->callback([&] { action = [&] { return cmd_descend(ctx, gamma, t_spec, out_path); }; });

  auto* cls = tri->add_subcommand("classify", "Compare two trialitarian automorphisms up to conjugacy");
  cls->add_option("--gamma", gamma, "First cyclic composition")->required();
  cls->add_option("--t", t_spec, "First map: rhohat, thetahat or a file");
  cls->add_option("--gamma2", gamma2, "Second cyclic composition (default: the first)");
  cls->add_option("--t2", t2_spec, "Second map (default: the first)");
  cls->add_option("--provenance", provenance, "L-linear isotopy from the first composition to the second");
  cls->callback([&] { action = [&] { return cmd_classify(ctx, gamma, t_spec, gamma2, t2_spec, provenance); }; });

  auto* conj = tri->add_subcommand("conjugate", "Transport t along a seeded random L-linear map");
  conj->add_option("--gamma", gamma, "Cyclic composition file")->required();
  conj->add_option("--t", t_spec, "rhohat or a semilinear map file");
  conj->add_flag("--scale", scale, "Also multiply the transported map by a random scalar");
  conj->add_option("--out-gamma", out_path, "Transported composition")->required();
  conj->add_option("--out-t", out_t, "Transported map")->required();
  conj->add_option("--out-u", out_u, "The transport map itself");
  conj->callback([&] {
    action = [&] { return cmd_conjugate(ctx, gamma, t_spec, scale, out_path, out_t, out_u); };
  });

  auto* demo = app.add_subcommand("demo", "Reproduction drivers");
  demo->require_subcommand(1);
  demo->fallthrough();
  std::uint32_t q = 4;
  auto* fq = demo->add_subcommand("fq", "Both compositions over GF(q), their tau's and the class count");
  fq->add_option("--q", q, "Field order")->required();
  fq->callback([&] { action = [&] { return cmd_demo(ctx, q); }; });

  for (auto* sub : {build, ind, val, tau, desc, cls, conj, fq}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  try {
    return action();
  } catch (const Failed&) {
    return ctx.finish(false);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace trialab
