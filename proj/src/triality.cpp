#include "trialab/triality.hpp"

#include <string>

#include "trialab/quadratic.hpp"

namespace trialab {

namespace {

constexpr std::size_t kUnits = kDim * kDim;
constexpr std::size_t kRationalDim = 3 * kDim;  // V as an F-space

Matrix scalar_matrix(const FiniteField& L, Fe c) { return la::scale(L, c, Matrix::identity(L, kDim)); }

/// F-coordinates of v in V = L^8, index 3i + c for the coefficient of gamma^c e_i.
Vec rational_coords(const CubicCyclicExtension& ext, const Vec& v) {
  Vec r(kRationalDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    auto c = ext.to_base_coords(v[i]);
    for (std::size_t d = 0; d < 3; ++d) r[3 * i + d] = c[d];
  }
  return r;
}

Vec from_rational(const CubicCyclicExtension& ext, std::span<const Fe> r) {
  Vec v(kDim);
  for (std::size_t i = 0; i < kDim; ++i) v[i] = ext.from_base_coords({r[3 * i], r[3 * i + 1], r[3 * i + 2]});
  return v;
}

std::optional<Fe> proportional(const FiniteField& L, const Matrix& target, const Matrix& m) {
  for (std::size_t n = 0; n < m.data().size(); ++n) {
    if (m.data()[n].v == 0) continue;
    const Fe k = L.div(target.data()[n], m.data()[n]);
    if (la::scale(L, k, m) == target) return k;
    return std::nullopt;
  }
  return std::nullopt;
}

Matrix embed_matrix(const CubicCyclicExtension& ext, const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  for (std::size_t n = 0; n < m.data().size(); ++n) r.data()[n] = ext.embed(m.data()[n]);
  return r;
}

Matrix rank_one(const CyclicComposition& g, const Vec& x, const Vec& y) {
  const auto& L = g.field();
  Vec by = la::apply(L, polar_matrix(L, g.gram), y);
  Matrix m(kDim, kDim);
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t l = 0; l < kDim; ++l) m(k, l) = L.mul(x[k], by[l]);
  return m;
}

}  // namespace

Matrix inner_action(const CubicCyclicExtension& ext, const SemilinearIsotopy& t, const Matrix& m) {
  const auto& L = ext.top();
  auto inv = la::inverse(L, t.map);
  if (!inv) throw Error("inner automorphism of a singular map");
  return la::mul(L, t.map, la::mul(L, ext.aut(m, t.aut_power), *inv));
}

Matrix TrialitarianAut::apply(const Matrix& m) const { return inner_action(gamma.ext, t, m); }

Matrix adjoint_involution(const CyclicComposition& g, const Matrix& m) {
  const auto& L = g.field();
  const Matrix B = polar_matrix(L, g.gram);
  auto Binv = la::inverse(L, B);
  if (!Binv) throw Error("adjoint involution of a degenerate form");
  return la::mul(L, *Binv, la::mul(L, la::transpose(m), B));
}

std::vector<Matrix> matrix_units(const FiniteField& L) {
  std::vector<Matrix> units;
  units.reserve(kUnits);
  for (std::size_t a = 0; a < kDim; ++a) {
    for (std::size_t b = 0; b < kDim; ++b) {
      Matrix e(kDim, kDim);
      e(a, b) = L.one();
      units.push_back(e);
    }
  }
  return units;
}

std::size_t fixed_subalgebra_dimension(const TrialitarianAut& tau) {
  const auto& ext = tau.gamma.ext;
  const auto& F = ext.base();
  const auto& L = ext.top();
  if (tau.t.aut_power % 3 == 0) throw Error("fixed subalgebra needs a rho- or theta-semilinear t");
  const auto units = matrix_units(L);
  for (const auto& e : units) {
    if (tau.apply(tau.apply(tau.apply(e))) != e) throw Error("tau does not have order 3");
  }
  // F-basis gamma^c E_ab of End_L V; column (8a + b) * 3 + c
  const std::size_t n = 3 * kUnits;
  Matrix m(n, n);
  const Fe gamma = ext.cubic_generator();
  for (std::size_t u = 0; u < kUnits; ++u) {
    Fe gc = L.one();
    for (std::size_t c = 0; c < 3; ++c, gc = L.mul(gc, gamma)) {
      Matrix x = la::scale(L, gc, units[u]);
      Matrix d = la::sub(L, tau.apply(x), x);
      for (std::size_t e = 0; e < kUnits; ++e) {
        auto coords = ext.to_base_coords(d.data()[e]);
        for (std::size_t k = 0; k < 3; ++k) m(3 * e + k, 3 * u + c) = coords[k];
      }
    }
  }
  return n - la::rank(F, m);
}

ValidationReport check_trialitarian(const TrialitarianAut& tau, const AlphaStar* alpha) {
  const auto& g = tau.gamma;
  const auto& ext = g.ext;
  const auto& L = g.field();
  ValidationReport rep;
  const int k = ((tau.t.aut_power % 3) + 3) % 3;
  rep.checks.push_back({"aut_power", k != 0, k != 0 ? "" : "t is L-linear", 1});
  if (k == 0) return rep;
  {
    auto iso = check_isotopy(g, g, tau.t);
    CheckResult c{"isotopy", iso.ok(), "", 1};
    if (!c.passed) c.witness = iso.first_failure()->name + " " + iso.first_failure()->witness;
    rep.checks.push_back(c);
  }
  const auto units = matrix_units(L);
  CheckResult cube{"order_three", true, "", 0};
  CheckResult sigma{"commutes_with_sigma", true, "", 0};
  for (std::size_t u = 0; u < kUnits; ++u) {
    const Matrix t1 = tau.apply(units[u]);
    ++cube.evaluated;
    if (cube.passed && tau.apply(tau.apply(t1)) != units[u]) {
      cube.passed = false;
      cube.witness = "unit E_" + std::to_string(u / kDim) + std::to_string(u % kDim);
    }
    ++sigma.evaluated;
    if (sigma.passed && tau.apply(adjoint_involution(g, units[u])) != adjoint_involution(g, t1)) {
      sigma.passed = false;
      sigma.witness = "unit E_" + std::to_string(u / kDim) + std::to_string(u % kDim);
    }
  }
  rep.checks.push_back(cube);
  rep.checks.push_back(sigma);
  {
    CheckResult c{"center_action", true, "", 0};
    for (Fe lam : {ext.cubic_generator(), L.generator()}) {
      ++c.evaluated;
      if (tau.apply(scalar_matrix(L, lam)) != scalar_matrix(L, ext.aut(lam, k))) {
        c.passed = false;
        c.witness = "scalar " + std::to_string(lam.v);
      }
    }
    rep.checks.push_back(c);
  }
  {
    // tau(x (x) y) = nu(mu_q)^{-1} t(x) (x) t(y)
    CheckResult c{"rank_one_transport", true, "", 0};
    const Fe mu_q = L.mul(ext.rho(tau.t.multiplier), ext.theta(tau.t.multiplier));
    const Fe s = mu_q.v ? L.inv(ext.aut(mu_q, k)) : L.zero();
    for (std::size_t i = 0; i < kDim && c.passed; ++i) {
      for (std::size_t j = 0; j < kDim; ++j) {
        ++c.evaluated;
        Matrix lhs = tau.apply(rank_one(g, g.basis(i), g.basis(j)));
        Matrix rhs = la::scale(L, s, rank_one(g, tau.t.map.column(i), tau.t.map.column(j)));
        if (lhs != rhs) {
          c.passed = false;
          c.witness = "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
      }
    }
    rep.checks.push_back(c);
  }
  if (cube.passed) {
    const std::size_t d = fixed_subalgebra_dimension(tau);
    rep.checks.push_back({"fixed_dimension", d == kUnits, d == kUnits ? "" : "dimension " + std::to_string(d), 1});
  } else {
    rep.checks.push_back({"fixed_dimension", false, "tau does not have order 3", 0});
  }
  if (alpha) {
    CheckResult c{"alpha0_compatible", true, "", 1};
    try {
      psi_u_extract(g, *alpha, as_quadratic(ext, tau.t));
    } catch (const SwitchCaseError& e) {
      c.passed = false;
      c.witness = std::string("switch case: ") + e.what();
    } catch (const Error& e) {
      c.passed = false;
      c.witness = e.what();
    }
    rep.checks.push_back(c);
  }
  return rep;
}

TrialitarianAut tau_from_symmetric(const SymmetricComposition& s, const CubicCyclicExtension& ext) {
  auto g = induce(s, ext);
  TrialitarianAut tau{g, hat_rho(g)};
  auto rep = check_trialitarian(tau);
  if (!rep.ok()) throw Error("tau fails " + rep.first_failure()->name + ": " + rep.first_failure()->witness);
  return tau;
}

TrialitarianAut tau_from_symmetric(const SymmetricComposition& s, const CubicCyclicExtension& ext,
                                   const CyclicComposition& target, const SemilinearIsotopy& f) {
  auto g = induce(s, ext);
  if (f.aut_power % 3 != 0) throw Error("f must be L-linear");
  auto iso = check_isotopy(g, target, f);
  if (!iso.ok()) {
    throw Error("f is not an isotopy: " + iso.first_failure()->name + " " + iso.first_failure()->witness);
  }
  TrialitarianAut tau{target, compose(ext, f, compose(ext, hat_rho(g), invert(ext, f)))};
  auto rep = check_trialitarian(tau);
  if (!rep.ok()) throw Error("tau fails " + rep.first_failure()->name + ": " + rep.first_failure()->witness);
  return tau;
}

std::vector<Matrix> inner_images(const CubicCyclicExtension& ext, const SemilinearIsotopy& u) {
  std::vector<Matrix> out;
  for (const auto& e : matrix_units(ext.top())) out.push_back(inner_action(ext, u, e));
  return out;
}

SemilinearIsotopy skolem_noether_semilinear(const CyclicComposition& g, const std::vector<Matrix>& phi, int aut_power) {
  const auto& L = g.field();
  const auto& ext = g.ext;
  aut_power = ((aut_power % 3) + 3) % 3;
  if (phi.size() != kUnits) throw Error("need the images of all 64 matrix units");
  // T E_ab = phi(E_ab) T, unknown T_rs at index 8r + s
  la::RowReducer red(L, kUnits);
  for (std::size_t a = 0; a < kDim; ++a) {
    for (std::size_t b = 0; b < kDim; ++b) {
      const Matrix& p = phi[a * kDim + b];
      for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = 0; c < kDim; ++c) {
          Vec row(kUnits);
          if (b == c) row[r * kDim + a] = L.one();
          for (std::size_t s = 0; s < kDim; ++s) row[s * kDim + c] = L.sub(row[s * kDim + c], p(r, s));
          red.add(std::move(row));
        }
      }
      if (red.rank() == kUnits) throw Error("phi is not an algebra automorphism: only T = 0 intertwines it");
    }
  }
  Matrix ker = red.kernel();
  if (ker.rows() != 1) {
    throw Error("phi is not an algebra automorphism: intertwiner space has dimension " + std::to_string(ker.rows()));
  }
  Matrix T(kDim, kDim);
  for (std::size_t n = 0; n < kUnits; ++n) T(n / kDim, n % kDim) = ker(0, n);
  // first nonzero entry, scanning columns, becomes 1
  Fe lead{};
  for (std::size_t c = 0; c < kDim && lead.v == 0; ++c)
    for (std::size_t r = 0; r < kDim && lead.v == 0; ++r) lead = T(r, c);
  T = la::scale(L, L.inv(lead), T);
  if (!la::inverse(L, T)) throw Error("phi is not an algebra automorphism: intertwiner is singular");
  SemilinearIsotopy u{aut_power, T, L.one()};
  for (std::size_t n = 0; n < kUnits; ++n) {
    if (inner_action(ext, u, matrix_units(L)[n]) != phi[n]) throw Error("phi is not an inner semilinear automorphism");
  }
  try {
    u.multiplier = multiplier_extract(g, g, aut_power, T);
  } catch (const Error& e) {
    throw Error(std::string("phi is not compatible with the trialitarian structure: ") + e.what());
  }
  return u;
}

// ---------------------------------------------------------------------------
// Descent

std::string to_string(DescentStep step) {
  switch (step) {
    case DescentStep::input: return "input";
    case DescentStep::cube: return "cube";
    case DescentStep::norm: return "norm";
    case DescentStep::multiplier: return "multiplier";
    case DescentStep::hilbert90: return "hilbert90";
    case DescentStep::rescale: return "rescale";
    case DescentStep::fixed_space: return "fixed_space";
    case DescentStep::restriction: return "restriction";
    case DescentStep::embedding: return "embedding";
  }
  return "unknown";
}

DescentResult descend(const CyclicComposition& g, const SemilinearIsotopy& t) {
  const auto& ext = g.ext;
  const auto& F = ext.base();
  const auto& L = ext.top();
  if (t.aut_power % 3 != 1) throw DescentError(DescentStep::input, "t must be rho-semilinear");
  if (!la::inverse(L, t.map)) throw DescentError(DescentStep::input, "t is singular");

  struct {
    SemilinearIsotopy f;
    Fe xi, eta, mu, zeta;
    SemilinearIsotopy t_normalized;
    Matrix fixed_basis;
  } r;
  // (1) t^3 is a scalar of F^x
  const auto t3 = power(ext, t, 3);
  const Fe xi = t3.map(0, 0);
  if (xi.v == 0 || t3.map != scalar_matrix(L, xi)) throw DescentError(DescentStep::cube, "t^3 is not a scalar");
  auto xi_f = ext.restrict(xi);
  if (!xi_f) throw DescentError(DescentStep::cube, "t^3 is a scalar outside F");
  r.xi = xi;

  // (2) xi = N(eta), t <- eta^{-1} t
  r.eta = solve_norm_equation(ext, *xi_f);
  SemilinearIsotopy tn{1, la::scale(L, L.inv(r.eta), t.map), L.one()};
  if (power(ext, tn, 3).map != Matrix::identity(L, kDim)) throw DescentError(DescentStep::norm, "(eta^-1 t)^3 != Id");

  // (3) multiplier with N(mu) = 1
  try {
    r.mu = multiplier_extract(g, g, 1, tn.map);
  } catch (const Error& e) {
    throw DescentError(DescentStep::multiplier, e.what());
  }
  if (norm(ext, r.mu) != L.one()) throw DescentError(DescentStep::multiplier, "N(mu) != 1");
  tn.multiplier = r.mu;
  r.t_normalized = tn;

  // (4) mu = zeta theta(zeta)^{-1}
  r.zeta = hilbert90(ext, r.mu, GaloisAut::theta);
  if (L.mul(r.zeta, L.inv(ext.theta(r.zeta))) != r.mu) throw DescentError(DescentStep::hilbert90, "resolvent failed");

  // (5) Q' = rho(zeta) theta(zeta) Q, x *' y = zeta (x * y)
  CyclicComposition gp{ext, la::scale(L, L.mul(ext.rho(r.zeta), ext.theta(r.zeta)), g.gram), {}, false, ""};
  for (std::size_t n = 0; n < g.star.c.size(); ++n) gp.star.c[n] = L.mul(r.zeta, g.star.c[n]);
  if (!is_isotopy(gp, gp, {1, tn.map, L.one()})) {
    throw DescentError(DescentStep::rescale, "t is not an automorphism of the rescaled composition");
  }

  // (6) S = ker(t - Id) over F
  Matrix tf(kRationalDim, kRationalDim);
  {
    const Fe gamma = ext.cubic_generator();
    Fe gc = L.one();
    for (std::size_t c = 0; c < 3; ++c, gc = L.mul(gc, gamma)) {
      const Fe rg = ext.rho(gc);
      for (std::size_t i = 0; i < kDim; ++i) {
        Vec img = la::scale(L, rg, tn.map.column(i));
        Vec coords = rational_coords(ext, img);
        coords[3 * i + c] = F.sub(coords[3 * i + c], F.one());
        tf.set_column(3 * i + c, coords);
      }
    }
  }
  r.fixed_basis = la::kernel(F, tf);
  if (r.fixed_basis.rows() != kDim) {
    throw DescentError(DescentStep::fixed_space, "dim_F S = " + std::to_string(r.fixed_basis.rows()));
  }
  std::vector<std::size_t> pivots;
  std::vector<Vec> s(kDim);
  for (std::size_t k = 0; k < kDim; ++k) {
    auto row = r.fixed_basis.row(k);
    std::size_t pv = 0;
    while (row[pv].v == 0) ++pv;
    pivots.push_back(pv);
    s[k] = from_rational(ext, row);
  }

  // (7) restrict Q' and *' to S
  SymmetricComposition sigma{F, Matrix(kDim, kDim), {}};
  Vec values(kDim);
  Matrix polar(kDim, kDim);
  try {
    for (std::size_t a = 0; a < kDim; ++a) {
      values[a] = ext.restrict_or_throw(gp.quadratic(s[a]));
      for (std::size_t b = 0; b < kDim; ++b) polar(a, b) = ext.restrict_or_throw(gp.polar(s[a], s[b]));
    }
  } catch (const Error& e) {
    throw DescentError(DescentStep::restriction, std::string("form not F-valued on S: ") + e.what());
  }
  sigma.gram = gram_from_polar(F, values, polar);
  for (std::size_t a = 0; a < kDim; ++a) {
    for (std::size_t b = 0; b < kDim; ++b) {
      const Vec w = gp.product(s[a], s[b]);
      const Vec wc = rational_coords(ext, w);
      Vec back(kDim);
      Vec coef(kDim);
      for (std::size_t k = 0; k < kDim; ++k) {
        coef[k] = wc[pivots[k]];
        back = la::add(L, back, la::scale(L, ext.embed(coef[k]), s[k]));
      }
      if (back != w) throw DescentError(DescentStep::restriction, "product leaves S");
      sigma.star.set_product(a, b, coef);
    }
  }
  auto rep = validate(sigma);
  if (!rep.ok()) {
    throw DescentError(DescentStep::restriction,
                       rep.first_failure()->name + " fails at " + rep.first_failure()->witness);
  }

  // (8) f : Sigma (x) L -> gamma, multiplier zeta^{-1}
  r.f = {0, Matrix::from_columns(s), L.inv(r.zeta)};
  const auto induced = induce(sigma, ext);
  if (!is_isotopy(induced, g, r.f)) throw DescentError(DescentStep::embedding, "f is not an isotopy");
  const auto back = compose(ext, r.f, compose(ext, hat_rho(induced), invert(ext, r.f)));
  if (back != tn) throw DescentError(DescentStep::embedding, "t != f rho-hat f^{-1}");
  return {sigma, r.f, r.xi, r.eta, r.mu, r.zeta, r.t_normalized, r.fixed_basis};
}

Matrix transport_witness(const CyclicComposition& g1, const DescentResult& d1, const CyclicComposition& g2,
                         const DescentResult& d2, const SemilinearIsotopy& u) {
  const auto& ext = g1.ext;
  const auto& L = ext.top();
  if (!(g1.ext == g2.ext)) throw Error("compositions over different extensions");
  if (u.aut_power % 3 != 0) throw Error("provenance map must be L-linear");
  if (!is_isotopy(g1, g2, u)) throw Error("provenance map is not an isotopy");
  const auto s = compose(ext, u, compose(ext, d1.t_normalized, invert(ext, u)));
  auto c = proportional(L, s.map, d2.t_normalized.map);
  if (!c) throw Error("provenance map does not conjugate t1 to a multiple of t2");
  // (k u) t1 (k u)^{-1} = k rho(k)^{-1} c t2, so k = hilbert90(c^{-1})
  const Fe k = hilbert90(ext, L.inv(*c), GaloisAut::rho);
  const Matrix U = la::scale(L, k, u.map);
  auto f2inv = la::inverse(L, d2.f.map);
  const Matrix W = la::mul(L, *f2inv, la::mul(L, U, d1.f.map));
  Matrix w(kDim, kDim);
  for (std::size_t n = 0; n < W.data().size(); ++n) {
    auto x = ext.restrict(W.data()[n]);
    if (!x) throw Error("transported map is not F-rational");
    w.data()[n] = *x;
  }
  auto lambda = symmetric_multiplier(d1.sigma, d2.sigma, w);
  if (!lambda) throw Error("transported map is not an isotopy of symmetric compositions");
  Matrix iso = isotopy_to_isomorphism(d1.sigma, d2.sigma, {w, *lambda});
  if (!check_isomorphism(d1.sigma, d2.sigma, iso)) throw Error("internal: witness is not an isomorphism");
  return iso;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::conjugate: return "conjugate";
    case Verdict::not_conjugate: return "not-conjugate";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

namespace {

SemilinearIsotopy rho_form(const CubicCyclicExtension& ext, const SemilinearIsotopy& t) {
  const int k = ((t.aut_power % 3) + 3) % 3;
  if (k == 1) return t;
  if (k == 2) return power(ext, t, 2);
  throw Error("t must be rho- or theta-semilinear");
}

}  // namespace

Classification classify_conjugacy(const CyclicComposition& g1, const SemilinearIsotopy& t1,
                                  const CyclicComposition& g2, const SemilinearIsotopy& t2,
                                  const std::optional<SemilinearIsotopy>& provenance) {
  auto d1 = descend(g1, rho_form(g1.ext, t1));
  auto d2 = descend(g2, rho_form(g2.ext, t2));
  Classification c{Verdict::undecided, {}, "", std::nullopt, std::move(d1), std::move(d2)};
  const auto& s1 = c.first.sigma;
  const auto& s2 = c.second.sigma;
  c.invariants.push_back({"derivation_dimension", derivation_dimension(s1), derivation_dimension(s2)});
  if (census_feasible(s1.field)) {
    c.invariants.push_back({"idempotent_census", idempotent_census(s1), idempotent_census(s2)});
  } else {
    c.invariants.push_back({"idempotent_census", std::nullopt, std::nullopt});
  }
  for (const auto& row : c.invariants) {
    if (row.first && row.second && *row.first != *row.second) {
      c.verdict = Verdict::not_conjugate;
      c.evidence = row.name + " differs: " + std::to_string(*row.first) + " vs " + std::to_string(*row.second);
      return c;
    }
  }
  if (provenance) {
    try {
      c.witness = transport_witness(g1, c.first, g2, c.second, *provenance);
      c.verdict = Verdict::conjugate;
      c.evidence = "isomorphism transported from the provenance isotopy";
      return c;
    } catch (const Error& e) {
      c.evidence = std::string("provenance map gave no witness: ") + e.what();
    }
  }
  const Matrix I = Matrix::identity(s1.field, kDim);
  if (s1.field == s2.field && check_isomorphism(s1, s2, I)) {
    c.witness = I;
    c.verdict = Verdict::conjugate;
    c.evidence = "descended compositions coincide";
    return c;
  }
  c.verdict = Verdict::undecided;
  if (c.evidence.empty()) c.evidence = "invariants agree and no witness isomorphism is known";
  return c;
}

bool extend_and_commute_check(const SymmetricComposition& s, const CubicCyclicExtension& ext, const Matrix& g) {
  if (!check_isomorphism(s, s, g)) throw Error("map is not an automorphism of the symmetric composition");
  const auto& L = ext.top();
  const SemilinearIsotopy ge{0, embed_matrix(ext, g), L.one()};
  const SemilinearIsotopy rh{1, Matrix::identity(L, kDim), L.one()};
  for (const auto& e : matrix_units(L)) {
    if (inner_action(ext, ge, inner_action(ext, rh, e)) != inner_action(ext, rh, inner_action(ext, ge, e))) {
      return false;
    }
  }
  return true;
}

SemilinearIsotopy rational_isotopy(const CyclicComposition& g, const Matrix& aut, int rho_power, Fe lambda) {
  const auto& ext = g.ext;
  const auto& L = ext.top();
  SemilinearIsotopy u{((rho_power % 3) + 3) % 3, la::scale(L, lambda, embed_matrix(ext, aut)), L.one()};
  u.multiplier = multiplier_extract(g, g, u.aut_power, u.map);
  return u;
}

}  // namespace trialab
