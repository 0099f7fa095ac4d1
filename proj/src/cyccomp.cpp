#include "trialab/cyccomp.hpp"

#include <string>

#include "trialab/quadratic.hpp"

namespace trialab {

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
  return "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Vec tensor_product(const FiniteField& L, const StructureTensor& t, const Vec& x, const Vec& y) {
  Vec r(kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].v == 0) continue;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (y[j].v == 0) continue;
      const Fe c = L.mul(x[i], y[j]);
      for (std::size_t k = 0; k < kDim; ++k) r[k] = L.fma(r[k], c, t(i, j, k));
    }
  }
  return r;
}

StructureTensor aut_tensor(const CubicCyclicExtension& ext, const StructureTensor& t, int power) {
  StructureTensor r;
  for (std::size_t n = 0; n < t.c.size(); ++n) r.c[n] = ext.aut(t.c[n], power);
  return r;
}

void require_dim(const Vec& x) {
  if (x.size() != kDim) throw Error("vector of length " + std::to_string(x.size()) + " where 8 was expected");
}

}  // namespace

Vec CyclicComposition::product(const Vec& x, const Vec& y) const {
  require_dim(x);
  require_dim(y);
  return tensor_product(field(), star, ext.aut(x, 1), ext.aut(y, 2));
}

Fe CyclicComposition::quadratic(const Vec& x) const { return quadratic_value(field(), gram, x); }

Fe CyclicComposition::polar(const Vec& x, const Vec& y) const { return polar_value(field(), gram, x, y); }

Vec CyclicComposition::basis(std::size_t i) const {
  Vec e(kDim);
  e[i] = field().one();
  return e;
}

CyclicComposition induce(const SymmetricComposition& s, const CubicCyclicExtension& ext) {
  if (!(s.field == ext.base())) {
    throw Error("symmetric composition over " + s.field.describe() + " cannot be induced to an extension of " +
                ext.base().describe());
  }
  CyclicComposition g{ext, Matrix(kDim, kDim), {}, true, ""};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) g.gram(i, j) = ext.embed(s.gram(i, j));
  for (std::size_t n = 0; n < s.star.c.size(); ++n) g.star.c[n] = ext.embed(s.star.c[n]);
  return g;
}

ValidationReport validate(const CyclicComposition& g, const ValidationOptions& opts) {
  ValidationReport rep;
  const auto& L = g.field();
  const auto& ext = g.ext;
  {
    CheckResult c{"gram_form", is_canonical_gram(L, g.gram), "", 1};
    if (!c.passed) c.witness = L.characteristic() == 2 ? "gram not upper triangular" : "gram not symmetric";
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"gram_nondegenerate", is_nondegenerate(L, g.gram), "", 1};
    if (!c.passed) c.witness = "det(b_Q) = 0";
    rep.checks.push_back(c);
  }
  {
    // b(e_i * e_j, e_k) = rho(b(e_j * e_k, e_i)) = theta(b(e_k * e_i, e_j))
    CheckResult c{"bq_cyclicity", true, "", 0};
    const Matrix B = polar_matrix(L, g.gram);
    auto b = [&](std::size_t i, std::size_t j, std::size_t k) {
      Fe s{};
      for (std::size_t l = 0; l < kDim; ++l) s = L.fma(s, g.star(i, j, l), B(l, k));
      return s;
    };
    for (std::size_t i = 0; i < kDim && c.passed; ++i) {
      for (std::size_t j = 0; j < kDim && c.passed; ++j) {
        for (std::size_t k = 0; k < kDim; ++k) {
          ++c.evaluated;
          const Fe v0 = b(i, j, k), v1 = ext.rho(b(j, k, i)), v2 = ext.theta(b(k, i, j));
          if (v0 != v1 || v0 != v2) {
            c.passed = false;
            c.witness = "basis triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
            break;
          }
        }
      }
    }
    rep.checks.push_back(c);
  }
  {
    CheckResult m{"multiplicativity", true, "", 0};
    CheckResult f{"flexibility", true, "", 0};
    Rng rng(opts.seed);
    for (std::size_t n = 0; n < opts.random_pairs; ++n) {
      Vec x = random_vector(L, rng, kDim);
      Vec y = random_vector(L, rng, kDim);
      const Fe qx = g.quadratic(x);
      Vec xy = g.product(x, y);
      if (m.passed) {
        ++m.evaluated;
        if (g.quadratic(xy) != L.mul(ext.rho(qx), ext.theta(g.quadratic(y)))) {
          m.passed = false;
          m.witness = "pair " + std::to_string(n) + " x=" + format_vec(x) + " y=" + format_vec(y);
        }
      }
      if (f.passed) {
        ++f.evaluated;
        // (x * y) * x = theta(Q(x)) y and x * (y * x) = rho(Q(x)) y
        if (g.product(xy, x) != la::scale(L, ext.theta(qx), y) ||
            g.product(x, g.product(y, x)) != la::scale(L, ext.rho(qx), y)) {
          f.passed = false;
          f.witness = "pair " + std::to_string(n) + " x=" + format_vec(x) + " y=" + format_vec(y);
        }
      }
    }
    rep.checks.push_back(m);
    rep.checks.push_back(f);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Semilinear isotopies

SemilinearIsotopy identity_isotopy(const CubicCyclicExtension& ext) {
  return {0, Matrix::identity(ext.top(), kDim), ext.top().one()};
}

Vec apply(const CubicCyclicExtension& ext, const SemilinearIsotopy& f, const Vec& x) {
  return la::apply(ext.top(), f.map, ext.aut(x, f.aut_power));
}

SemilinearIsotopy compose(const CubicCyclicExtension& ext, const SemilinearIsotopy& f1, const SemilinearIsotopy& f2) {
  const auto& L = ext.top();
  SemilinearIsotopy r;
  r.aut_power = (f1.aut_power + f2.aut_power) % 3;
  r.map = la::mul(L, f1.map, ext.aut(f2.map, f1.aut_power));
  r.multiplier = L.mul(ext.aut(f1.multiplier, 3 - f2.aut_power), f2.multiplier);
  return r;
}

SemilinearIsotopy invert(const CubicCyclicExtension& ext, const SemilinearIsotopy& f) {
  const auto& L = ext.top();
  auto inv = la::inverse(L, f.map);
  if (!inv) throw Error("semilinear map with singular matrix has no inverse");
  if (f.multiplier.v == 0) throw Error("isotopy multiplier is zero");
  const int back = (3 - f.aut_power) % 3;
  return {back, ext.aut(*inv, back), ext.aut(L.inv(f.multiplier), f.aut_power)};
}

SemilinearIsotopy power(const CubicCyclicExtension& ext, const SemilinearIsotopy& f, unsigned n) {
  SemilinearIsotopy r = identity_isotopy(ext);
  for (unsigned i = 0; i < n; ++i) r = compose(ext, f, r);
  return r;
}

ValidationReport check_isotopy(const CyclicComposition& g, const CyclicComposition& h, const SemilinearIsotopy& f) {
  ValidationReport rep;
  const auto& L = g.field();
  const auto& ext = g.ext;
  if (!(g.ext == h.ext)) {
    rep.checks.push_back({"same_extension", false, "compositions over different extensions", 1});
    return rep;
  }
  const bool invertible = f.map.rows() == kDim && f.map.cols() == kDim && la::inverse(L, f.map).has_value();
  rep.checks.push_back({"invertible", invertible, invertible ? "" : "singular map", 1});
  rep.checks.push_back({"multiplier_nonzero", f.multiplier.v != 0, f.multiplier.v ? "" : "multiplier is 0", 1});
  if (!invertible) return rep;
  const int nu = f.aut_power;
  const Fe nu_mu = ext.aut(f.multiplier, nu);
  const Fe qscale = ext.aut(L.mul(ext.rho(f.multiplier), ext.theta(f.multiplier)), nu);
  std::vector<Vec> img(kDim);
  for (std::size_t i = 0; i < kDim; ++i) img[i] = f.map.column(i);

  CheckResult q{"quadratic", true, "", 0};
  CheckResult p{"product", true, "", 0};
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i; j < kDim && q.passed; ++j) {
      ++q.evaluated;
      const Fe lhs = i == j ? h.quadratic(img[i]) : h.polar(img[i], img[j]);
      const Fe base = i == j ? g.gram(i, i) : g.polar(g.basis(i), g.basis(j));
      if (lhs != L.mul(qscale, ext.aut(base, nu))) {
        q.passed = false;
        q.witness = pair_name(i, j);
      }
    }
    for (std::size_t j = 0; j < kDim && p.passed; ++j) {
      ++p.evaluated;
      Vec lhs = h.product(img[i], img[j]);
      Vec rhs = la::scale(L, nu_mu, la::apply(L, f.map, ext.aut(g.star.product(i, j), nu)));
      if (lhs != rhs) {
        p.passed = false;
        p.witness = pair_name(i, j);
      }
    }
  }
  rep.checks.push_back(q);
  rep.checks.push_back(p);
  return rep;
}

bool is_isotopy(const CyclicComposition& g, const CyclicComposition& h, const SemilinearIsotopy& f) {
  return check_isotopy(g, h, f).ok();
}

Fe multiplier_extract(const CyclicComposition& g, const CyclicComposition& h, int aut_power, const Matrix& T) {
  const auto& L = g.field();
  const auto& ext = g.ext;
  aut_power = ((aut_power % 3) + 3) % 3;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      Vec fij = la::apply(L, T, ext.aut(g.star.product(i, j), aut_power));
      if (la::is_zero(fij)) continue;
      Vec lhs = h.product(T.column(i), T.column(j));
      std::size_t k = 0;
      while (fij[k].v == 0) ++k;
      const Fe nu_mu = L.div(lhs[k], fij[k]);
      const Fe mu = ext.aut(nu_mu, 3 - aut_power);
      SemilinearIsotopy f{aut_power, T, mu};
      auto rep = check_isotopy(g, h, f);
      if (!rep.ok()) {
        const auto* bad = rep.first_failure();
        throw Error("map is not an isotopy for any multiplier: " + bad->name + " fails at " + bad->witness);
      }
      return mu;
    }
  }
  throw Error("map kills every basis product; no multiplier can be read off");
}

CyclicComposition pushforward(const CyclicComposition& g, const SemilinearIsotopy& f) {
  const auto& L = g.field();
  const auto& ext = g.ext;
  auto Tinv = la::inverse(L, f.map);
  if (!Tinv) throw Error("pushforward along a singular map");
  CyclicComposition h{ext, {}, {}, false, g.provenance};
  h.gram = canonical_gram(L, la::mul(L, la::transpose(*Tinv), la::mul(L, ext.aut(g.gram, f.aut_power), *Tinv)));
  const SemilinearIsotopy finv = invert(ext, f);
  std::vector<Vec> pre(kDim);
  for (std::size_t i = 0; i < kDim; ++i) pre[i] = apply(ext, finv, h.basis(i));
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) h.star.set_product(i, j, apply(ext, f, g.product(pre[i], pre[j])));
  return h;
}

SemilinearIsotopy hat_rho(const CyclicComposition& g) {
  if (!g.induced_basis) throw Error("rho-hat needs a composition carrying its induced basis");
  return {1, Matrix::identity(g.field(), kDim), g.field().one()};
}

// ---------------------------------------------------------------------------
// Split form

Vec SplitCyclicTriple::component_product(int c, const Vec& x, const Vec& y) const {
  return tensor_product(ext.top(), tensors[c], x, y);
}

SplitCyclicTriple::Element SplitCyclicTriple::diamond(const Element& x, const Element& y) const {
  return {component_product(0, x[1], y[2]), component_product(1, x[2], y[0]), component_product(2, x[0], y[1])};
}

SplitCyclicTriple::Scalar SplitCyclicTriple::quadratic(const Element& x) const {
  const auto& L = ext.top();
  return {quadratic_value(L, grams[0], x[0]), quadratic_value(L, grams[1], x[1]), quadratic_value(L, grams[2], x[2])};
}

SplitCyclicTriple::Scalar SplitCyclicTriple::shift(const Scalar& s, int power) {
  power = ((power % 3) + 3) % 3;
  return {s[power % 3], s[(power + 1) % 3], s[(power + 2) % 3]};
}

SplitCyclicTriple::Element SplitCyclicTriple::scale(const Scalar& s, const Element& x) const {
  const auto& L = ext.top();
  return {la::scale(L, s[0], x[0]), la::scale(L, s[1], x[1]), la::scale(L, s[2], x[2])};
}

SplitCyclicTriple split_form(const CyclicComposition& g) {
  SplitCyclicTriple t{g.ext, {}, {}};
  for (int c = 0; c < 3; ++c) {
    t.grams[c] = g.ext.aut(g.gram, c);
    t.tensors[c] = aut_tensor(g.ext, g.star, c);
  }
  return t;
}

SplitCyclicTriple::Element split_map(const CyclicComposition& g, const PureTensorSum& u) {
  const auto& L = g.field();
  SplitCyclicTriple::Element r{Vec(kDim), Vec(kDim), Vec(kDim)};
  for (const auto& [x, l] : u) {
    for (int c = 0; c < 3; ++c) r[c] = la::add(L, r[c], la::scale(L, l, g.ext.aut(x, c)));
  }
  return r;
}

SplitCyclicTriple::Scalar split_scalar(const CubicCyclicExtension& ext, Fe a, Fe b) {
  const auto& L = ext.top();
  return {L.mul(a, b), L.mul(ext.rho(a), b), L.mul(ext.theta(a), b)};
}

ValidationReport verify_split_form(const CyclicComposition& g, std::size_t pairs, std::uint64_t seed) {
  const auto& L = g.field();
  const auto& ext = g.ext;
  const SplitCyclicTriple t = split_form(g);
  Rng rng(seed);
  auto random_tensor = [&]() {
    PureTensorSum u;
    for (int r = 0; r < 3; ++r) u.emplace_back(random_vector(L, rng, kDim), random_element(L, rng));
    return u;
  };
  auto add_scalar = [&](SplitCyclicTriple::Scalar& acc, const SplitCyclicTriple::Scalar& s) {
    for (int c = 0; c < 3; ++c) acc[c] = L.add(acc[c], s[c]);
  };
  CheckResult prod{"split_product", true, "", 0};
  CheckResult quad{"split_quadratic", true, "", 0};
  CheckResult semi{"split_semilinearity", true, "", 0};
  CheckResult shift{"split_shift", true, "", 0};
  for (std::size_t n = 0; n < pairs; ++n) {
    PureTensorSum u = random_tensor(), v = random_tensor();
    const auto fu = split_map(g, u), fv = split_map(g, v);
    // (x (x) a) * (y (x) b) = (x * y) (x) ab
    PureTensorSum uv;
    for (const auto& [x, a] : u)
      for (const auto& [y, b] : v) uv.emplace_back(g.product(x, y), L.mul(a, b));
    ++prod.evaluated;
    if (prod.passed && split_map(g, uv) != t.diamond(fu, fv)) {
      prod.passed = false;
      prod.witness = "sample " + std::to_string(n);
    }
    // Q(sum x_r (x) a_r) = sum Q(x_r) (x) a_r^2 + sum_{r<s} b(x_r, x_s) (x) a_r a_s
    SplitCyclicTriple::Scalar qu{};
    for (std::size_t r = 0; r < u.size(); ++r) {
      add_scalar(qu, split_scalar(ext, g.quadratic(u[r].first), L.mul(u[r].second, u[r].second)));
      for (std::size_t s = r + 1; s < u.size(); ++s)
        add_scalar(qu, split_scalar(ext, g.polar(u[r].first, u[s].first), L.mul(u[r].second, u[s].second)));
    }
    ++quad.evaluated;
    if (quad.passed && t.quadratic(fu) != qu) {
      quad.passed = false;
      quad.witness = "sample " + std::to_string(n);
    }
    const Fe a = random_element(L, rng), b = random_element(L, rng);
    const auto c = split_scalar(ext, a, b);
    const auto d = t.diamond(fu, fv);
    ++semi.evaluated;
    if (semi.passed && (t.diamond(t.scale(c, fu), fv) != t.scale(SplitCyclicTriple::shift(c, 1), d) ||
                        t.diamond(fu, t.scale(c, fv)) != t.scale(SplitCyclicTriple::shift(c, 2), d))) {
      semi.passed = false;
      semi.witness = "sample " + std::to_string(n);
    }
    ++shift.evaluated;
    if (shift.passed && SplitCyclicTriple::shift(c, 1) != split_scalar(ext, ext.rho(a), b)) {
      shift.passed = false;
      shift.witness = "sample " + std::to_string(n);
    }
  }
  ValidationReport rep;
  rep.checks = {prod, quad, semi, shift};
  return rep;
}

}  // namespace trialab
