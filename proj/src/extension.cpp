#include "trialab/extension.hpp"

namespace trialab {

namespace {

// Evaluate a polynomial with GF(p) coefficients at x in `L`.
Fe eval_prime_poly(const FiniteField& L, std::span<const std::uint32_t> coeffs, Fe x) {
  Fe r = L.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    r = L.add(L.mul(r, x), L.from_int(coeffs[i]));
  }
  return r;
}

}  // namespace

CubicCyclicExtension::CubicCyclicExtension(const FiniteField& base)
    : base_(base), top_(FiniteField::smallest(base.characteristic(), 3 * base.degree())) {
  const FiniteField& L = top_;
  const std::uint32_t p = base.characteristic();
  const unsigned k = base.degree();
  const std::uint32_t q = base.order();
  auto s = std::make_shared<State>(State{FiniteField::smallest(p, 1), {}, {}, {}, {}, 0, {}, {}});

  // Embedding: send the modulus root of F to the smallest root in L.
  Fe root{};
  bool found = false;
  if (k == 1) {
    root = L.zero();  // unused: F = GF(p) embeds as the prime field
    found = true;
  } else {
    for (std::uint32_t i = 0; i < L.order() && !found; ++i) {
      if (eval_prime_poly(L, base.modulus(), Fe{i}) == L.zero()) {
        root = Fe{i};
        found = true;
      }
    }
  }
  if (!found) throw Error("no embedding of " + base.describe() + " into " + L.describe());
  s->embed.resize(q);
  s->restrict.assign(L.order(), -1);
  for (std::uint32_t a = 0; a < q; ++a) {
    auto c = base.coords(Fe{a});
    Fe img = L.zero();
    if (k == 1) {
      img = L.from_int(c[0]);
    } else {
      img = eval_prime_poly(L, c, root);
    }
    s->embed[a] = img.v;
    s->restrict[img.v] = std::int32_t(a);
  }

  s->frob.resize(L.order());
  for (std::uint32_t x = 0; x < L.order(); ++x) s->frob[x] = L.pow(Fe{x}, q).v;

  const unsigned n = 3 * k;
  const FiniteField& P = s->prime;
  s->rho_matrix = Matrix(n, n);
  std::uint32_t basis = 1;
  for (unsigned j = 0; j < n; ++j, basis *= p) {
    auto c = L.coords(Fe{s->frob[basis]});
    for (unsigned i = 0; i < n; ++i) s->rho_matrix(i, j) = Fe{c[i]};
  }

  for (std::uint32_t x = 0; x < L.order(); ++x) {
    if (s->restrict[x] < 0) {
      s->gamma = x;
      break;
    }
  }

  // from_base: column (b*k + a) holds L-coordinates of emb(alpha^a) gamma^b.
  s->from_base = Matrix(n, n);
  Fe gpow = L.one();
  for (unsigned b = 0; b < 3; ++b) {
    std::uint32_t alpha_a = 1;
    for (unsigned a = 0; a < k; ++a, alpha_a *= p) {
      Fe v = L.mul(Fe{s->embed[alpha_a]}, gpow);
      auto c = L.coords(v);
      for (unsigned i = 0; i < n; ++i) s->from_base(i, b * k + a) = Fe{c[i]};
    }
    gpow = L.mul(gpow, Fe{s->gamma});
  }
  auto inv = la::inverse(P, s->from_base);
  if (!inv) throw Error("internal: {1, gamma, gamma^2} is not a basis");
  s->to_base = *inv;
  s_ = std::move(s);
}

std::optional<Fe> CubicCyclicExtension::restrict(Fe x) const {
  const auto r = s_->restrict[x.v];
  if (r < 0) return std::nullopt;
  return Fe{std::uint32_t(r)};
}

Fe CubicCyclicExtension::restrict_or_throw(Fe x) const {
  auto r = restrict(x);
  if (!r) throw Error("element of " + top_.describe() + " does not lie in " + base_.describe());
  return *r;
}

Fe CubicCyclicExtension::aut(Fe x, int power) const {
  switch (((power % 3) + 3) % 3) {
    case 0:
      return x;
    case 1:
      return rho(x);
    default:
      return theta(x);
  }
}

Vec CubicCyclicExtension::aut(const Vec& x, int power) const {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = aut(x[i], power);
  return y;
}

Matrix CubicCyclicExtension::aut(const Matrix& m, int power) const {
  Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) r.data()[i] = aut(m.data()[i], power);
  return r;
}

std::array<Fe, 3> CubicCyclicExtension::to_base_coords(Fe x) const {
  const unsigned k = base_.degree();
  auto c = top_.coords(x);
  Vec cv(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) cv[i] = Fe{c[i]};
  Vec r = la::apply(s_->prime, s_->to_base, cv);
  std::array<Fe, 3> out{};
  std::vector<std::uint32_t> block(k);
  for (unsigned b = 0; b < 3; ++b) {
    for (unsigned a = 0; a < k; ++a) block[a] = r[b * k + a].v;
    out[b] = base_.from_coords(block);
  }
  return out;
}

Fe CubicCyclicExtension::from_base_coords(const std::array<Fe, 3>& c) const {
  const FiniteField& L = top_;
  const Fe g = cubic_generator();
  return L.add(embed(c[0]), L.mul(g, L.add(embed(c[1]), L.mul(g, embed(c[2])))));
}

Fe norm(const CubicCyclicExtension& ext, Fe x) {
  const auto& L = ext.top();
  return L.mul(x, L.mul(ext.rho(x), ext.theta(x)));
}

Fe trace(const CubicCyclicExtension& ext, Fe x) {
  const auto& L = ext.top();
  return L.add(x, L.add(ext.rho(x), ext.theta(x)));
}

Fe solve_norm_equation(const CubicCyclicExtension& ext, Fe xi) {
  const auto& L = ext.top();
  if (xi.v == 0) throw Error("norm equation N(eta) = 0 has no solution in L^x");
  const Fe target = ext.embed(xi);
  const Fe g = L.generator();
  const Fe h = norm(ext, g);  // generates F^x
  const std::uint32_t q = ext.base().order();
  Fe hp = L.one();
  for (std::uint32_t e = 0; e + 1 < q; ++e) {
    if (hp == target) return L.pow(g, e);
    hp = L.mul(hp, h);
  }
  // Exhaustive fallback (never reached when N(g) generates F^x).
  for (std::uint32_t i = 1; i < L.order(); ++i) {
    if (norm(ext, Fe{i}) == target) return Fe{i};
  }
  throw Error("internal: norm map not surjective");
}

Fe hilbert90(const CubicCyclicExtension& ext, Fe mu, GaloisAut which) {
  const auto& L = ext.top();
  if (norm(ext, mu) != L.one()) throw Error("hilbert90 requires N(mu) = 1");
  const int pw = aut_power(which);
  const Fe mu_a = L.mul(mu, ext.aut(mu, pw));
  const unsigned n = L.degree();
  const std::uint32_t p = L.characteristic();
  std::uint32_t c = 1;
  for (unsigned i = 0; i < n; ++i, c *= p) {
    const Fe cv{c};
    Fe zeta = L.add(cv, L.add(L.mul(mu, ext.aut(cv, pw)), L.mul(mu_a, ext.aut(cv, 2 * pw))));
    if (zeta.v == 0) continue;
    auto coords = ext.to_base_coords(zeta);
    for (Fe x : coords) {
      if (x.v != 0) {
        zeta = L.mul(zeta, ext.embed(ext.base().inv(x)));
        break;
      }
    }
    return zeta;
  }
  throw Error("internal: Hilbert 90 resolvent vanished on every basis element");
}

}  // namespace trialab
