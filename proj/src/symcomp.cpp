#include "trialab/symcomp.hpp"

#include <functional>
#include <string>

#include "trialab/quadratic.hpp"

namespace trialab {

Vec StructureTensor::product(std::size_t i, std::size_t j) const {
  Vec v(kDim);
  for (std::size_t k = 0; k < kDim; ++k) v[k] = (*this)(i, j, k);
  return v;
}

void StructureTensor::set_product(std::size_t i, std::size_t j, const Vec& v) {
  for (std::size_t k = 0; k < kDim; ++k) (*this)(i, j, k) = v[k];
}

Vec SymmetricComposition::product(const Vec& x, const Vec& y) const {
  const auto& F = field;
  Vec r(kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].v == 0) continue;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (y[j].v == 0) continue;
      const Fe c = F.mul(x[i], y[j]);
      for (std::size_t k = 0; k < kDim; ++k) r[k] = F.fma(r[k], c, star(i, j, k));
    }
  }
  return r;
}

Fe SymmetricComposition::norm(const Vec& x) const { return quadratic_value(field, gram, x); }

Fe SymmetricComposition::polar(const Vec& x, const Vec& y) const { return polar_value(field, gram, x, y); }

Vec SymmetricComposition::basis(std::size_t i) const {
  Vec e(kDim);
  e[i] = field.one();
  return e;
}

// ---------------------------------------------------------------------------
// Para-Cayley

Vec zorn_product(const FiniteField& F, const Vec& x, const Vec& y) {
  // [[a, v], [w, b]] [[a', v'], [w', b']] =
  //   [[aa' + v.w', a v' + b' v - w x w'], [a' w + b w' + v x v', bb' + w.v']]
  const Fe a = x[0], b = x[7], a2 = y[0], b2 = y[7];
  const Fe v[3] = {x[1], x[2], x[3]}, w[3] = {x[4], x[5], x[6]};
  const Fe v2[3] = {y[1], y[2], y[3]}, w2[3] = {y[4], y[5], y[6]};
  auto dot3 = [&](const Fe* p, const Fe* q) {
    return F.add(F.mul(p[0], q[0]), F.add(F.mul(p[1], q[1]), F.mul(p[2], q[2])));
  };
  auto cross = [&](const Fe* p, const Fe* q, std::size_t i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    return F.sub(F.mul(p[j], q[k]), F.mul(p[k], q[j]));
  };
  Vec r(kDim);
  r[0] = F.add(F.mul(a, a2), dot3(v, w2));
  r[7] = F.add(F.mul(b, b2), dot3(w, v2));
  for (std::size_t i = 0; i < 3; ++i) {
    r[1 + i] = F.sub(F.add(F.mul(a, v2[i]), F.mul(b2, v[i])), cross(w, w2, i));
    r[4 + i] = F.add(F.add(F.mul(a2, w[i]), F.mul(b, w2[i])), cross(v, v2, i));
  }
  return r;
}

Vec zorn_conjugate(const FiniteField& F, const Vec& x) {
  Vec r(kDim);
  r[0] = x[7];
  r[7] = x[0];
  for (std::size_t i = 1; i < 7; ++i) r[i] = F.neg(x[i]);
  return r;
}

SymmetricComposition para_cayley_split(const FiniteField& F) {
  SymmetricComposition s{F, Matrix(kDim, kDim), {}};
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      auto ei = s.basis(i), ej = s.basis(j);
      s.star.set_product(i, j, zorn_product(F, zorn_conjugate(F, ei), zorn_conjugate(F, ej)));
    }
  }
  // n((a, v), (w, b)) = ab - v.w
  Matrix polar(kDim, kDim);
  polar(0, 7) = polar(7, 0) = F.one();
  for (std::size_t i = 1; i <= 3; ++i) polar(i, i + 3) = polar(i + 3, i) = F.neg(F.one());
  s.gram = gram_from_polar(F, Vec(kDim), polar);
  return s;
}

// ---------------------------------------------------------------------------
// Okubo

namespace {

constexpr std::size_t kOffDiag[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

Matrix mat3_mul(const FiniteField& F, const Matrix& a, const Matrix& b) { return la::mul(F, a, b); }

Fe mat3_trace(const FiniteField& F, const Matrix& a) { return F.add(a(0, 0), F.add(a(1, 1), a(2, 2))); }

Fe principal_minors(const FiniteField& F, const Matrix& x) {
  Fe s{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      s = F.add(s, F.sub(F.mul(x(i, i), x(j, j)), F.mul(x(i, j), x(j, i))));
    }
  }
  return s;
}

// Quick rejection on the multilinear basis identities.
bool passes_basis_identities(const SymmetricComposition& s) {
  const auto& F = s.field;
  const Matrix B = polar_matrix(F, s.gram);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      Vec ij = s.star.product(i, j);
      for (std::size_t k = 0; k < kDim; ++k) {
        Vec jk = s.star.product(j, k);
        Fe lhs{}, rhs{};
        for (std::size_t l = 0; l < kDim; ++l) {
          lhs = F.fma(lhs, ij[l], B(l, k));
          rhs = F.fma(rhs, B(i, l), jk[l]);
        }
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

}  // namespace

Matrix okubo_matrix(const FiniteField& F, const Vec& c) {
  Matrix m(3, 3);
  for (std::size_t b = 0; b < 6; ++b) m(kOffDiag[b][0], kOffDiag[b][1]) = c[b];
  // h1 (E11 - E22) + h2 (E22 - E33)
  m(0, 0) = c[6];
  m(1, 1) = F.sub(c[7], c[6]);
  m(2, 2) = F.neg(c[7]);
  return m;
}

Vec okubo_coords(const FiniteField& F, const Matrix& m) {
  Vec c(kDim);
  for (std::size_t b = 0; b < 6; ++b) c[b] = m(kOffDiag[b][0], kOffDiag[b][1]);
  c[6] = m(0, 0);
  c[7] = F.neg(m(2, 2));
  return c;
}

SymmetricComposition okubo(const FiniteField& F, OkuboParameters* chosen) {
  const std::uint32_t q = F.order();
  if (q % 3 != 1) throw Error("Okubo composition needs a primitive cube root of unity: " + F.describe() +
                              " has q != 1 mod 3");
  if (F.characteristic() == 3) throw Error("Okubo composition in characteristic 3 is not supported");
  const Fe third = F.inv(F.from_int(3));

  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < kDim; ++i) {
    Vec e(kDim);
    e[i] = F.one();
    basis.push_back(okubo_matrix(F, e));
  }
  std::vector<Matrix> xy(kDim * kDim);
  std::vector<Fe> trxy(kDim * kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      xy[i * kDim + j] = mat3_mul(F, basis[i], basis[j]);
      trxy[i * kDim + j] = mat3_trace(F, xy[i * kDim + j]);
    }
  }

  // s2 as a quadratic form
  Vec values(kDim);
  Matrix polar(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i) values[i] = principal_minors(F, basis[i]);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      if (i == j) {
        polar(i, i) = F.add(values[i], values[i]);
        continue;
      }
      Matrix sum = la::add(F, basis[i], basis[j]);
      polar(i, j) = F.sub(F.sub(principal_minors(F, sum), values[i]), values[j]);
    }
  }

  for (int sign : {1, -1}) {
    if (sign == -1 && F.characteristic() == 2) break;
    const Fe sg = F.from_int(sign);
    SymmetricComposition s{F, gram_from_polar(F, la::scale(F, sg, values), la::scale(F, sg, polar)), {}};
    for (std::uint32_t l = 0; l < q; ++l) {
      for (std::uint32_t r = 0; r < q; ++r) {
        if (l == 0 && r == 0) continue;
        const Fe left{l}, right{r};
        const Fe scal = F.mul(F.add(left, right), third);
        for (std::size_t i = 0; i < kDim; ++i) {
          for (std::size_t j = 0; j < kDim; ++j) {
            Matrix m = la::add(F, la::scale(F, left, xy[i * kDim + j]), la::scale(F, right, xy[j * kDim + i]));
            const Fe t = F.mul(scal, trxy[i * kDim + j]);
            for (std::size_t d = 0; d < 3; ++d) m(d, d) = F.sub(m(d, d), t);
            s.star.set_product(i, j, okubo_coords(F, m));
          }
        }
        if (!passes_basis_identities(s)) continue;
        if (!validate(s).ok()) continue;
        if (chosen) *chosen = OkuboParameters{left, right, sign};
        return s;
      }
    }
  }
  throw Error("internal: no Okubo product found in the searched family over " + F.describe());
}

// ---------------------------------------------------------------------------
// Validation

namespace {

CheckResult check_bn_associativity(const SymmetricComposition& s) {
  CheckResult c{"bn_associativity", true, "", 0};
  const auto& F = s.field;
  const Matrix B = polar_matrix(F, s.gram);
  for (std::size_t i = 0; i < kDim && c.passed; ++i) {
    for (std::size_t j = 0; j < kDim && c.passed; ++j) {
      Vec ij = s.star.product(i, j);
      for (std::size_t k = 0; k < kDim; ++k) {
        Vec jk = s.star.product(j, k);
        Fe lhs{}, rhs{};
        for (std::size_t l = 0; l < kDim; ++l) {
          lhs = F.fma(lhs, ij[l], B(l, k));
          rhs = F.fma(rhs, B(i, l), jk[l]);
        }
        ++c.evaluated;
        if (lhs != rhs) {
          c.passed = false;
          c.witness = "basis triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
          break;
        }
      }
    }
  }
  return c;
}

Matrix left_multiplication(const SymmetricComposition& s, const Vec& x) {
  Matrix m(kDim, kDim);
  for (std::size_t j = 0; j < kDim; ++j) m.set_column(j, s.product(x, s.basis(j)));
  return m;
}

}  // namespace

ValidationReport validate(const SymmetricComposition& s, const ValidationOptions& opts) {
  ValidationReport rep;
  const auto& F = s.field;
  if (F.characteristic() == 2 && F.order() == 2) {
    // GF(2) is allowed; nothing special.
  }
  {
    CheckResult c{"gram_form", is_canonical_gram(F, s.gram), "", 1};
    if (!c.passed) c.witness = F.characteristic() == 2 ? "gram not upper triangular" : "gram not symmetric";
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"gram_nondegenerate", is_nondegenerate(F, s.gram), "", 1};
    if (!c.passed) c.witness = "det(b_n) = 0";
    rep.checks.push_back(c);
  }
  rep.checks.push_back(check_bn_associativity(s));

  {
    CheckResult c{"linearized_multiplicativity", true, "", 0};
    Rng rng(opts.seed ^ 0x9E3779B97F4A7C15ull);
    const Matrix B = polar_matrix(F, s.gram);
    for (std::size_t n = 0; n < opts.linearized_samples; ++n) {
      Vec x = random_vector(F, rng, kDim);
      Matrix Lx = left_multiplication(s, x);
      Matrix lhs = la::mul(F, la::transpose(Lx), la::mul(F, B, Lx));
      Matrix rhs = la::scale(F, s.norm(x), B);
      ++c.evaluated;
      if (lhs != rhs) {
        c.passed = false;
        c.witness = "sample " + std::to_string(n) + " x=" + format_vec(x);
        break;
      }
    }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"multiplicativity", true, "", 0};
    CheckResult f{"flexibility", true, "", 0};
    Rng rng(opts.seed);
    for (std::size_t n = 0; n < opts.random_pairs; ++n) {
      Vec x = random_vector(F, rng, kDim);
      Vec y = random_vector(F, rng, kDim);
      const Fe nx = s.norm(x);
      Vec xy = s.product(x, y);
      if (c.passed) {
        ++c.evaluated;
        if (s.norm(xy) != F.mul(nx, s.norm(y))) {
          c.passed = false;
          c.witness = "pair " + std::to_string(n) + " x=" + format_vec(x) + " y=" + format_vec(y);
        }
      }
      if (f.passed) {
        ++f.evaluated;
        Vec target = la::scale(F, nx, y);
        if (s.product(xy, x) != target || s.product(x, s.product(y, x)) != target) {
          f.passed = false;
          f.witness = "pair " + std::to_string(n) + " x=" + format_vec(x) + " y=" + format_vec(y);
        }
      }
    }
    rep.checks.push_back(c);
    rep.checks.push_back(f);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Invariants

bool census_feasible(const FiniteField& F) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < kDim; ++i) {
    total *= F.order();
    if (total > kCensusLimit) return false;
  }
  return true;
}

std::uint64_t idempotent_census(const SymmetricComposition& s) {
  const auto& F = s.field;
  if (!census_feasible(F)) throw Error("idempotent census over " + F.describe() + " exceeds the 2^24 point budget");
  // x*x = sum_{i<=j} x_i x_j c_ij with c_ii = e_i*e_i, c_ij = e_i*e_j + e_j*e_i
  std::array<std::array<Fe, kDim>, kDim * kDim> pair{};
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i; j < kDim; ++j) {
      for (std::size_t k = 0; k < kDim; ++k) {
        pair[i * kDim + j][k] = i == j ? s.star(i, i, k) : F.add(s.star(i, j, k), s.star(j, i, k));
      }
    }
  }
  const std::uint32_t q = F.order();
  std::array<Fe, kDim> x{};
  std::array<std::array<Fe, kDim>, kDim + 1> acc{};
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == kDim) {
      if (acc[kDim] == x) ++count;
      return;
    }
    for (std::uint32_t v = 0; v < q; ++v) {
      const Fe xv{v};
      x[d] = xv;
      auto a = acc[d];
      if (v != 0) {
        for (std::size_t i = 0; i <= d; ++i) {
          if (x[i].v == 0) continue;
          const Fe c = F.mul(x[i], xv);
          const auto& pc = pair[i * kDim + d];
          for (std::size_t k = 0; k < kDim; ++k) a[k] = F.fma(a[k], c, pc[k]);
        }
      }
      acc[d + 1] = a;
      rec(d + 1);
    }
  };
  rec(0);
  return count;
}

std::size_t derivation_dimension(const SymmetricComposition& s) {
  const auto& F = s.field;
  // Unknown D(a, b) at column a*8 + b, with D(e_b) = sum_a D(a, b) e_a.
  Matrix eq(kDim * kDim * kDim, kDim * kDim);
  std::size_t row = 0;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      for (std::size_t k = 0; k < kDim; ++k, ++row) {
        // D(e_i * e_j)_k
        for (std::size_t m = 0; m < kDim; ++m) {
          auto& e = eq(row, k * kDim + m);
          e = F.add(e, s.star(i, j, m));
        }
        // - (D(e_i) * e_j)_k - (e_i * D(e_j))_k
        for (std::size_t a = 0; a < kDim; ++a) {
          auto& e1 = eq(row, a * kDim + i);
          e1 = F.sub(e1, s.star(a, j, k));
          auto& e2 = eq(row, a * kDim + j);
          e2 = F.sub(e2, s.star(i, a, k));
        }
      }
    }
  }
  return kDim * kDim - la::rank(F, std::move(eq));
}

// ---------------------------------------------------------------------------
// Isotopies

bool is_isotopy(const SymmetricComposition& s, const SymmetricComposition& t, const CompositionIsotopy& f) {
  const auto& F = s.field;
  if (!(s.field == t.field)) return false;
  if (f.multiplier.v == 0 || !la::inverse(F, f.map)) return false;
  const Fe l2 = F.mul(f.multiplier, f.multiplier);
  std::vector<Vec> img(kDim);
  for (std::size_t i = 0; i < kDim; ++i) img[i] = f.map.column(i);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (t.norm(img[i]) != F.mul(l2, s.gram(i, i))) return false;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (t.polar(img[i], img[j]) != F.mul(l2, s.polar(s.basis(i), s.basis(j)))) return false;
      Vec lhs = t.product(img[i], img[j]);
      Vec rhs = la::scale(F, f.multiplier, la::apply(F, f.map, s.star.product(i, j)));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

std::optional<Fe> symmetric_multiplier(const SymmetricComposition& s, const SymmetricComposition& t,
                                       const Matrix& map) {
  const auto& F = s.field;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      Vec fij = la::apply(F, map, s.star.product(i, j));
      if (la::is_zero(fij)) continue;
      Vec lhs = t.product(map.column(i), map.column(j));
      for (std::size_t k = 0; k < kDim; ++k) {
        if (fij[k].v == 0) continue;
        const Fe lambda = F.div(lhs[k], fij[k]);
        if (is_isotopy(s, t, {map, lambda})) return lambda;
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

Matrix isotopy_to_isomorphism(const SymmetricComposition& s, const SymmetricComposition& t,
                              const CompositionIsotopy& f) {
  if (!is_isotopy(s, t, f)) throw Error("map is not an isotopy with the stated multiplier");
  const auto& F = s.field;
  Matrix g = la::scale(F, F.inv(f.multiplier), f.map);
  if (!check_isomorphism(s, t, g)) throw Error("internal: rescaled isotopy is not an isomorphism");
  return g;
}

bool check_isomorphism(const SymmetricComposition& s, const SymmetricComposition& t, const Matrix& g) {
  return is_isotopy(s, t, {g, s.field.one()});
}

SymmetricComposition pushforward(const SymmetricComposition& s, const Matrix& g) {
  const auto& F = s.field;
  auto ginv = la::inverse(F, g);
  if (!ginv) throw Error("pushforward along a singular map");
  SymmetricComposition t{F, transport_gram(F, s.gram, *ginv), {}};
  std::vector<Vec> pre(kDim);
  for (std::size_t i = 0; i < kDim; ++i) pre[i] = ginv->column(i);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) t.star.set_product(i, j, la::apply(F, g, s.product(pre[i], pre[j])));
  }
  return t;
}

Matrix zorn_sl3_automorphism(const FiniteField& F, const Matrix& A) {
  if (la::det(F, A) != F.one()) throw Error("Zorn automorphism needs det(A) = 1");
  auto Ainv = la::inverse(F, A);
  Matrix AinvT = la::transpose(*Ainv);
  Matrix g(kDim, kDim);
  g(0, 0) = F.one();
  g(7, 7) = F.one();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      g(1 + i, 1 + j) = A(i, j);
      g(4 + i, 4 + j) = AinvT(i, j);
    }
  }
  return g;
}

Matrix okubo_conjugation_automorphism(const FiniteField& F, const Matrix& A) {
  auto Ainv = la::inverse(F, A);
  if (!Ainv) throw Error("conjugation by a singular matrix");
  Matrix g(kDim, kDim);
  for (std::size_t j = 0; j < kDim; ++j) {
    Vec e(kDim);
    e[j] = F.one();
    Matrix m = la::mul(F, A, la::mul(F, okubo_matrix(F, e), *Ainv));
    g.set_column(j, okubo_coords(F, m));
  }
  return g;
}

Matrix random_sl3(const FiniteField& F, Rng& rng) {
  Matrix A = random_invertible(F, rng, 3);
  const Fe d = la::det(F, A);
  const Fe dinv = F.inv(d);
  for (std::size_t j = 0; j < 3; ++j) A(0, j) = F.mul(A(0, j), dinv);
  return A;
}

}  // namespace trialab
