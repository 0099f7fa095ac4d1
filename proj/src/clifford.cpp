#include "trialab/clifford.hpp"

#include <string>

#include "trialab/quadratic.hpp"

namespace trialab {

namespace {

using Sparse = std::vector<std::pair<std::uint32_t, Fe>>;

std::uint32_t top_bit(std::uint32_t mask) { return 31u - std::uint32_t(__builtin_clz(mask)); }

Sparse compress(const FiniteField& F, const Vec& dense) {
  Sparse s;
  for (std::uint32_t m = 0; m < dense.size(); ++m)
    if (dense[m].v) s.emplace_back(m, dense[m]);
  (void)F;
  return s;
}

Matrix block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t n) {
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = m(r0 + i, c0 + j);
  return b;
}

bool block_zero(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(r0 + i, c0 + j).v) return false;
  return true;
}

Vec flatten(const Matrix& m) { return m.data(); }

Matrix unit_matrix(std::size_t n, std::size_t a, std::size_t b, const FiniteField& F) {
  Matrix m(n, n);
  m(a, b) = F.one();
  return m;
}

}  // namespace

Diagonalization diagonalize(const FiniteField& F, const Matrix& gram) {
  if (F.characteristic() == 2) throw Error("diagonalization of quadratic forms needs odd characteristic");
  const std::size_t n = gram.rows();
  if (gram.cols() != n) throw Error("gram matrix is not square");
  const Matrix G = canonical_gram(F, gram);
  std::vector<Vec> pending;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n);
    e[i] = F.one();
    pending.push_back(e);
  }
  Diagonalization d{Matrix(n, n), Vec(n)};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pick = pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (quadratic_value(F, G, pending[i]).v) {
        pick = i;
        break;
      }
    }
    if (pick == pending.size()) {
      // all remaining vectors are isotropic; a pair with b != 0 gives a
      // non-isotropic sum
      for (std::size_t i = 0; i < pending.size() && pick == pending.size(); ++i) {
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
          if (polar_value(F, G, pending[i], pending[j]).v) {
            pending[i] = la::add(F, pending[i], pending[j]);
            pick = i;
            break;
          }
        }
      }
    }
    if (pick == pending.size()) throw Error("quadratic form is degenerate");
    const Vec v = pending[pick];
    pending.erase(pending.begin() + std::ptrdiff_t(pick));
    const Fe qv = quadratic_value(F, G, v);
    const Fe bvv_inv = F.inv(F.add(qv, qv));
    for (auto& w : pending) {
      const Fe c = F.mul(polar_value(F, G, v, w), bvv_inv);
      if (c.v) w = la::sub(F, w, la::scale(F, c, v));
    }
    d.basis_change.set_column(col, v);
    d.diag[col] = qv;
  }
  return d;
}

// ---------------------------------------------------------------------------

CliffordAlgebra::CliffordAlgebra(const FiniteField& F, const Matrix& gram) : F_(F) {
  const std::size_t n = kDim;
  if (gram.rows() != n || gram.cols() != n) throw Error("Clifford algebra needs an 8 x 8 gram matrix");
  if (!is_nondegenerate(F, gram)) throw Error("quadratic form is degenerate");
  if (F.characteristic() == 2) {
    P_ = Matrix::identity(F, n);
    diag_ = Vec(n);
    for (std::size_t i = 0; i < n; ++i) diag_[i] = gram(i, i);
    polar_ = polar_matrix(F, gram);
  } else {
    auto d = diagonalize(F, gram);
    P_ = d.basis_change;
    diag_ = d.diag;
    polar_ = la::mul(F, la::transpose(P_), la::mul(F, polar_matrix(F, gram), P_));
  }
  Pinv_ = *la::inverse(F, P_);

  // g_A g_i for every monomial A and generator i. With a the top bit of A
  // and A = A' g_a:
  //   a < i:  g_A g_i = g_{A + i}
  //   a = i:  g_A g_i = Q(g_a) g_{A'}
  //   a > i:  g_A g_i = b(g_a, g_i) g_{A'} - (g_{A'} g_i) g_a
  right_.assign(kCliffordDim * n, {});
  for (std::uint32_t A = 0; A < kCliffordDim; ++A) {
    for (std::uint32_t i = 0; i < n; ++i) {
      auto& out = right_[A * n + i];
      if (A == 0) {
        out = {{1u << i, F.one()}};
        continue;
      }
      const std::uint32_t a = top_bit(A);
      const std::uint32_t rest = A & ~(1u << a);
      if (a < i) {
        out = {{A | (1u << i), F.one()}};
      } else if (a == i) {
        if (diag_[a].v) out = {{rest, diag_[a]}};
      } else {
        Vec acc(kCliffordDim);
        if (polar_(a, i).v) acc[rest] = F.add(acc[rest], polar_(a, i));
        for (const auto& [m, c] : right_[rest * n + i]) acc[m | (1u << a)] = F.sub(acc[m | (1u << a)], c);
        out = compress(F, acc);
      }
    }
  }
}

CliffordAlgebra::Element CliffordAlgebra::scalar(Fe c) const {
  Element e(kCliffordDim);
  e[0] = c;
  return e;
}

CliffordAlgebra::Element CliffordAlgebra::monomial(std::uint32_t mask) const {
  if (mask >= kCliffordDim) throw Error("monomial mask out of range");
  Element e(kCliffordDim);
  e[mask] = F_.one();
  return e;
}

Vec CliffordAlgebra::generator_coords(const Vec& x) const { return la::apply(F_, Pinv_, x); }

CliffordAlgebra::Element CliffordAlgebra::vector(const Vec& x) const {
  Vec c = generator_coords(x);
  Element e(kCliffordDim);
  for (std::size_t i = 0; i < kDim; ++i) e[1u << i] = c[i];
  return e;
}

CliffordAlgebra::Element CliffordAlgebra::mul_generator(const Element& a, std::size_t i) const {
  Element r(kCliffordDim);
  for (std::uint32_t A = 0; A < kCliffordDim; ++A) {
    if (a[A].v == 0) continue;
    for (const auto& [m, c] : right_[A * kDim + i]) r[m] = F_.fma(r[m], a[A], c);
  }
  return r;
}

CliffordAlgebra::Element CliffordAlgebra::mul(const Element& a, const Element& b) const {
  // a g_B = (((a g_{b1}) g_{b2}) ...), sharing prefixes across B
  std::vector<Element> prefix(kCliffordDim);
  prefix[0] = a;
  Element r(kCliffordDim);
  for (std::uint32_t B = 0; B < kCliffordDim; ++B) {
    if (B) prefix[B] = mul_generator(prefix[B & ~(1u << top_bit(B))], top_bit(B));
    if (b[B].v == 0) continue;
    for (std::uint32_t m = 0; m < kCliffordDim; ++m) r[m] = F_.fma(r[m], b[B], prefix[B][m]);
  }
  return r;
}

CliffordAlgebra::Element CliffordAlgebra::add(const Element& a, const Element& b) const { return la::add(F_, a, b); }

CliffordAlgebra::Element CliffordAlgebra::scale(Fe c, const Element& a) const { return la::scale(F_, c, a); }

// ---------------------------------------------------------------------------

Matrix left_mult(const CyclicComposition& g, const Vec& x) {
  const auto& L = g.field();
  Matrix m(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].v == 0) continue;
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) m(k, j) = L.fma(m(k, j), x[i], g.ext.theta(g.star(i, j, k)));
  }
  return m;
}

Matrix right_mult(const CyclicComposition& g, const Vec& x) {
  const auto& L = g.field();
  Matrix m(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].v == 0) continue;
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) m(k, j) = L.fma(m(k, j), x[i], g.ext.rho(g.star(j, i, k)));
  }
  return m;
}

namespace {

Matrix anti_block(const Matrix& upper_right, const Matrix& lower_left) {
  Matrix m(kSpinorDim, kSpinorDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      m(i, kDim + j) = upper_right(i, j);
      m(kDim + i, j) = lower_left(i, j);
    }
  }
  return m;
}

}  // namespace

Matrix alpha_star_gen(const CyclicComposition& g, const Vec& x) {
  return anti_block(right_mult(g, x), left_mult(g, x));
}

Matrix AlphaStar::apply(const CliffordAlgebra::Element& a) const {
  const auto& L = cl.field();
  Matrix m(kSpinorDim, kSpinorDim);
  for (std::uint32_t A = 0; A < kCliffordDim; ++A) {
    if (a[A].v == 0) continue;
    for (std::size_t n = 0; n < m.data().size(); ++n)
      m.data()[n] = L.fma(m.data()[n], a[A], monomial_images[A].data()[n]);
  }
  return m;
}

CliffordAlgebra::Element AlphaStar::preimage(const Matrix& m) const {
  return la::apply(cl.field(), inverse, flatten(m));
}

AlphaStar alpha_star_assemble(const CyclicComposition& g) {
  const auto& L = g.field();
  AlphaStar a{CliffordAlgebra(L, g.gram), {}, Matrix(kCliffordDim, kCliffordDim), {}};
  std::vector<Matrix> gens(kDim);
  for (std::size_t i = 0; i < kDim; ++i) gens[i] = alpha_star_gen(g, a.cl.basis_change().column(i));
  a.monomial_images.resize(kCliffordDim);
  a.monomial_images[0] = Matrix::identity(L, kSpinorDim);
  for (std::uint32_t A = 1; A < kCliffordDim; ++A) {
    const std::uint32_t t = top_bit(A);
    a.monomial_images[A] = la::mul(L, a.monomial_images[A & ~(1u << t)], gens[t]);
  }
  for (std::uint32_t A = 0; A < kCliffordDim; ++A) a.images.set_column(A, flatten(a.monomial_images[A]));
  auto inv = la::inverse(L, a.images);
  if (!inv) throw Error("alpha_* is not bijective; the cyclic composition is not valid");
  a.inverse = std::move(*inv);
  return a;
}

ValidationReport alpha_star0_check(const AlphaStar& a) {
  const auto& L = a.cl.field();
  CheckResult even{"grading_even", true, "", 0};
  CheckResult odd{"grading_odd", true, "", 0};
  Matrix even_cols(kCliffordDim, kCliffordDim / 2);
  std::size_t ne = 0;
  for (std::uint32_t A = 0; A < kCliffordDim; ++A) {
    const Matrix& m = a.monomial_images[A];
    if (CliffordAlgebra::is_even(A)) {
      ++even.evaluated;
      if (even.passed && !(block_zero(m, 0, kDim, kDim) && block_zero(m, kDim, 0, kDim))) {
        even.passed = false;
        even.witness = "monomial mask " + std::to_string(A);
      }
      even_cols.set_column(ne++, flatten(m));
    } else {
      ++odd.evaluated;
      if (odd.passed && !(block_zero(m, 0, 0, kDim) && block_zero(m, kDim, kDim, kDim))) {
        odd.passed = false;
        odd.witness = "monomial mask " + std::to_string(A);
      }
    }
  }
  const std::size_t r = la::rank(L, even_cols);
  CheckResult span{"even_span", r == kCliffordDim / 2, "", 1};
  if (!span.passed) span.witness = "rank " + std::to_string(r);
  ValidationReport rep;
  rep.checks = {even, odd, span};
  return rep;
}

EvenPairImage c0_as_endomorphism(const CyclicComposition& g, const AlphaStar& a, const Vec& x, const Vec& y) {
  const auto& L = g.field();
  EvenPairImage r{a.cl.mul(a.cl.vector(x), a.cl.vector(y)), Matrix(kDim, kDim)};
  const Matrix B = polar_matrix(L, g.gram);
  Vec by = la::apply(L, B, y);
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t l = 0; l < kDim; ++l) r.endomorphism(k, l) = L.mul(x[k], by[l]);
  return r;
}

Matrix beta_u(const CyclicComposition& g, const QuadraticSemilinear& u, const Vec& x) {
  const auto& L = g.field();
  const auto& ext = g.ext;
  const Vec w = la::apply(L, u.map, ext.aut(x, u.aut_power));
  if (g.quadratic(w) != ext.aut(L.mul(u.mu_q, g.quadratic(x)), u.aut_power)) {
    throw Error("Q(u(x)) != nu(mu Q(x)) at x=" + format_vec(x));
  }
  const Fe s = L.inv(ext.aut(u.mu_q, u.aut_power));
  return anti_block(la::scale(L, s, right_mult(g, w)), left_mult(g, w));
}

QuadraticSemilinear as_quadratic(const CubicCyclicExtension& ext, const SemilinearIsotopy& f) {
  return {f.aut_power, f.map, ext.top().mul(ext.rho(f.multiplier), ext.theta(f.multiplier))};
}

PsiExtraction psi_u_extract(const CyclicComposition& g, const AlphaStar& a, const QuadraticSemilinear& u,
                            std::size_t pairs, std::uint64_t seed) {
  const auto& L = g.field();
  const auto& ext = g.ext;
  const int nu = ((u.aut_power % 3) + 3) % 3;
  if (!la::inverse(L, u.map)) throw Error("u has a singular matrix");

  std::vector<Matrix> gens(kDim);
  for (std::size_t i = 0; i < kDim; ++i) gens[i] = beta_u(g, u, a.cl.basis_change().column(i));
  std::vector<Matrix> mono(kCliffordDim);
  mono[0] = Matrix::identity(L, kSpinorDim);
  for (std::uint32_t A = 1; A < kCliffordDim; ++A) {
    const std::uint32_t t = top_bit(A);
    mono[A] = la::mul(L, mono[A & ~(1u << t)], gens[t]);
  }
  // psi(E_ab) = sum_A nu(alpha^{-1}(E_ab)_A) beta(g_A)
  auto psi_unit = [&](std::size_t r, std::size_t c) {
    const std::size_t col = r * kSpinorDim + c;
    Matrix m(kSpinorDim, kSpinorDim);
    for (std::uint32_t A = 0; A < kCliffordDim; ++A) {
      const Fe coef = ext.aut(a.inverse(A, col), nu);
      if (coef.v == 0) continue;
      for (std::size_t n = 0; n < m.data().size(); ++n)
        m.data()[n] = L.fma(m.data()[n], coef, mono[A].data()[n]);
    }
    return m;
  };
  std::vector<Matrix> psi(kSpinorDim * kSpinorDim);
  for (std::size_t r = 0; r < kSpinorDim; ++r)
    for (std::size_t c = 0; c < kSpinorDim; ++c) psi[r * kSpinorDim + c] = psi_unit(r, c);

  Matrix upper(kSpinorDim, kSpinorDim), lower(kSpinorDim, kSpinorDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    upper(i, i) = L.one();
    lower(kDim + i, kDim + i) = L.one();
  }
  Matrix psi_upper(kSpinorDim, kSpinorDim);
  for (std::size_t i = 0; i < kDim; ++i) psi_upper = la::add(L, psi_upper, psi[i * kSpinorDim + i]);
  if (psi_upper == lower) throw SwitchCaseError("psi_u exchanges the two spinor blocks");
  if (psi_upper != upper) throw Error("psi_u does not preserve the block decomposition; u is not valid");

  // W e_a = psi(E_a0) w, with w a nonzero column of psi(E_00)
  const Matrix& p00 = psi[0];
  std::size_t wc = kSpinorDim;
  for (std::size_t c = 0; c < kSpinorDim && wc == kSpinorDim; ++c)
    if (!la::is_zero(p00.column(c))) wc = c;
  if (wc == kSpinorDim) throw Error("psi_u kills a matrix unit; u is not valid");
  const Vec w = p00.column(wc);
  Matrix W(kSpinorDim, kSpinorDim);
  for (std::size_t r = 0; r < kSpinorDim; ++r) W.set_column(r, la::apply(L, psi[r * kSpinorDim], w));
  for (std::size_t r = 0; r < kSpinorDim; ++r) {
    for (std::size_t c = 0; c < kSpinorDim; ++c) {
      const Matrix E = unit_matrix(kSpinorDim, r, c, L);
      if (la::mul(L, psi[r * kSpinorDim + c], W) != la::mul(L, W, E)) {
        throw Error("psi_u is not an algebra automorphism at unit (" + std::to_string(r) + "," + std::to_string(c) +
                    ")");
      }
    }
  }
  if (!la::inverse(L, W)) throw Error("conjugator of psi_u is singular");
  if (!block_zero(W, 0, kDim, kDim) || !block_zero(W, kDim, 0, kDim)) {
    throw Error("conjugator of psi_u is not block diagonal");
  }
  // blocks act on pV and tV coordinates: W11 = rho(T1), W22 = theta(T2)
  Matrix T1 = ext.aut(block(W, 0, 0, kDim), 2);
  Matrix T2 = ext.aut(block(W, kDim, kDim, kDim), 1);

  // scale (T1, T2) -> (k T1, theta(k) T2) so that T1 = T
  auto ratio = [&](const Matrix& target, const Matrix& m) -> std::optional<Fe> {
    for (std::size_t n = 0; n < target.data().size(); ++n) {
      if (m.data()[n].v == 0) continue;
      const Fe k = L.div(target.data()[n], m.data()[n]);
      if (la::scale(L, k, m) == target) return k;
      return std::nullopt;
    }
    return std::nullopt;
  };
  auto kappa = ratio(u.map, T1);
  if (!kappa || kappa->v == 0) throw Error("u1 is not proportional to u");
  T1 = u.map;
  T2 = la::scale(L, ext.theta(*kappa), T2);
  auto zeta = ratio(T2, u.map);
  if (!zeta || zeta->v == 0) throw Error("u2 is not proportional to u");

  const Fe nu_mu = ext.aut(u.mu_q, nu);
  if (nu_mu != L.mul(ext.rho(*zeta), ext.theta(*zeta))) throw Error("nu(mu) != rho(zeta) theta(zeta)");

  PsiExtraction out;
  out.zeta = *zeta;
  out.u1 = {nu, T1, ext.aut(*zeta, 3 - nu)};
  out.u2 = {nu, T2, ext.aut(L.mul(ext.rho(*zeta), ext.theta(*zeta)), 3 - nu)};
  out.conjugator = W;

  const SemilinearIsotopy uu{nu, u.map, L.one()};
  const Fe coef = L.inv(ext.theta(nu_mu));
  auto check_pair = [&](const Vec& x, const Vec& y, const std::string& where) {
    const Vec xy = g.product(x, y);
    if (apply(ext, out.u2, xy) != g.product(apply(ext, uu, x), apply(ext, out.u1, y))) {
      throw Error("u2(x * y) != u(x) * u1(y) at " + where);
    }
    if (apply(ext, out.u1, xy) != la::scale(L, coef, g.product(apply(ext, out.u2, x), apply(ext, uu, y)))) {
      throw Error("u1(x * y) != theta(nu(mu))^{-1} (u2(x) * u(y)) at " + where);
    }
  };
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      check_pair(g.basis(i), g.basis(j), "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  Rng rng(seed);
  for (std::size_t n = 0; n < pairs; ++n) {
    Vec x = random_vector(L, rng, kDim), y = random_vector(L, rng, kDim);
    check_pair(x, y, "sample " + std::to_string(n));
  }
  return out;
}

}  // namespace trialab
