#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "trialab/cyccomp.hpp"

namespace trialab {

inline constexpr std::size_t kCliffordDim = 256;
inline constexpr std::size_t kSpinorDim = 16;

struct Diagonalization {
  Matrix basis_change;  // P, columns are an orthogonal basis
  Vec diag;             // Q of each column
};

/// P with P^T gram P diagonal (gram in canonical form, odd characteristic).
Diagonalization diagonalize(const FiniteField& F, const Matrix& gram);

/// C(V, Q) for dim V = 8 on generators g_i = P e_i, with monomials g_A
/// (A a bit mask, factors in increasing order) as the basis.
/// g_i^2 = Q(g_i), g_i g_j + g_j g_i = b(g_i, g_j). In odd characteristic P
/// diagonalizes Q, so distinct generators anticommute; in characteristic 2
/// P = Id and the polar form enters the straightening.
class CliffordAlgebra {
 public:
  using Element = Vec;  // 256 coefficients indexed by mask

  CliffordAlgebra(const FiniteField& F, const Matrix& gram);

  const FiniteField& field() const { return F_; }
  const Matrix& basis_change() const { return P_; }
  const Vec& diag() const { return diag_; }
  const Matrix& generator_polar() const { return polar_; }

  Element zero() const { return Element(kCliffordDim); }
  Element scalar(Fe c) const;
  Element monomial(std::uint32_t mask) const;
  /// Image of a vector given in V-coordinates.
  Element vector(const Vec& x) const;
  /// Generator coordinates c with x = P c.
  Vec generator_coords(const Vec& x) const;

  Element mul(const Element& a, const Element& b) const;
  Element add(const Element& a, const Element& b) const;
  Element scale(Fe c, const Element& a) const;

  static bool is_even(std::uint32_t mask) { return (__builtin_popcount(mask) & 1) == 0; }

 private:
  Element mul_generator(const Element& a, std::size_t i) const;

  FiniteField F_;
  Matrix P_;
  Matrix Pinv_;
  Vec diag_;
  Matrix polar_;
  // right multiplication table: monomial A times g_i
  std::vector<std::vector<std::pair<std::uint32_t, Fe>>> right_;
};

/// l_x (pV -> tV) and r_x (tV -> pV) as 8 x 8 matrices over L, in the
/// coordinates pV ~ L^8, tV ~ L^8 of the split form.
Matrix left_mult(const CyclicComposition& g, const Vec& x);
Matrix right_mult(const CyclicComposition& g, const Vec& x);

/// [[0, r_x], [l_x, 0]] on pV + tV.
Matrix alpha_star_gen(const CyclicComposition& g, const Vec& x);

struct AlphaStar {
  CliffordAlgebra cl;
  std::vector<Matrix> monomial_images;  // 256 matrices of size 16 x 16
  Matrix images;                        // 256 x 256, column A = vec(alpha(g_A))
  Matrix inverse;

  Matrix apply(const CliffordAlgebra::Element& a) const;
  CliffordAlgebra::Element preimage(const Matrix& m) const;
};

/// Extends alpha_* multiplicatively over the monomials and inverts the
/// assembled 256 x 256 matrix; throws if it is singular.
AlphaStar alpha_star_assemble(const CyclicComposition& g);

/// Even monomials map block diagonally, odd ones block anti-diagonally, and
/// the even images span all 128 block-diagonal dimensions.
ValidationReport alpha_star0_check(const AlphaStar& a);

struct EvenPairImage {
  CliffordAlgebra::Element clifford;  // x . y in C_0
  Matrix endomorphism;                // z -> x b(y, z)
};
EvenPairImage c0_as_endomorphism(const CyclicComposition& g, const AlphaStar& a, const Vec& x, const Vec& y);

/// u(x) = T nu(x) with Q(u(x)) = nu(mu_q Q(x)).
struct QuadraticSemilinear {
  int aut_power = 0;
  Matrix map;
  Fe mu_q;
};

/// beta_u(x) = [[0, nu(mu_q)^{-1} r_{u(x)}], [l_{u(x)}, 0]].
Matrix beta_u(const CyclicComposition& g, const QuadraticSemilinear& u, const Vec& x);

struct PsiExtraction {
  SemilinearIsotopy u1;  // equals u
  SemilinearIsotopy u2;  // zeta u
  Fe zeta;
  Matrix conjugator;  // W with psi_u(M) = W M W^{-1} on matrix units
};

/// Thrown when psi_u exchanges the two blocks.
class SwitchCaseError : public Error {
 public:
  using Error::Error;
};

/// psi_u = beta_u o C(nu) o alpha_*^{-1}, its conjugating matrix W, and the
/// pair (u1, u2) read off the diagonal blocks, normalized to u1 = u.
/// Checks u2(x * y) = u(x) * u1(y) and
/// u1(x * y) = theta(nu(mu_q))^{-1} (u2(x) * u(y)) on basis pairs and
/// `pairs` random pairs, and nu(mu_q) = rho(zeta) theta(zeta).
PsiExtraction psi_u_extract(const CyclicComposition& g, const AlphaStar& a, const QuadraticSemilinear& u,
                            std::size_t pairs = 200, std::uint64_t seed = 0xD4);

/// The quadratic multiplier rho(mu) theta(mu) of an isotopy with multiplier mu.
QuadraticSemilinear as_quadratic(const CubicCyclicExtension& ext, const SemilinearIsotopy& f);

}  // namespace trialab
