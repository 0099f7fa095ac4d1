#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>

#include "trialab/field.hpp"
#include "trialab/matrix.hpp"

namespace trialab {

/// The cubic cyclic extension L = GF(q^3) of F = GF(q), with rho the
/// q-power Frobenius and theta = rho^2.
///
/// L is built directly over GF(p) (degree 3k); F sits inside it through the
/// embedding that sends the modulus root of F to the smallest root of F's
/// modulus in L. Coordinates of L over F use the basis {1, gamma, gamma^2}
/// where gamma is the smallest element of L outside F.
class CubicCyclicExtension {
 public:
  explicit CubicCyclicExtension(const FiniteField& base);

  const FiniteField& base() const { return base_; }
  const FiniteField& top() const { return top_; }

  Fe embed(Fe a) const { return {s_->embed[a.v]}; }
  bool in_base(Fe x) const { return s_->restrict[x.v] >= 0; }
  std::optional<Fe> restrict(Fe x) const;
  /// Throws if x does not lie in F.
  Fe restrict_or_throw(Fe x) const;

  Fe rho(Fe x) const { return {s_->frob[x.v]}; }
  Fe theta(Fe x) const { return {s_->frob[s_->frob[x.v]]}; }
  /// rho^power, power taken mod 3.
  Fe aut(Fe x, int power) const;

  Vec aut(const Vec& x, int power) const;
  Matrix aut(const Matrix& m, int power) const;

  /// Frobenius as a 3k x 3k matrix over GF(p) acting on coordinate columns.
  const Matrix& rho_matrix() const { return s_->rho_matrix; }
  const FiniteField& prime_field() const { return s_->prime; }

  Fe cubic_generator() const { return {s_->gamma}; }
  /// Coordinates (c0, c1, c2) in F with x = c0 + c1 gamma + c2 gamma^2.
  std::array<Fe, 3> to_base_coords(Fe x) const;
  Fe from_base_coords(const std::array<Fe, 3>& c) const;

  friend bool operator==(const CubicCyclicExtension& a, const CubicCyclicExtension& b) {
    return a.base_ == b.base_ && a.top_ == b.top_;
  }

 private:
  struct State {
    FiniteField prime;
    std::vector<std::uint32_t> embed;
    std::vector<std::int32_t> restrict;
    std::vector<std::uint32_t> frob;
    Matrix rho_matrix;
    std::uint32_t gamma = 0;
    Matrix to_base;    // GF(p) matrix, L coords -> F coords (3 blocks of k)
    Matrix from_base;  // inverse
  };

  FiniteField base_;
  FiniteField top_;
  std::shared_ptr<const State> s_;
};

inline CubicCyclicExtension make_extension(const FiniteField& base) { return CubicCyclicExtension(base); }

/// N(x) = x rho(x) theta(x), returned as an element of L lying in F.
Fe norm(const CubicCyclicExtension& ext, Fe x);
/// Tr(x) = x + rho(x) + theta(x), as an element of L lying in F.
Fe trace(const CubicCyclicExtension& ext, Fe x);

/// Some eta in L with N(eta) = xi, for xi a nonzero element of F (given in F).
/// Returns g^e where g generates L^x and N(g)^e = xi; in particular xi = 1
/// gives eta = 1.
Fe solve_norm_equation(const CubicCyclicExtension& ext, Fe xi);

enum class GaloisAut { rho, theta };

/// zeta != 0 with mu = zeta * aut(zeta)^{-1}, for N(mu) = 1.
///
/// Uses the resolvent zeta = c + mu aut(c) + mu aut(mu) aut^2(c) over the
/// GF(p) power basis c, then rescales by F^x so that the first nonzero
/// coordinate over {1, gamma, gamma^2} is 1 (so mu = 1 yields zeta = 1).
Fe hilbert90(const CubicCyclicExtension& ext, Fe mu, GaloisAut aut);

inline int aut_power(GaloisAut a) { return a == GaloisAut::rho ? 1 : 2; }

}  // namespace trialab
