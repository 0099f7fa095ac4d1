#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "trialab/field.hpp"
#include "trialab/matrix.hpp"
#include "trialab/report.hpp"

namespace trialab {

inline constexpr std::size_t kDim = 8;

/// Structure constants on the fixed basis: e_i . e_j = sum_k c(i,j,k) e_k.
struct StructureTensor {
  std::array<Fe, kDim * kDim * kDim> c{};

  Fe& operator()(std::size_t i, std::size_t j, std::size_t k) { return c[(i * kDim + j) * kDim + k]; }
  Fe operator()(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * kDim + j) * kDim + k]; }
  Vec product(std::size_t i, std::size_t j) const;
  void set_product(std::size_t i, std::size_t j, const Vec& v);

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;
};

/// (S, n, *) on F^8: n(x) = x^T gram x, e_i * e_j from `star`.
struct SymmetricComposition {
  FiniteField field;
  Matrix gram;
  StructureTensor star;

  Vec product(const Vec& x, const Vec& y) const;
  Fe norm(const Vec& x) const;
  Fe polar(const Vec& x, const Vec& y) const;
  Vec basis(std::size_t i) const;

  friend bool operator==(const SymmetricComposition& a, const SymmetricComposition& b) {
    return a.field == b.field && a.gram == b.gram && a.star == b.star;
  }
};

/// Para-Cayley composition x * y = conj(x) conj(y) on split octonions,
/// realized as Zorn vector matrices ((a, v), (w, b)). Basis order:
/// a, v1, v2, v3, w1, w2, w3, b.
SymmetricComposition para_cayley_split(const FiniteField& F);

/// Zorn product on the basis above, exposed for tests.
Vec zorn_product(const FiniteField& F, const Vec& x, const Vec& y);
Vec zorn_conjugate(const FiniteField& F, const Vec& x);

struct OkuboParameters {
  Fe left;         // coefficient of xy
  Fe right;        // coefficient of yx
  int norm_sign;   // n = norm_sign * s2, s2 = sum of principal 2x2 minors
};

/// Okubo composition on trace-zero 3x3 matrices, basis order
/// E12, E13, E21, E23, E31, E32, E11-E22, E22-E33. The product is the first
/// member of x*y = l xy + r yx - ((l + r)/3) tr(xy) 1 (with n = +-s2) that
/// satisfies every symmetric composition axiom exactly.
SymmetricComposition okubo(const FiniteField& F, OkuboParameters* chosen = nullptr);

/// 3x3 matrix <-> coordinates in the Okubo basis.
Matrix okubo_matrix(const FiniteField& F, const Vec& coords);
Vec okubo_coords(const FiniteField& F, const Matrix& m);

ValidationReport validate(const SymmetricComposition& s, const ValidationOptions& opts = {});

/// Number of x with x * x = x, including 0. Requires |F|^8 <= 2^24.
std::uint64_t idempotent_census(const SymmetricComposition& s);
inline constexpr std::uint64_t kCensusLimit = std::uint64_t(1) << 24;
bool census_feasible(const FiniteField& F);

/// dim_F of {D : D(x*y) = D(x)*y + x*D(y)}.
std::size_t derivation_dimension(const SymmetricComposition& s);

struct CompositionIsotopy {
  Matrix map;
  Fe multiplier;
};

bool is_isotopy(const SymmetricComposition& s, const SymmetricComposition& t, const CompositionIsotopy& f);
/// The multiplier of `map` as an isotopy s -> t, if it is one.
std::optional<Fe> symmetric_multiplier(const SymmetricComposition& s, const SymmetricComposition& t,
                                       const Matrix& map);
/// lambda^{-1} f; throws if f is not an isotopy.
Matrix isotopy_to_isomorphism(const SymmetricComposition& s, const SymmetricComposition& t,
                              const CompositionIsotopy& f);
bool check_isomorphism(const SymmetricComposition& s, const SymmetricComposition& t, const Matrix& g);

/// Structure transported along an invertible g, so g : s -> result is an
/// isomorphism.
SymmetricComposition pushforward(const SymmetricComposition& s, const Matrix& g);

/// ((a, v), (w, b)) -> ((a, A v), (A^{-T} w, b)) for A in SL3(F).
Matrix zorn_sl3_automorphism(const FiniteField& F, const Matrix& A);
/// x -> A x A^{-1} in the Okubo basis, for A in GL3(F).
Matrix okubo_conjugation_automorphism(const FiniteField& F, const Matrix& A);
Matrix random_sl3(const FiniteField& F, Rng& rng);

}  // namespace trialab
