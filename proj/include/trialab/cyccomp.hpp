#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "trialab/extension.hpp"
#include "trialab/report.hpp"
#include "trialab/symcomp.hpp"

namespace trialab {

/// (V, L, Q, rho, *) with V = L^8. Only basis products are stored; general
/// products follow (l x) * y = rho(l)(x * y) and x * (y l) = (x * y) theta(l),
/// so in coordinates x * y = sum_ij rho(x_i) theta(y_j) (e_i * e_j).
struct CyclicComposition {
  CubicCyclicExtension ext;
  Matrix gram;  // over L, Q(x) = x^T gram x
  StructureTensor star;
  bool induced_basis = false;  // basis is S (x) 1 for some symmetric composition S
  std::string provenance;

  const FiniteField& field() const { return ext.top(); }
  Vec product(const Vec& x, const Vec& y) const;
  Fe quadratic(const Vec& x) const;
  Fe polar(const Vec& x, const Vec& y) const;
  Vec basis(std::size_t i) const;

  friend bool operator==(const CyclicComposition& a, const CyclicComposition& b) {
    return a.ext == b.ext && a.gram == b.gram && a.star == b.star && a.induced_basis == b.induced_basis &&
           a.provenance == b.provenance;
  }
};

/// Sigma (x) (L, rho).
CyclicComposition induce(const SymmetricComposition& s, const CubicCyclicExtension& ext);

ValidationReport validate(const CyclicComposition& g, const ValidationOptions& opts = {});

/// x -> T nu(x), nu = rho^aut_power applied to coordinates, with
/// f(x) *' f(y) = nu(mu) f(x * y) and Q'(f(x)) = nu(rho(mu) theta(mu) Q(x)).
struct SemilinearIsotopy {
  int aut_power = 0;
  Matrix map;
  Fe multiplier;

  friend bool operator==(const SemilinearIsotopy&, const SemilinearIsotopy&) = default;
};

SemilinearIsotopy identity_isotopy(const CubicCyclicExtension& ext);
Vec apply(const CubicCyclicExtension& ext, const SemilinearIsotopy& f, const Vec& x);
/// f1 o f2.
SemilinearIsotopy compose(const CubicCyclicExtension& ext, const SemilinearIsotopy& f1, const SemilinearIsotopy& f2);
SemilinearIsotopy invert(const CubicCyclicExtension& ext, const SemilinearIsotopy& f);
/// f^n for n >= 0.
SemilinearIsotopy power(const CubicCyclicExtension& ext, const SemilinearIsotopy& f, unsigned n);

/// Basis-level check of the isotopy contract; witnesses name the basis pair.
ValidationReport check_isotopy(const CyclicComposition& g, const CyclicComposition& h, const SemilinearIsotopy& f);
bool is_isotopy(const CyclicComposition& g, const CyclicComposition& h, const SemilinearIsotopy& f);

/// The mu making x -> T nu(x) an isotopy g -> h. Read at the first basis
/// pair with e_i * e_j != 0, then verified on every pair.
Fe multiplier_extract(const CyclicComposition& g, const CyclicComposition& h, int aut_power, const Matrix& T);

/// Structure carried along f, so f : g -> result has multiplier 1.
CyclicComposition pushforward(const CyclicComposition& g, const SemilinearIsotopy& f);

/// Id_S (x) rho on an induced composition.
SemilinearIsotopy hat_rho(const CyclicComposition& g);

/// Triple (V, pV, tV) over L x L x L. Component c carries the gram
/// rho^c(gram) and the L-bilinear product with tensor rho^c(star):
/// X <> Y = (X2 *_Id Y3, X3 *_rho Y1, X1 *_theta Y2).
struct SplitCyclicTriple {
  CubicCyclicExtension ext;
  std::array<Matrix, 3> grams;
  std::array<StructureTensor, 3> tensors;

  using Element = std::array<Vec, 3>;
  using Scalar = std::array<Fe, 3>;

  Vec component_product(int c, const Vec& x, const Vec& y) const;
  Element diamond(const Element& x, const Element& y) const;
  Scalar quadratic(const Element& x) const;
  /// rho~ on L x L x L: (a, b, c) -> (b, c, a).
  static Scalar shift(const Scalar& s, int power = 1);
  Element scale(const Scalar& s, const Element& x) const;
};

SplitCyclicTriple split_form(const CyclicComposition& g);

/// Elements of V (x)_F L as sums of pure tensors x (x) l.
using PureTensorSum = std::vector<std::pair<Vec, Fe>>;

/// x (x) l -> (x l, rho(x) l, theta(x) l), extended additively.
SplitCyclicTriple::Element split_map(const CyclicComposition& g, const PureTensorSum& u);
/// a (x) b -> (ab, rho(a) b, theta(a) b).
SplitCyclicTriple::Scalar split_scalar(const CubicCyclicExtension& ext, Fe a, Fe b);

/// Samples random u, v in V (x)_F L and checks that split_map carries the
/// extended product and quadratic form to the triple, together with the
/// rho~-semilinearity of the diamond product.
ValidationReport verify_split_form(const CyclicComposition& g, std::size_t pairs = 500, std::uint64_t seed = 0xD4);

}  // namespace trialab
