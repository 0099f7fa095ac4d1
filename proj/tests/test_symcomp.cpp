#include "doctest.h"
#include "trialab/quadratic.hpp"
#include "trialab/symcomp.hpp"

using namespace trialab;

namespace {

// ab - v.w, written out from the Zorn coordinates.
Fe zorn_norm(const FiniteField& F, const Vec& x) {
  Fe s = F.mul(x[0], x[7]);
  for (std::size_t i = 0; i < 3; ++i) s = F.sub(s, F.mul(x[1 + i], x[4 + i]));
  return s;
}

Matrix random_basis_change(const FiniteField& F, std::uint64_t seed) {
  Rng rng(seed);
  return random_invertible(F, rng, kDim);
}

}  // namespace

TEST_CASE("Zorn product is composition for ab - v.w") {
  for (auto [p, k] : {std::pair{7u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto F = FiniteField::smallest(p, k);
    Rng rng(1);
    for (int n = 0; n < 300; ++n) {
      Vec x = random_vector(F, rng, kDim), y = random_vector(F, rng, kDim);
      CHECK(zorn_norm(F, zorn_product(F, x, y)) == F.mul(zorn_norm(F, x), zorn_norm(F, y)));
      // x xbar = n(x) 1
      Vec xx = zorn_product(F, x, zorn_conjugate(F, x));
      Vec unit(kDim);
      unit[0] = unit[7] = zorn_norm(F, x);
      CHECK(xx == unit);
    }
  }
}

TEST_CASE("para-Cayley composition") {
  auto F = FiniteField::smallest(7, 1);
  auto s = para_cayley_split(F);
  Vec e(kDim);
  e[0] = e[7] = F.one();
  CHECK(s.product(e, e) == e);
  CHECK(s.norm(e) == F.one());
  CHECK(la::det(F, polar_matrix(F, s.gram)).v != 0);
  // span of the first four basis vectors is totally isotropic: Witt index 4
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(s.polar(s.basis(i), s.basis(j)) == F.zero());
    CHECK(s.norm(s.basis(i)) == F.zero());
  }
  for (std::size_t i = 0; i < kDim; ++i) CHECK(s.norm(s.basis(i)) == zorn_norm(F, s.basis(i)));
  auto rep = validate(s);
  CHECK(rep.ok());
  CHECK(rep.find("multiplicativity")->evaluated == 1000);
  CHECK(rep.find("linearized_multiplicativity")->evaluated == 200);
  CHECK(rep.find("bn_associativity")->evaluated == 512);
}

TEST_CASE("Okubo composition") {
  for (auto [p, k] : {std::pair{7u, 1u}, {2u, 2u}, {13u, 1u}}) {
    auto F = FiniteField::smallest(p, k);
    OkuboParameters params{};
    auto s = okubo(F, &params);
    CHECK(validate(s).ok());
    CHECK((params.left.v != 0 || params.right.v != 0));
    // trace-zero coordinates round trip
    Rng rng(4);
    Vec x = random_vector(F, rng, kDim);
    CHECK(okubo_coords(F, okubo_matrix(F, x)) == x);
    Matrix m = okubo_matrix(F, x);
    CHECK(F.add(m(0, 0), F.add(m(1, 1), m(2, 2))) == F.zero());
  }
  CHECK_THROWS_AS(okubo(FiniteField::smallest(5, 1)), Error);
}

TEST_CASE("validate reports a corrupted tensor with a basis triple") {
  auto F = FiniteField::smallest(7, 1);
  auto s = para_cayley_split(F);
  s.star(1, 2, 3) = F.add(s.star(1, 2, 3), F.one());
  auto rep = validate(s);
  CHECK(!rep.ok());
  const auto* c = rep.find("bn_associativity");
  REQUIRE(c);
  CHECK(!c->passed);
  CHECK(c->witness.rfind("basis triple", 0) == 0);
}

TEST_CASE("derivation dimensions") {
  auto F = FiniteField::smallest(7, 1);
  auto pc = para_cayley_split(F);
  auto ok = okubo(F);
  CHECK(derivation_dimension(pc) == 14);
  CHECK(derivation_dimension(ok) == 8);
  Matrix g = random_basis_change(F, 77);
  CHECK(derivation_dimension(pushforward(pc, g)) == 14);
  CHECK(derivation_dimension(pushforward(ok, g)) == 8);
}

TEST_CASE("idempotent census separates the two classes over GF(4)") {
  auto F = FiniteField::smallest(2, 2);
  auto pc = para_cayley_split(F);
  auto ok = okubo(F);
  const auto npc = idempotent_census(pc);
  const auto nok = idempotent_census(ok);
  CHECK(npc != nok);
  CHECK(npc >= 1);
  CHECK(nok >= 1);
  // direct scan with the full product
  auto brute = [&](const SymmetricComposition& c) {
    std::uint64_t count = 0;
    for (std::uint32_t n = 0; n < 65536; ++n) {
      Vec x(kDim);
      for (std::size_t i = 0; i < kDim; ++i) x[i] = Fe{(n >> (2 * i)) & 3u};
      if (c.product(x, x) == x) ++count;
    }
    return count;
  };
  CHECK(brute(pc) == npc);
  CHECK(brute(ok) == nok);
  auto moved = pushforward(pc, random_basis_change(F, 5));
  CHECK(idempotent_census(moved) == npc);
  CHECK_THROWS_AS(idempotent_census(para_cayley_split(FiniteField::smallest(11, 1))), Error);
  MESSAGE("census para-Cayley=" << npc << " Okubo=" << nok);
}

TEST_CASE("isotopies and isomorphisms") {
  auto F = FiniteField::smallest(7, 1);
  auto s = para_cayley_split(F);
  const Matrix I = Matrix::identity(F, kDim);
  CHECK(check_isomorphism(s, s, I));
  CHECK(!check_isomorphism(s, s, la::scale(F, F.from_int(2), I)));
  CHECK(isotopy_to_isomorphism(s, s, {I, F.one()}) == I);
  const Fe l = F.from_int(3);
  CHECK(isotopy_to_isomorphism(s, s, {la::scale(F, l, I), l}) == I);
  CHECK(symmetric_multiplier(s, s, la::scale(F, l, I)) == l);

  Rng rng(21);
  Matrix A = random_sl3(F, rng);
  CHECK(la::det(F, A) == F.one());
  CHECK(check_isomorphism(s, s, zorn_sl3_automorphism(F, A)));

  Matrix g = random_basis_change(F, 99);
  auto t = pushforward(s, g);
  CHECK(validate(t).ok());
  CHECK(check_isomorphism(s, t, g));
  CompositionIsotopy f{la::scale(F, l, g), l};
  CHECK(is_isotopy(s, t, f));
  CHECK(isotopy_to_isomorphism(s, t, f) == g);
  CHECK_THROWS_AS(isotopy_to_isomorphism(s, t, {g, l}), Error);

  auto o = okubo(F);
  Matrix B = random_invertible(F, rng, 3);
  CHECK(check_isomorphism(o, o, okubo_conjugation_automorphism(F, B)));
}
