#include <random>

#include "doctest.h"
#include "trialab/extension.hpp"
#include "trialab/field.hpp"

using namespace trialab;

namespace {

// Schoolbook polynomial product mod (p, modulus) on coordinate vectors.
std::vector<std::uint32_t> naive_mul(std::uint32_t p, const std::vector<std::uint32_t>& m,
                                     const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  const std::size_t k = m.size() - 1;
  std::vector<std::uint64_t> r(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const std::uint64_t c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    for (std::size_t i = 0; i < k; ++i) r[d - k + i] = (r[d - k + i] + (p - m[i]) * c) % p;
  }
  std::vector<std::uint32_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::uint32_t(r[i]);
  return out;
}

// Irreducible iff no roots, for degree 2 and 3.
bool has_root(std::uint32_t p, const std::vector<std::uint32_t>& m) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("smallest modulus is the first rootless monic polynomial") {
  for (auto [p, k] : {std::pair{2u, 2u}, {3u, 2u}, {5u, 2u}, {7u, 2u}, {2u, 3u}, {3u, 3u}, {7u, 3u}}) {
    auto F = FiniteField::smallest(p, k);
    // enumerate [c0..c_{k-1}] with c0 most significant
    std::vector<std::uint32_t> expect;
    std::uint32_t total = 1;
    for (unsigned i = 0; i < k; ++i) total *= p;
    for (std::uint32_t n = 0; n < total; ++n) {
      std::vector<std::uint32_t> m(k + 1, 0);
      std::uint32_t t = n;
      for (unsigned i = k; i-- > 0;) {
        m[i] = t % p;
        t /= p;
      }
      m[k] = 1;
      if (!has_root(p, m)) {
        expect = m;
        break;
      }
    }
    CHECK(F.modulus() == expect);
  }
  CHECK(FiniteField::smallest(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(FiniteField::smallest(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("multiplication agrees with schoolbook reduction") {
  for (auto [p, k] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 6u}, {7u, 3u}, {5u, 2u}}) {
    auto F = FiniteField::smallest(p, k);
    std::mt19937_64 rng(11);
    for (int n = 0; n < 300; ++n) {
      Fe a{std::uint32_t(rng() % F.order())}, b{std::uint32_t(rng() % F.order())};
      CHECK(F.coords(F.mul(a, b)) == naive_mul(p, F.modulus(), F.coords(a), F.coords(b)));
      auto ca = F.coords(a), cb = F.coords(b);
      std::vector<std::uint32_t> s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = (ca[i] + cb[i]) % p;
      CHECK(F.coords(F.add(a, b)) == s);
    }
  }
}

TEST_CASE("field axioms on random triples") {
  for (auto [p, k] : {std::pair{7u, 1u}, {2u, 2u}, {2u, 6u}, {7u, 3u}, {3u, 4u}}) {
    auto F = FiniteField::smallest(p, k);
    std::mt19937_64 rng(5);
    for (int n = 0; n < 200; ++n) {
      Fe a{std::uint32_t(rng() % F.order())}, b{std::uint32_t(rng() % F.order())},
          c{std::uint32_t(rng() % F.order())};
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      if (a.v) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
    CHECK_THROWS_AS(F.inv(F.zero()), Error);
  }
}

TEST_CASE("generator has full order") {
  for (auto [p, k] : {std::pair{7u, 1u}, {2u, 2u}, {2u, 6u}, {7u, 3u}}) {
    auto F = FiniteField::smallest(p, k);
    Fe x = F.one();
    std::uint32_t ord = 0;
    do {
      x = F.mul(x, F.generator());
      ++ord;
    } while (x != F.one());
    CHECK(ord == F.order() - 1);
    for (std::uint32_t i = 1; i < F.order(); ++i) CHECK(F.exp(F.log(Fe{i})) == Fe{i});
  }
}

TEST_CASE("primitive cube roots") {
  auto F7 = FiniteField::smallest(7, 1);
  Fe w = primitive_cube_root(F7);
  CHECK((w == F7.from_int(2) || w == F7.from_int(4)));
  CHECK(F7.add(F7.add(F7.mul(w, w), w), F7.one()) == F7.zero());
  auto F4 = FiniteField::smallest(2, 2);
  Fe w4 = primitive_cube_root(F4);
  CHECK(w4 != F4.one());
  CHECK(F4.pow(w4, 3) == F4.one());
  CHECK_THROWS_AS(primitive_cube_root(FiniteField::smallest(5, 1)), Error);
}

TEST_CASE("field specifications") {
  CHECK(parse_field_spec("7") == std::pair<std::uint32_t, unsigned>{7, 1});
  CHECK(parse_field_spec("4") == std::pair<std::uint32_t, unsigned>{2, 2});
  CHECK(parse_field_spec("2^2") == std::pair<std::uint32_t, unsigned>{2, 2});
  CHECK(parse_field_spec("343") == std::pair<std::uint32_t, unsigned>{7, 3});
  CHECK_THROWS_AS(parse_field_spec("6"), Error);
  CHECK_THROWS_AS(parse_field_spec("x"), Error);
}

TEST_CASE("reducible modulus is rejected") {
  CHECK_THROWS_AS(FiniteField(5, {1, 0, 1}), Error);  // x^2 + 1 has roots 2, 3 mod 5
  CHECK_NOTHROW(FiniteField(7, {1, 0, 1}));
}

// ---------------------------------------------------------------------------

TEST_CASE("Frobenius has order three and fixes exactly the base field") {
  for (auto [p, k] : {std::pair{7u, 1u}, {2u, 2u}, {5u, 1u}, {3u, 2u}}) {
    auto F = FiniteField::smallest(p, k);
    auto ext = make_extension(F);
    const auto& L = ext.top();
    CHECK(L.order() == F.order() * F.order() * F.order());
    std::uint32_t fixed = 0;
    bool moved = false;
    for (std::uint32_t i = 0; i < L.order(); ++i) {
      Fe x{i};
      CHECK(ext.rho(ext.rho(ext.rho(x))) == x);
      CHECK(ext.rho(x) == L.pow(x, F.order()));
      if (ext.rho(x) == x) {
        ++fixed;
        CHECK(ext.in_base(x));
      } else {
        moved = true;
        CHECK(!ext.in_base(x));
      }
    }
    CHECK(moved);
    CHECK(fixed == F.order());
    // embedding is a ring homomorphism
    for (std::uint32_t a = 0; a < F.order(); ++a) {
      CHECK(ext.restrict_or_throw(ext.embed(Fe{a})) == Fe{a});
      for (std::uint32_t b = 0; b < F.order(); ++b) {
        CHECK(ext.embed(F.add(Fe{a}, Fe{b})) == L.add(ext.embed(Fe{a}), ext.embed(Fe{b})));
        CHECK(ext.embed(F.mul(Fe{a}, Fe{b})) == L.mul(ext.embed(Fe{a}), ext.embed(Fe{b})));
      }
    }
  }
}

TEST_CASE("rho is a field automorphism and the GF(p) matrix matches") {
  auto ext = make_extension(FiniteField::smallest(2, 2));
  const auto& L = ext.top();
  auto P = ext.prime_field();
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    Fe a{std::uint32_t(rng() % L.order())}, b{std::uint32_t(rng() % L.order())};
    CHECK(ext.rho(L.mul(a, b)) == L.mul(ext.rho(a), ext.rho(b)));
    CHECK(ext.rho(L.add(a, b)) == L.add(ext.rho(a), ext.rho(b)));
    auto c = L.coords(a);
    Vec cv(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cv[i] = Fe{c[i]};
    Vec img = la::apply(P, ext.rho_matrix(), cv);
    std::vector<std::uint32_t> raw(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) raw[i] = img[i].v;
    CHECK(L.from_coords(raw) == ext.rho(a));
    CHECK(ext.from_base_coords(ext.to_base_coords(a)) == a);
  }
}

TEST_CASE("norm and trace") {
  auto ext = make_extension(FiniteField::smallest(2, 2));
  const auto& L = ext.top();
  const Fe g = L.generator();
  CHECK(norm(ext, g) == L.pow(g, 21));
  CHECK(norm(ext, L.one()) == L.one());
  CHECK(norm(ext, L.zero()) == L.zero());
  CHECK(trace(ext, L.one()) == L.from_int(3));
  bool nonzero_trace = false;
  for (std::uint32_t i = 0; i < L.order(); ++i) {
    Fe x{i};
    CHECK(ext.in_base(norm(ext, x)));
    CHECK(ext.in_base(trace(ext, x)));
    CHECK(norm(ext, ext.rho(x)) == norm(ext, x));
    CHECK(trace(ext, ext.rho(x)) == trace(ext, x));
    nonzero_trace = nonzero_trace || trace(ext, x).v != 0;
  }
  CHECK(nonzero_trace);
  std::mt19937_64 rng(9);
  for (int n = 0; n < 100; ++n) {
    Fe a = ext.embed(Fe{std::uint32_t(rng() % 4)});
    Fe x{std::uint32_t(rng() % L.order())}, y{std::uint32_t(rng() % L.order())};
    CHECK(trace(ext, L.add(L.mul(a, x), y)) == L.add(L.mul(a, trace(ext, x)), trace(ext, y)));
  }
}

TEST_CASE("norm equation is solvable for every nonzero base element") {
  for (auto [p, k] : {std::pair{2u, 2u}, {7u, 1u}, {3u, 2u}}) {
    auto F = FiniteField::smallest(p, k);
    auto ext = make_extension(F);
    for (std::uint32_t xi = 1; xi < F.order(); ++xi) {
      Fe eta = solve_norm_equation(ext, Fe{xi});
      CHECK(norm(ext, eta) == ext.embed(Fe{xi}));
    }
    CHECK(solve_norm_equation(ext, F.one()) == ext.top().one());
    CHECK_THROWS_AS(solve_norm_equation(ext, F.zero()), Error);
  }
}

TEST_CASE("Hilbert 90 over GF(64) is exhaustive") {
  auto ext = make_extension(FiniteField::smallest(2, 2));
  const auto& L = ext.top();
  std::size_t norm_one = 0;
  for (std::uint32_t i = 1; i < L.order(); ++i) {
    Fe mu{i};
    if (norm(ext, mu) != L.one()) {
      CHECK_THROWS_AS(hilbert90(ext, mu, GaloisAut::theta), Error);
      continue;
    }
    ++norm_one;
    for (auto a : {GaloisAut::rho, GaloisAut::theta}) {
      Fe zeta = hilbert90(ext, mu, a);
      REQUIRE(zeta.v != 0);
      CHECK(L.mul(zeta, L.inv(ext.aut(zeta, aut_power(a)))) == mu);
    }
  }
  CHECK(norm_one == 21);
  CHECK(hilbert90(ext, L.one(), GaloisAut::theta) == L.one());
}
