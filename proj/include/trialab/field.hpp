#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trialab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field element, stored as the base-p integer encoding of its coordinate
/// vector in the power basis of the modulus root (c0 is least significant).
struct Fe {
  std::uint32_t v = 0;

  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

namespace detail {

struct FieldTables {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // c0..ck, monic
  std::vector<std::uint32_t> exp;      // length 2(q-1)
  std::vector<std::uint32_t> log;      // log[0] unused
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> add;      // q*q table, empty for large q
  std::uint32_t generator = 0;
};

std::uint32_t add_digits(const FieldTables& t, std::uint32_t a, std::uint32_t b);

}  // namespace detail

/// GF(p^k) with table-driven arithmetic. Copies share the immutable tables.
class FiniteField {
 public:
  /// Largest supported field order; arithmetic tables are dense.
  static constexpr std::uint32_t kMaxOrder = 1u << 21;

  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  /// GF(p^k) over the lexicographically smallest monic irreducible
  /// polynomial of degree k (coefficient list [c0, ..., c_{k-1}] compared
  /// from c0).
  static FiniteField smallest(std::uint32_t p, unsigned k);

  std::uint32_t characteristic() const { return t_->p; }
  unsigned degree() const { return t_->k; }
  std::uint32_t order() const { return t_->q; }
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }
  std::string describe() const;

  Fe zero() const { return {0}; }
  Fe one() const { return {1}; }
  Fe from_int(std::int64_t n) const;
  Fe element(std::uint32_t index) const;
  Fe from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(Fe a) const;

  Fe add(Fe a, Fe b) const {
    const auto& t = *t_;
    if (!t.add.empty()) return {t.add[std::size_t(a.v) * t.q + b.v]};
    if (t.p == 2) return {a.v ^ b.v};
    return {detail::add_digits(t, a.v, b.v)};
  }
  Fe neg(Fe a) const { return {t_->neg[a.v]}; }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const {
    if (a.v == 0 || b.v == 0) return {0};
    const auto& t = *t_;
    return {t.exp[t.log[a.v] + t.log[b.v]]};
  }
  /// a + b*c
  Fe fma(Fe a, Fe b, Fe c) const { return add(a, mul(b, c)); }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, std::int64_t e) const;

  /// Fixed primitive element (smallest encoding of multiplicative order q-1).
  Fe generator() const { return {t_->generator}; }
  /// Discrete log to base generator(); a must be nonzero.
  std::uint32_t log(Fe a) const;
  Fe exp(std::uint64_t e) const { return {t_->exp[e % (t_->q - 1)]}; }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus);
  }

 private:
  std::shared_ptr<const detail::FieldTables> t_;
};

bool is_prime(std::uint32_t n);
std::vector<std::uint32_t> prime_factors(std::uint64_t n);

/// Rabin irreducibility test over GF(p); modulus is monic, coefficients c0..ck.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus);

/// Primitive cube root of unity; requires q = 1 mod 3.
Fe primitive_cube_root(const FiniteField& F);

/// Parses "7", "4", "2^2", "7^1" into (p, k).
std::pair<std::uint32_t, unsigned> parse_field_spec(const std::string& spec);

}  // namespace trialab
