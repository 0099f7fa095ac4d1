#include "trialab/field.hpp"

#include <algorithm>
#include <cstdlib>

namespace trialab {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return std::uint32_t(r);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = std::uint32_t((a[shift + i] + (p - c) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = std::uint32_t((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^m) mod f
Poly frobenius_power_of_x(std::uint32_t p, unsigned m, const Poly& f) {
  Poly r{0, 1};
  r = poly_mod(std::move(r), f, p);
  for (unsigned i = 0; i < m; ++i) r = poly_powmod(r, p, f, p);
  return r;
}

Poly sub_x(Poly a, std::uint32_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(std::uint32_t(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(std::uint32_t(n));
  return out;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus) {
  Poly f(modulus.begin(), modulus.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned n = unsigned(f.size() - 1);
  if (n == 1) return true;
  Poly xq = frobenius_power_of_x(p, n, f);
  if (!sub_x(xq, p).empty()) return false;
  for (std::uint32_t r : prime_factors(n)) {
    Poly g = poly_gcd(f, sub_x(frobenius_power_of_x(p, n / r, f), p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::uint32_t detail::add_digits(const FieldTables& t, std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = 0, scale = 1;
  for (unsigned i = 0; i < t.k; ++i) {
    std::uint32_t d = a % t.p + b % t.p;
    if (d >= t.p) d -= t.p;
    r += d * scale;
    a /= t.p;
    b /= t.p;
    scale *= t.p;
  }
  return r;
}

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw Error("field modulus must be monic of degree >= 1");
  for (auto c : modulus) {
    if (c >= p) throw Error("field modulus coefficient not reduced mod p");
  }
  if (!is_irreducible(p, modulus)) throw Error("field modulus is not irreducible");
  auto t = std::make_shared<detail::FieldTables>();
  t->p = p;
  t->k = unsigned(modulus.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < t->k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error("field order exceeds supported maximum 2^21");
  }
  t->q = std::uint32_t(q);
  t->modulus = std::move(modulus);

  const std::uint32_t Q = t->q;
  const unsigned k = t->k;
  t->neg.resize(Q);
  for (std::uint32_t a = 0; a < Q; ++a) {
    std::uint32_t x = a, r = 0, scale = 1;
    for (unsigned i = 0; i < k; ++i) {
      r += ((p - x % p) % p) * scale;
      x /= p;
      scale *= p;
    }
    t->neg[a] = r;
  }

  // Multiplication by the element `g` on encoded vectors, used only while
  // building the tables.
  auto decode = [&](std::uint32_t a) {
    Poly c(k);
    for (unsigned i = 0; i < k; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  };
  auto encode = [&](const Poly& c) {
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < k; ++i) {
      r += (i < c.size() ? c[i] : 0) * scale;
      scale *= p;
    }
    return r;
  };
  const Poly& m = t->modulus;
  auto mulmod = [&](std::uint32_t a, std::uint32_t b) {
    return encode(poly_mulmod(decode(a), decode(b), m, p));
  };

  // Find the smallest primitive element.
  const auto factors = prime_factors(Q - 1);
  auto powmod = [&](std::uint32_t a, std::uint64_t e) {
    Poly r = poly_powmod(decode(a), e, m, p);
    return encode(r);
  };
  std::uint32_t gen = 0;
  if (Q == 2) {
    gen = 1;
  } else {
    for (std::uint32_t g = 2; g < Q && !gen; ++g) {
      bool primitive = true;
      for (auto r : factors) {
        if (powmod(g, (Q - 1) / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = g;
    }
  }
  if (!gen) throw Error("no primitive element found");
  t->generator = gen;

  t->exp.resize(2 * std::size_t(Q - 1));
  t->log.assign(Q, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t e = 0; e < Q - 1; ++e) {
    t->exp[e] = cur;
    t->exp[e + Q - 1] = cur;
    t->log[cur] = e;
    cur = mulmod(cur, gen);
  }

  if (Q <= 1024 && p != 2) {
    t->add.resize(std::size_t(Q) * Q);
    for (std::uint32_t a = 0; a < Q; ++a) {
      for (std::uint32_t b = 0; b < Q; ++b) t->add[std::size_t(a) * Q + b] = detail::add_digits(*t, a, b);
    }
  }
  t_ = std::move(t);
}

FiniteField FiniteField::smallest(std::uint32_t p, unsigned k) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw Error("extension degree must be at least 1");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) {
    count *= p;
    if (count > kMaxOrder) throw Error("field order exceeds supported maximum 2^21");
  }
  // Enumerate [c0..c_{k-1}] in lexicographic order (c0 most significant).
  std::vector<std::uint32_t> poly(k + 1, 0);
  poly[k] = 1;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t x = n;
    for (unsigned i = k; i-- > 0;) {
      poly[i] = std::uint32_t(x % p);
      x /= p;
    }
    if (is_irreducible(p, poly)) return FiniteField(p, poly);
  }
  throw Error("no irreducible polynomial found");
}

std::string FiniteField::describe() const {
  if (t_->k == 1) return "GF(" + std::to_string(t_->p) + ")";
  return "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->k) + ")";
}

Fe FiniteField::from_int(std::int64_t n) const {
  std::int64_t r = n % std::int64_t(t_->p);
  if (r < 0) r += t_->p;
  return {std::uint32_t(r)};
}

Fe FiniteField::element(std::uint32_t index) const {
  if (index >= t_->q) throw Error("field element index out of range");
  return {index};
}

Fe FiniteField::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() != t_->k) throw Error("coordinate vector has wrong length for " + describe());
  std::uint32_t r = 0, scale = 1;
  for (unsigned i = 0; i < t_->k; ++i) {
    if (c[i] >= t_->p) throw Error("coordinate not reduced mod p");
    r += c[i] * scale;
    scale *= t_->p;
  }
  return {r};
}

std::vector<std::uint32_t> FiniteField::coords(Fe a) const {
  std::vector<std::uint32_t> c(t_->k);
  std::uint32_t x = a.v;
  for (unsigned i = 0; i < t_->k; ++i) {
    c[i] = x % t_->p;
    x /= t_->p;
  }
  return c;
}

Fe FiniteField::inv(Fe a) const {
  if (a.v == 0) throw Error("division by zero in " + describe());
  const auto& t = *t_;
  return {t.exp[(t.q - 1 - t.log[a.v]) % (t.q - 1)]};
}

Fe FiniteField::pow(Fe a, std::int64_t e) const {
  if (a.v == 0) {
    if (e == 0) return one();
    if (e < 0) throw Error("zero to a negative power");
    return zero();
  }
  const std::int64_t n = t_->q - 1;
  std::int64_t r = (std::int64_t(t_->log[a.v]) * (e % n)) % n;
  if (r < 0) r += n;
  return {t_->exp[std::size_t(r)]};
}

std::uint32_t FiniteField::log(Fe a) const {
  if (a.v == 0) throw Error("logarithm of zero");
  return t_->log[a.v];
}

Fe primitive_cube_root(const FiniteField& F) {
  const std::uint32_t q = F.order();
  if (q % 3 != 1) throw Error(F.describe() + " has no primitive cube root of unity (q != 1 mod 3)");
  return F.exp((q - 1) / 3);
}

std::pair<std::uint32_t, unsigned> parse_field_spec(const std::string& spec) {
  auto parse_uint = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 9) {
      throw Error("malformed field specification '" + spec + "'");
    }
    return std::strtoull(s.c_str(), nullptr, 10);
  };
  auto caret = spec.find('^');
  if (caret != std::string::npos) {
    auto p = parse_uint(spec.substr(0, caret));
    auto k = parse_uint(spec.substr(caret + 1));
    if (!is_prime(std::uint32_t(p)) || k == 0) throw Error("field specification '" + spec + "' is not a prime power");
    return {std::uint32_t(p), unsigned(k)};
  }
  auto q = parse_uint(spec);
  auto f = prime_factors(q);
  if (f.size() != 1) throw Error("field order " + spec + " is not a prime power");
  unsigned k = 0;
  for (std::uint64_t x = q; x > 1; x /= f[0]) ++k;
  return {f[0], k};
}

}  // namespace trialab
