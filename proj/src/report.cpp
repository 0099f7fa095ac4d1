#include "trialab/report.hpp"

#include <algorithm>

namespace trialab {

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

Fe random_nonzero(const FiniteField& F, Rng& rng) {
  return Fe{std::uint32_t(1 + rng() % (F.order() - 1))};
}

Vec random_vector(const FiniteField& F, Rng& rng, std::size_t n) {
  Vec v(n);
  for (auto& x : v) x = random_element(F, rng);
  return v;
}

Matrix random_invertible(const FiniteField& F, Rng& rng, std::size_t n) {
  for (;;) {
    Matrix m(n, n);
    for (auto& x : m.data()) x = random_element(F, rng);
    if (la::det(F, m).v != 0) return m;
  }
}

std::string format_vec(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i].v);
  }
  return s + "]";
}

}  // namespace trialab
