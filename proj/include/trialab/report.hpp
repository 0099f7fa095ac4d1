#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trialab/field.hpp"
#include "trialab/matrix.hpp"

namespace trialab {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string witness;  // first counterexample, empty on success
  std::size_t evaluated = 0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  const CheckResult* first_failure() const;
  const CheckResult* find(const std::string& name) const;
  void merge(const ValidationReport& other, const std::string& prefix = "");
};

struct ValidationOptions {
  std::size_t random_pairs = 1000;
  std::size_t linearized_samples = 200;
  std::uint64_t seed = 0xD4;
};

using Rng = std::mt19937_64;

/// rng() % q keeps sampling identical across standard libraries.
inline Fe random_element(const FiniteField& F, Rng& rng) {
  return Fe{std::uint32_t(rng() % F.order())};
}
Fe random_nonzero(const FiniteField& F, Rng& rng);
Vec random_vector(const FiniteField& F, Rng& rng, std::size_t n);
Matrix random_invertible(const FiniteField& F, Rng& rng, std::size_t n);

std::string format_vec(const Vec& v);

}  // namespace trialab
