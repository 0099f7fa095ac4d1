#include "trialab/quadratic.hpp"

namespace trialab {

Fe quadratic_value(const FiniteField& F, const Matrix& gram, const Vec& x) {
  Fe s{};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].v == 0) continue;
    Fe row{};
    for (std::size_t j = 0; j < n; ++j) row = F.add(row, F.mul(gram(i, j), x[j]));
    s = F.add(s, F.mul(x[i], row));
  }
  return s;
}

Fe polar_value(const FiniteField& F, const Matrix& gram, const Vec& x, const Vec& y) {
  Fe s{};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].v == 0) continue;
    Fe row{};
    for (std::size_t j = 0; j < n; ++j) row = F.add(row, F.mul(F.add(gram(i, j), gram(j, i)), y[j]));
    s = F.add(s, F.mul(x[i], row));
  }
  return s;
}

Matrix polar_matrix(const FiniteField& F, const Matrix& gram) {
  return la::add(F, gram, la::transpose(gram));
}

Matrix gram_from_polar(const FiniteField& F, const Vec& values, const Matrix& polar) {
  const std::size_t n = values.size();
  Matrix g(n, n);
  const bool char2 = F.characteristic() == 2;
  const Fe half = char2 ? F.zero() : F.inv(F.from_int(2));
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = values[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (char2) {
        g(i, j) = polar(i, j);
      } else {
        g(i, j) = F.mul(half, polar(i, j));
        g(j, i) = g(i, j);
      }
    }
  }
  return g;
}

Matrix canonical_gram(const FiniteField& F, const Matrix& gram) {
  const std::size_t n = gram.rows();
  Vec values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = gram(i, i);
  return gram_from_polar(F, values, polar_matrix(F, gram));
}

bool is_canonical_gram(const FiniteField& F, const Matrix& gram) {
  return gram.rows() == gram.cols() && canonical_gram(F, gram) == gram;
}

Matrix transport_gram(const FiniteField& F, const Matrix& gram, const Matrix& ginv) {
  return canonical_gram(F, la::mul(F, la::transpose(ginv), la::mul(F, gram, ginv)));
}

bool is_nondegenerate(const FiniteField& F, const Matrix& gram) {
  return la::det(F, polar_matrix(F, gram)).v != 0;
}

}  // namespace trialab
