#pragma once

#include "trialab/field.hpp"
#include "trialab/matrix.hpp"

namespace trialab {

// Quadratic forms are stored as a "gram" matrix G with q(x) = x^T G x.
// The polar form is b(x, y) = q(x + y) - q(x) - q(y) = x^T (G + G^T) y.
// In odd characteristic G is kept symmetric; in characteristic 2 it is kept
// upper triangular, which is the only faithful choice there.

Fe quadratic_value(const FiniteField& F, const Matrix& gram, const Vec& x);
Fe polar_value(const FiniteField& F, const Matrix& gram, const Vec& x, const Vec& y);
Matrix polar_matrix(const FiniteField& F, const Matrix& gram);

/// Canonical gram from diagonal values q(e_i) and the polar matrix.
Matrix gram_from_polar(const FiniteField& F, const Vec& values, const Matrix& polar);
/// Canonical gram representing the same quadratic form as `gram`.
Matrix canonical_gram(const FiniteField& F, const Matrix& gram);
bool is_canonical_gram(const FiniteField& F, const Matrix& gram);

/// Gram of y -> q(g^{-1} y), given ginv = g^{-1}.
Matrix transport_gram(const FiniteField& F, const Matrix& gram, const Matrix& ginv);

bool is_nondegenerate(const FiniteField& F, const Matrix& gram);

}  // namespace trialab
