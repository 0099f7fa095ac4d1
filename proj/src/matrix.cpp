#include "trialab/matrix.hpp"

#include <algorithm>
#include <utility>

namespace trialab {

Matrix Matrix::identity(const FiniteField& F, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

Matrix Matrix::from_columns(std::span<const Vec> columns) {
  if (columns.empty()) return {};
  Matrix m(columns[0].size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw Error("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Fe x) { return x.v == 0; });
}

namespace la {

Matrix mul(const FiniteField& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix shape mismatch in product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Fe x = a(i, l);
      if (x.v == 0) continue;
      auto brow = b.row(l);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (brow[j].v) crow[j] = F.add(crow[j], F.mul(x, brow[j]));
      }
    }
  }
  return c;
}

Vec apply(const FiniteField& F, const Matrix& a, const Vec& x) {
  if (a.cols() != x.size()) throw Error("matrix-vector shape mismatch");
  Vec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Fe s{};
    auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) s = F.add(s, F.mul(r[j], x[j]));
    y[i] = s;
  }
  return y;
}

Matrix add(const FiniteField& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix shape mismatch in sum");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = F.add(a.data()[i], b.data()[i]);
  return c;
}

Matrix sub(const FiniteField& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix shape mismatch in difference");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = F.sub(a.data()[i], b.data()[i]);
  return c;
}

Matrix scale(const FiniteField& F, Fe s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = F.mul(s, a.data()[i]);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Vec add(const FiniteField& F, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.add(a[i], b[i]);
  return c;
}

Vec sub(const FiniteField& F, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.sub(a[i], b[i]);
  return c;
}

Vec scale(const FiniteField& F, Fe s, const Vec& a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.mul(s, a[i]);
  return c;
}

Fe dot(const FiniteField& F, const Vec& a, const Vec& b) {
  Fe s{};
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Fe x) { return x.v == 0; });
}

Echelon rref(const FiniteField& F, Matrix a) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c).v == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r) {
      auto x = a.row(piv);
      auto y = a.row(r);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    const Fe inv = F.inv(a(r, c));
    auto prow = a.row(r);
    for (std::size_t j = c; j < a.cols(); ++j) prow[j] = F.mul(prow[j], inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const Fe f = a(i, c);
      if (f.v == 0) continue;
      const Fe nf = F.neg(f);
      auto row = a.row(i);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (prow[j].v) row[j] = F.add(row[j], F.mul(nf, prow[j]));
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rref = std::move(a);
  return e;
}

std::size_t rank(const FiniteField& F, Matrix a) {
  return rref(F, std::move(a)).pivots.size();
}

namespace {

Matrix kernel_from_echelon(const FiniteField& F, const Matrix& r, const std::vector<std::size_t>& pivots,
                           std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(r(i, f));
    basis.push_back(std::move(v));
  }
  Matrix k(basis.size(), cols);
  for (std::size_t i = 0; i < basis.size(); ++i) std::copy(basis[i].begin(), basis[i].end(), k.row(i).begin());
  if (basis.empty()) return k;
  return rref(F, std::move(k)).rref;
}

}  // namespace

Matrix kernel(const FiniteField& F, const Matrix& a) {
  auto e = rref(F, a);
  return kernel_from_echelon(F, e.rref, e.pivots, a.cols());
}

std::optional<Matrix> inverse(const FiniteField& F, const Matrix& a) {
  if (a.rows() != a.cols()) throw Error("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = F.one();
  }
  auto e = rref(F, std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  }
  return inv;
}

Fe det(const FiniteField& F, Matrix a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Fe d = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).v == 0) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      auto x = a.row(piv);
      auto y = a.row(c);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      d = F.neg(d);
    }
    d = F.mul(d, a(c, c));
    const Fe inv = F.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      const Fe f = F.mul(a(i, c), inv);
      if (f.v == 0) continue;
      const Fe nf = F.neg(f);
      for (std::size_t j = c; j < n; ++j) a(i, j) = F.add(a(i, j), F.mul(nf, a(c, j)));
    }
  }
  return d;
}

std::optional<Vec> solve(const FiniteField& F, const Matrix& a, const Vec& b) {
  if (a.rows() != b.size()) throw Error("right-hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto e = rref(F, std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rref(i, a.cols());
  return x;
}

bool RowReducer::add(Vec row) {
  if (row.size() != cols_) throw Error("equation length mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Fe f = row[pivots_[i]];
    if (f.v == 0) continue;
    const Fe nf = F_.neg(f);
    const Vec& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < cols_; ++j) {
      if (r[j].v) row[j] = F_.add(row[j], F_.mul(nf, r[j]));
    }
  }
  std::size_t lead = 0;
  while (lead < cols_ && row[lead].v == 0) ++lead;
  if (lead == cols_) return false;
  const Fe inv = F_.inv(row[lead]);
  for (std::size_t j = lead; j < cols_; ++j) row[j] = F_.mul(row[j], inv);
  // keep previous rows reduced against the new pivot
  for (auto& r : rows_) {
    const Fe f = r[lead];
    if (f.v == 0) continue;
    const Fe nf = F_.neg(f);
    for (std::size_t j = lead; j < cols_; ++j) {
      if (row[j].v) r[j] = F_.add(r[j], F_.mul(nf, row[j]));
    }
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(lead);
  return true;
}

Matrix RowReducer::kernel() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
  Matrix r(rows_.size(), cols_);
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::copy(rows_[order[i]].begin(), rows_[order[i]].end(), r.row(i).begin());
    piv.push_back(pivots_[order[i]]);
  }
  return kernel_from_echelon(F_, r, piv, cols_);
}

}  // namespace la
}  // namespace trialab
