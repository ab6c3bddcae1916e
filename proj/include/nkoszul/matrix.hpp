#pragma once

// Dense exact linear algebra: matrices, reduced row echelon form, linear
// maps and subspaces kept in canonical (RREF) form so that equality of
// subspaces is equality of data.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"

namespace nkoszul {

template <Field F>
using Vector = std::vector<typename F::value_type>;

/// Dense row-major matrix over F.
template <Field F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  /// Small integer matrices, mostly for tests and fixtures.
  static Matrix from_ints(F field, std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionError("ragged initializer");
      std::size_t j = 0;
      for (long v : row) m(i, j++) = m.field_.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix from_rows(F field, std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.row_begin(i));
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<value_type> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vector<F> row_vector(std::size_t i) const { return Vector<F>(row(i).begin(), row(i).end()); }

  Vector<F> column_vector(std::size_t j) const {
    Vector<F> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_begin(a), row_begin(a) + cols_, row_begin(b));
  }

  void truncate_rows(std::size_t r) {
    rows_ = std::min(rows_, r);
    data_.resize(rows_ * cols_, field_.zero());
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& v) { return field_.is_zero(v); });
  }

  /// Rows of `top` followed by rows of `bottom`.
  static Matrix stack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_) throw DimensionError("stack: column count mismatch");
    Matrix m(top.field_, top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(), m.data_.begin() + top.data_.size());
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimension mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const value_type& x = a(i, k);
        if (a.field_.is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!a.field_.is_zero(b(k, j))) a.field_.axpy(c(i, j), x, b(k, j));
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  auto row_begin(std::size_t i) { return data_.begin() + static_cast<std::ptrdiff_t>(i * cols_); }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

template <Field F>
struct Echelon {
  Matrix<F> matrix;  // zero rows dropped
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination with leftmost pivots. The result is the unique
/// reduced row echelon form of the row space of `m`.
template <Field F>
Echelon<F> rref(Matrix<F> m) {
  const F f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t i = r;
    while (i < rows && f.is_zero(m(i, c))) ++i;
    if (i == rows) continue;
    m.swap_rows(i, r);
    const auto inv = f.inv(m(r, c));
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (f.is_zero(m(r, j))) continue;
      m(r, j) = f.mul(m(r, j), inv);
      support.push_back(j);
    }
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || f.is_zero(m(k, c))) continue;
      const auto factor = f.neg(m(k, c));
      for (std::size_t j : support) f.axpy(m(k, j), factor, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return {std::move(m), std::move(pivots)};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// A linear map stored as its codomain x domain matrix.
template <Field F>
class LinearMap {
 public:
  explicit LinearMap(Matrix<F> m) : m_(std::move(m)) {}

  static LinearMap zero(F field, std::size_t domain, std::size_t codomain) {
    return LinearMap(Matrix<F>(std::move(field), codomain, domain));
  }
  static LinearMap identity(F field, std::size_t n) { return LinearMap(Matrix<F>::identity(std::move(field), n)); }

  std::size_t domain_dim() const { return m_.cols(); }
  std::size_t codomain_dim() const { return m_.rows(); }
  const Matrix<F>& matrix() const { return m_; }
  const F& field() const { return m_.field(); }

  Vector<F> apply(std::span<const typename F::value_type> x) const {
    if (x.size() != domain_dim()) throw DimensionError("apply: vector length mismatch");
    const F& f = m_.field();
    Vector<F> y(codomain_dim(), f.zero());
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = 0; j < m_.cols(); ++j)
        if (!f.is_zero(x[j]) && !f.is_zero(m_(i, j))) f.axpy(y[i], m_(i, j), x[j]);
    return y;
  }

  /// (b * a) is "b after a".
  friend LinearMap operator*(const LinearMap& b, const LinearMap& a) {
    if (b.domain_dim() != a.codomain_dim()) throw DimensionError("composition: dimension mismatch");
    return LinearMap(b.m_ * a.m_);
  }

  bool is_zero() const { return m_.is_zero(); }
  std::size_t rank() const { return nkoszul::rank(m_); }

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  Matrix<F> m_;
};

/// A subspace of F^ambient held as its RREF basis.
template <Field F>
class Subspace {
 public:
  using value_type = typename F::value_type;

  /// Row span of `rows`.
  static Subspace span(Matrix<F> rows) {
    const std::size_t n = rows.cols();
    return Subspace(n, rref(std::move(rows)));
  }
  static Subspace span(F field, std::size_t ambient, const std::vector<Vector<F>>& vectors) {
    return span(Matrix<F>::from_rows(std::move(field), ambient, vectors));
  }
  static Subspace zero(F field, std::size_t ambient) { return span(Matrix<F>(std::move(field), 0, ambient)); }
  static Subspace full(F field, std::size_t ambient) { return span(Matrix<F>::identity(std::move(field), ambient)); }

  /// Wraps a matrix that is already in reduced row echelon form with the
  /// given pivots. No elimination is done; the caller guarantees canonicity.
  static Subspace from_canonical(Matrix<F> basis, std::vector<std::size_t> pivots) {
    const std::size_t n = basis.cols();
    return Subspace(n, Echelon<F>{std::move(basis), std::move(pivots)});
  }

  const F& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its projection along the basis onto the pivot coordinates;
  /// zero exactly when v lies in the subspace.
  Vector<F> residual(std::span<const value_type> v) const {
    if (v.size() != ambient_) throw DimensionError("residual: vector length mismatch");
    const F& f = field();
    Vector<F> r(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const auto c = r[pivots_[i]];
      if (f.is_zero(c)) continue;
      const auto factor = f.neg(c);
      auto row = basis_.row(i);
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (!f.is_zero(row[j])) f.axpy(r[j], factor, row[j]);
    }
    return r;
  }

  bool contains(std::span<const value_type> v) const {
    const auto r = residual(v);
    const F& f = field();
    return std::all_of(r.begin(), r.end(), [&](const value_type& x) { return f.is_zero(x); });
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("contains: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v in the RREF basis: the entries of v at the pivots.
  Vector<F> coordinates(std::span<const value_type> v) const {
    if (!contains(v)) throw DimensionError("coordinates: vector not in subspace");
    Vector<F> c;
    c.reserve(dim());
    for (std::size_t p : pivots_) c.push_back(v[p]);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(std::size_t ambient, Echelon<F> e)
      : ambient_(ambient), basis_(std::move(e.matrix)), pivots_(std::move(e.pivots)) {}

  std::size_t ambient_;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

template <Field F>
Subspace<F> kernel(const LinearMap<F>& map) {
  const F& f = map.field();
  const std::size_t n = map.domain_dim();
  auto [red, pivots] = rref(map.matrix());
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vector<F> v(n, f.zero());
    v[j] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(red(i, j));
    basis.push_back(std::move(v));
  }
  return Subspace<F>::span(f, n, basis);
}

template <Field F>
Subspace<F> image(const LinearMap<F>& map) {
  return Subspace<F>::span(map.matrix().transpose());
}

template <Field F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("sum: ambient mismatch");
  return Subspace<F>::span(Matrix<F>::stack(a.basis(), b.basis()));
}

/// Solves lambda*A = mu*B through the kernel of [A^T | -B^T].
template <Field F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersect: ambient mismatch");
  const F& f = a.field();
  const std::size_t n = a.ambient_dim(), ka = a.dim(), kb = b.dim();
  if (ka == 0 || kb == 0) return Subspace<F>::zero(f, n);
  Matrix<F> system(f, n, ka + kb);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < n; ++j) system(j, i) = a.basis()(i, j);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < n; ++j) system(j, ka + i) = f.neg(b.basis()(i, j));
  const auto coeffs = kernel(LinearMap<F>(std::move(system)));
  Matrix<F> lambda(f, coeffs.dim(), ka);
  for (std::size_t r = 0; r < coeffs.dim(); ++r)
    for (std::size_t i = 0; i < ka; ++i) lambda(r, i) = coeffs.basis()(r, i);
  return Subspace<F>::span(lambda * a.basis());
}

/// dim Ker(b) - dim Im(a) for U --a--> V --b--> W with b*a = 0.
template <Field F>
std::size_t homology_dim(const LinearMap<F>& a, const LinearMap<F>& b) {
  if (a.codomain_dim() != b.domain_dim()) throw DimensionError("homology_dim: maps are not composable");
  if (!(b * a).is_zero()) throw ContractViolation("homology_dim: composite of the two maps is nonzero");
  return (b.domain_dim() - b.rank()) - a.rank();
}

}  // namespace nkoszul
