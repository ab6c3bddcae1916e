#pragma once

// Sparse vectors, column-sparse matrices and an incremental echelon form.
// The graded engines (normal forms, Koszul slices, bar complexes) produce
// maps whose columns have a handful of entries; these types keep them
// that way.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"
#include "nkoszul/matrix.hpp"

namespace nkoszul {

template <Field F>
struct SparseEntry {
  std::uint32_t index;
  typename F::value_type value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Entries sorted by strictly increasing index, no stored zeros.
template <Field F>
using SparseVec = std::vector<SparseEntry<F>>;

template <Field F>
SparseVec<F> sparse_unit(const F& f, std::size_t index) {
  return {SparseEntry<F>{static_cast<std::uint32_t>(index), f.one()}};
}

/// y + a*x
template <Field F>
SparseVec<F> sparse_axpy(const F& f, const SparseVec<F>& y, const typename F::value_type& a, const SparseVec<F>& x) {
  SparseVec<F> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].index < y[i].index) {
      out.push_back({x[j].index, f.mul(a, x[j].value)});
      ++j;
    } else {
      auto v = y[i].value;
      f.axpy(v, a, x[j].value);
      if (!f.is_zero(v)) out.push_back({y[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <Field F>
SparseVec<F> sparse_scale(const F& f, const typename F::value_type& a, SparseVec<F> x) {
  if (f.is_zero(a)) return {};
  for (auto& e : x) e.value = f.mul(a, e.value);
  return x;
}

template <Field F>
Vector<F> sparse_to_dense(const F& f, const SparseVec<F>& x, std::size_t n) {
  Vector<F> v(n, f.zero());
  for (const auto& e : x) {
    if (e.index >= n) throw DimensionError("sparse_to_dense: index out of range");
    v[e.index] = e.value;
  }
  return v;
}

template <Field F>
SparseVec<F> dense_to_sparse(const F& f, std::span<const typename F::value_type> v) {
  SparseVec<F> x;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!f.is_zero(v[i])) x.push_back({static_cast<std::uint32_t>(i), v[i]});
  return x;
}

/// Dense scratch buffer for building sparse linear combinations.
template <Field F>
class Accumulator {
 public:
  using value_type = typename F::value_type;

  Accumulator(F f, std::size_t n) : f_(std::move(f)), dense_(n, f_.zero()), touched_flag_(n, 0) {}

  std::size_t size() const { return dense_.size(); }

  void add(std::size_t i, const value_type& v) {
    touch(i);
    dense_[i] = f_.add(dense_[i], v);
  }
  void add_product(std::size_t i, const value_type& a, const value_type& b) {
    touch(i);
    f_.axpy(dense_[i], a, b);
  }
  /// += a * x
  void axpy(const value_type& a, const SparseVec<F>& x) {
    for (const auto& e : x) add_product(e.index, a, e.value);
  }

  SparseVec<F> take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec<F> out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
      if (!f_.is_zero(dense_[i])) out.push_back({static_cast<std::uint32_t>(i), std::move(dense_[i])});
      dense_[i] = f_.zero();
      touched_flag_[i] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  void touch(std::size_t i) {
    if (i >= dense_.size()) throw DimensionError("accumulator index out of range");
    if (!touched_flag_[i]) {
      touched_flag_[i] = 1;
      touched_.push_back(static_cast<std::uint32_t>(i));
    }
  }

  F f_;
  std::vector<value_type> dense_;
  std::vector<char> touched_flag_;
  std::vector<std::uint32_t> touched_;
};

/// Incremental row echelon form with leftmost pivots. Rows are kept with a
/// leading coefficient of one; `reduced_rows` back-substitutes to the RREF.
template <Field F>
class SparseEchelon {
 public:
  SparseEchelon(F f, std::size_t ambient) : f_(std::move(f)), ambient_(ambient), pivot_row_(ambient, -1) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }

  SparseVec<F> reduce(SparseVec<F> v) const { return reduce_from(std::move(v), 0); }

  bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }

  /// Adds v to the span; true when v was independent of the current rows.
  bool insert(SparseVec<F> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    if (v.back().index >= ambient_) throw DimensionError("SparseEchelon: index out of range");
    const auto lead_inv = f_.inv(v.front().value);
    v = sparse_scale(f_, lead_inv, std::move(v));
    pivot_row_[v.front().index] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  /// Fully reduced rows sorted by pivot: the canonical RREF of the span.
  std::vector<SparseVec<F>> reduced_rows() const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().index > rows_[b].front().index; });
    std::vector<SparseVec<F>> done(rows_.size());
    // Rows with larger pivots are finished first and then have no entries
    // at any other pivot column, so one pass per row suffices.
    std::vector<std::int64_t> done_row(ambient_, -1);
    for (auto r : order) {
      SparseVec<F> v = eliminate(rows_[r], 1, [&](std::size_t c) -> const SparseVec<F>* {
        const auto k = done_row[c];
        return k < 0 ? nullptr : &done[static_cast<std::size_t>(k)];
      });
      done_row[v.front().index] = static_cast<std::int64_t>(r);
      done[r] = std::move(v);
    }
    std::sort(done.begin(), done.end(),
              [](const SparseVec<F>& a, const SparseVec<F>& b) { return a.front().index < b.front().index; });
    return done;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r.front().index);
    std::sort(p.begin(), p.end());
    return p;
  }

 private:
  SparseVec<F> reduce_from(SparseVec<F> v, std::size_t start) const {
    for (const auto& e : v)
      if (e.index >= ambient_) throw DimensionError("SparseEchelon: index out of range");
    return eliminate(std::move(v), start, [&](std::size_t c) -> const SparseVec<F>* {
      const auto r = pivot_row_[c];
      return r < 0 ? nullptr : &rows_[static_cast<std::size_t>(r)];
    });
  }

  /// Clears every entry of v from position `start` on whose column has a row
  /// (as returned by `row_at`) starting there. Merges while v is short and
  /// switches to a dense sweep once fill-in makes it long.
  template <class RowAt>
  SparseVec<F> eliminate(SparseVec<F> v, std::size_t start, RowAt row_at) const {
    std::size_t i = start;
    while (i < v.size()) {
      if (v.size() > 64 && v.size() * 8 > ambient_) return eliminate_dense(v, i, row_at);
      const SparseVec<F>* row = row_at(v[i].index);
      if (!row) {
        ++i;
        continue;
      }
      // The row starts at this column, so entries before i survive.
      v = sparse_axpy(f_, v, f_.neg(v[i].value), *row);
    }
    return v;
  }

  template <class RowAt>
  SparseVec<F> eliminate_dense(const SparseVec<F>& v, std::size_t start, RowAt row_at) const {
    std::vector<typename F::value_type> acc(ambient_, f_.zero());
    for (const auto& e : v) acc[e.index] = e.value;
    for (std::size_t c = v[start].index; c < ambient_; ++c) {
      if (f_.is_zero(acc[c])) continue;
      const SparseVec<F>* row = row_at(c);
      if (!row) continue;
      const auto a = f_.neg(acc[c]);
      for (const auto& e : *row) f_.axpy(acc[e.index], a, e.value);
    }
    SparseVec<F> out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start));
    for (std::size_t c = v[start].index; c < ambient_; ++c)
      if (!f_.is_zero(acc[c])) out.push_back({static_cast<std::uint32_t>(c), std::move(acc[c])});
    return out;
  }

  F f_;
  std::size_t ambient_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<SparseVec<F>> rows_;
};

/// A linear map stored column by column (column j = image of basis vector j).
template <Field F>
class SparseMatrix {
 public:
  using value_type = typename F::value_type;

  SparseMatrix(F f, std::size_t rows, std::size_t cols) : f_(std::move(f)), rows_(rows), columns_(cols) {}

  static SparseMatrix identity(F f, std::size_t n) {
    SparseMatrix m(f, n, n);
    for (std::size_t j = 0; j < n; ++j) m.columns_[j] = sparse_unit(m.f_, j);
    return m;
  }

  static SparseMatrix from_dense(const Matrix<F>& d) {
    SparseMatrix m(d.field(), d.rows(), d.cols());
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const auto col = d.column_vector(j);
      m.columns_[j] = dense_to_sparse(d.field(), std::span<const value_type>(col));
    }
    return m;
  }

  const F& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVec<F>& column(std::size_t j) const { return columns_[j]; }
  void set_column(std::size_t j, SparseVec<F> v) {
    if (!v.empty() && v.back().index >= rows_) throw DimensionError("SparseMatrix: row index out of range");
    columns_[j] = std::move(v);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec<F>& c) { return c.empty(); });
  }

  SparseVec<F> apply(const SparseVec<F>& x) const {
    Accumulator<F> acc(f_, rows_);
    for (const auto& e : x) acc.axpy(e.value, columns_.at(e.index));
    return acc.take();
  }

  /// (b * a) is "b after a".
  friend SparseMatrix operator*(const SparseMatrix& b, const SparseMatrix& a) {
    if (b.cols() != a.rows()) throw DimensionError("sparse composition: dimension mismatch");
    SparseMatrix c(b.f_, b.rows_, a.cols());
    Accumulator<F> acc(b.f_, b.rows_);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (const auto& e : a.columns_[j]) acc.axpy(e.value, b.columns_[e.index]);
      c.columns_[j] = acc.take();
    }
    return c;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(f_, cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& e : columns_[j]) t.columns_[e.index].push_back({static_cast<std::uint32_t>(j), e.value});
    return t;
  }

  Matrix<F> to_dense() const {
    Matrix<F> d(f_, rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& e : columns_[j]) d(e.index, j) = e.value;
    return d;
  }

  /// Rank by eliminating columns, sparsest first.
  std::size_t rank() const {
    std::vector<std::size_t> order(cols());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return columns_[a].size() < columns_[b].size(); });
    SparseEchelon<F> ech(f_, rows_);
    for (auto j : order) {
      if (columns_[j].empty()) continue;
      ech.insert(columns_[j]);
      if (ech.rank() == rows_) break;
    }
    return ech.rank();
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.f_ == b.f_ && a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  F f_;
  std::size_t rows_;
  std::vector<SparseVec<F>> columns_;
};

/// dim Ker(b) - dim Im(a), checking b*a = 0.
template <Field F>
std::size_t homology_dim(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
  if (a.rows() != b.cols()) throw DimensionError("homology_dim: maps are not composable");
  if (!(b * a).is_zero()) throw ContractViolation("homology_dim: composite of the two maps is nonzero");
  return (b.cols() - b.rank()) - a.rank();
}

}  // namespace nkoszul
