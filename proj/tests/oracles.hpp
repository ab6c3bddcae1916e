#pragma once

// Brute-force reference constructions used to cross-check the library.
// They work densely in the full word spaces E^(x)n and share nothing with
// the quotient engine beyond Matrix and rref.

#include <cstddef>
#include <vector>

#include "nkoszul/nkoszul.hpp"

namespace oracle {

using namespace nkoszul;

/// Ideal component in degree n, built by stacking every E^r (x) R (x) E^s
/// generator vector explicitly and row reducing.
template <Field F>
Subspace<F> ideal_component(const NHomogeneousAlgebra<F>& a, std::size_t n) {
  const F& f = a.field();
  const std::size_t d = a.dim_e(), N = a.degree();
  const WordBasis full(d, n);
  std::vector<Vector<F>> rows;
  if (n >= N) {
    const WordBasis rel(d, N);
    for (std::size_t r = 0; r + N <= n; ++r) {
      const WordBasis left(d, r), right(d, n - N - r);
      for (std::size_t i = 0; i < a.relations().dim(); ++i)
        for (std::size_t u = 0; u < left.size(); ++u)
          for (std::size_t v = 0; v < right.size(); ++v) {
            Vector<F> row(full.size(), f.zero());
            for (std::size_t w = 0; w < rel.size(); ++w) {
              const auto& c = a.relations().basis()(i, w);
              if (f.is_zero(c)) continue;
              row[full.index(concat(concat(left.word(u), rel.word(w)), right.word(v)))] = c;
            }
            rows.push_back(std::move(row));
          }
    }
  }
  return Subspace<F>::span(f, full.size(), rows);
}

/// A_n described by the ideal component: normal forms are residuals, the
/// standard words are the non-pivot columns.
template <Field F>
class Quotient {
 public:
  Quotient(const NHomogeneousAlgebra<F>& a, std::size_t max_degree) : a_(a) {
    for (std::size_t n = 0; n <= max_degree; ++n) {
      rel_.push_back(ideal_component(a, n));
      std::vector<bool> piv(rel_.back().ambient_dim(), false);
      for (auto p : rel_.back().pivots()) piv[p] = true;
      std::vector<std::size_t> s;
      for (std::size_t w = 0; w < piv.size(); ++w)
        if (!piv[w]) s.push_back(w);
      standard_.push_back(std::move(s));
    }
  }

  std::size_t dim(std::size_t n) const { return standard_.at(n).size(); }
  const std::vector<std::size_t>& standard(std::size_t n) const { return standard_.at(n); }

  /// Coordinates over the standard words of the class of v in E^(x)n.
  Vector<F> reduce(std::size_t n, const Vector<F>& v) const {
    const auto r = rel_.at(n).residual(v);
    Vector<F> out;
    for (auto w : standard_.at(n)) out.push_back(r[w]);
    return out;
  }

  /// Standard-word coordinates lifted to E^(x)n.
  Vector<F> lift(std::size_t n, const Vector<F>& c) const {
    Vector<F> v(ipow(a_.dim_e(), n), a_.field().zero());
    for (std::size_t k = 0; k < c.size(); ++k) v[standard_.at(n)[k]] = c[k];
    return v;
  }

  /// Product of classes of degrees p and q through concatenation of lifts.
  Vector<F> multiply(std::size_t p, const Vector<F>& x, std::size_t q, const Vector<F>& y) const {
    return reduce(p + q, kron(lift(p, x), lift(q, y), a_.field()));
  }

 private:
  NHomogeneousAlgebra<F> a_;
  std::vector<Subspace<F>> rel_;
  std::vector<std::vector<std::size_t>> standard_;
};

template <Field F>
Vector<F> unit(const F& f, std::size_t n, std::size_t i) {
  Vector<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <Field F>
Matrix<F> dense(const SparseMatrix<F>& m) {
  return m.to_dense();
}

template <Field F>
Vector<F> dense(const F& f, const SparseVec<F>& v, std::size_t n) {
  return sparse_to_dense(f, v, n);
}

}  // namespace oracle
