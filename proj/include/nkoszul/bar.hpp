#pragma once

// Tor^A(K, K) from the normalized bar complex
//   B_i = (A_+)^(x)i,  d(a_1|...|a_i) = sum_{k=1}^{i-1} (-1)^k a_1|...|a_k a_{k+1}|...|a_i
// split by internal degree.

#include <cstddef>
#include <map>
#include <vector>

#include "nkoszul/algebra.hpp"
#include "nkoszul/sparse.hpp"

namespace nkoszul {

namespace detail {

inline void compositions_rec(std::size_t n, std::size_t parts, std::vector<std::size_t>& cur,
                             std::vector<std::vector<std::size_t>>& out) {
  if (parts == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (std::size_t first = 1; first + parts - 1 <= n; ++first) {
    cur.push_back(first);
    compositions_rec(n - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Ordered compositions of n into `parts` positive parts, lexicographic.
inline std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  detail::compositions_rec(n, parts, cur, out);
  return out;
}

template <Field F>
class BarComplex {
 public:
  BarComplex(const NHomogeneousAlgebra<F>& a, std::size_t n_max) : q_(a, n_max) {
    products_.assign(n_max + 1, std::vector<std::vector<SparseVec<F>>>(n_max + 1));
    for (std::size_t p = 1; p <= n_max; ++p)
      for (std::size_t r = 1; p + r <= n_max; ++r) products_[p][r] = q_.product_table(p, r);
  }

  const GradedQuotient<F>& quotient() const { return q_; }
  std::size_t n_max() const { return q_.max_degree(); }

  struct Space {
    std::vector<std::vector<std::size_t>> shapes;
    std::map<std::vector<std::size_t>, std::size_t> offset;
    std::size_t dim = 0;
  };

  /// B_{i,n}: one block A_{n_1} (x) ... (x) A_{n_i} per composition.
  Space space(std::size_t i, std::size_t n) const {
    Space s;
    if (i == 0) {
      if (n == 0) {
        s.shapes.push_back({});
        s.offset[{}] = 0;
        s.dim = 1;
      }
      return s;
    }
    for (auto& c : compositions(n, i)) {
      std::size_t d = 1;
      for (auto part : c) d *= q_.dim(part);
      s.offset[c] = s.dim;
      s.dim += d;
      s.shapes.push_back(std::move(c));
    }
    return s;
  }

  /// d : B_{i,n} -> B_{i-1,n}; zero for i <= 1.
  SparseMatrix<F> differential(std::size_t i, std::size_t n) const {
    const F& f = q_.field();
    const Space src = space(i, n), dst = space(i == 0 ? 0 : i - 1, n);
    SparseMatrix<F> d(f, dst.dim, src.dim);
    if (i <= 1) return d;
    Accumulator<F> acc(f, dst.dim);
    for (const auto& shape : src.shapes) {
      std::size_t block = 1;
      for (auto part : shape) block *= q_.dim(part);
      std::vector<std::size_t> digits(i);
      for (std::size_t col = 0; col < block; ++col) {
        // mixed radix, first factor most significant
        std::size_t rest = col;
        for (std::size_t k = i; k-- > 0;) {
          digits[k] = rest % q_.dim(shape[k]);
          rest /= q_.dim(shape[k]);
        }
        for (std::size_t k = 0; k + 1 < i; ++k) {
          std::vector<std::size_t> merged;
          merged.reserve(i - 1);
          for (std::size_t j = 0; j < k; ++j) merged.push_back(shape[j]);
          merged.push_back(shape[k] + shape[k + 1]);
          for (std::size_t j = k + 2; j < i; ++j) merged.push_back(shape[j]);
          const auto& prod = products_[shape[k]][shape[k + 1]][digits[k] * q_.dim(shape[k + 1]) + digits[k + 1]];
          const auto sign = (k % 2 == 0) ? f.neg(f.one()) : f.one();  // (-1)^(k+1), k zero-based
          // index of the merged tuple with the product in slot k
          for (const auto& e : prod) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < merged.size(); ++j) {
              const std::size_t digit = j < k ? digits[j] : (j == k ? e.index : digits[j + 1]);
              idx = idx * q_.dim(merged[j]) + digit;
            }
            acc.add_product(dst.offset.at(merged) + idx, sign, e.value);
          }
        }
        d.set_column(src.offset.at(shape) + col, acc.take());
      }
    }
    return d;
  }

 private:
  GradedQuotient<F> q_;
  std::vector<std::vector<std::vector<SparseVec<F>>>> products_;
};

/// tor[i][n] = dim Tor_i^A(K, K)_n for i <= i_max, n <= n_max.
template <Field F>
std::vector<std::vector<std::size_t>> tor_dims(const NHomogeneousAlgebra<F>& a, std::size_t i_max,
                                               std::size_t n_max) {
  BarComplex<F> bar(a, n_max);
  std::vector<std::vector<std::size_t>> tor(i_max + 1, std::vector<std::size_t>(n_max + 1, 0));
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<std::size_t> ranks(i_max + 2, 0);
    std::vector<SparseMatrix<F>> maps;
    for (std::size_t i = 0; i <= i_max + 1; ++i) {
      maps.push_back(bar.differential(i, n));
      ranks[i] = maps.back().rank();
    }
    for (std::size_t i = 2; i <= i_max + 1; ++i)
      if (!(maps[i - 1] * maps[i]).is_zero()) throw ContractViolation("bar differential does not square to zero");
    for (std::size_t i = 0; i <= i_max; ++i) tor[i][n] = bar.space(i, n).dim - ranks[i] - ranks[i + 1];
  }
  return tor;
}

/// Lowest degree where Tor_i may live for an N-homogeneous algebra.
inline std::size_t tor_pure_degree(std::size_t N, std::size_t i) {
  return (i / 2) * N + (i % 2);
}

/// Every Tor_i with i <= i_max is concentrated in degree jN (i = 2j) or jN+1 (i = 2j+1).
inline bool tor_is_pure(const std::vector<std::vector<std::size_t>>& tor, std::size_t N) {
  for (std::size_t i = 0; i < tor.size(); ++i)
    for (std::size_t n = 0; n < tor[i].size(); ++n)
      if (tor[i][n] != 0 && n != tor_pure_degree(N, i)) return false;
  return true;
}

}  // namespace nkoszul
