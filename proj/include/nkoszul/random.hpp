#pragma once

// Seeded generators for property sweeps. Entries are small integers in
// [-3, 3] mapped into the field.

#include <cstddef>
#include <random>

#include "nkoszul/algebra.hpp"
#include "nkoszul/matrix.hpp"

namespace nkoszul {

using Rng = std::mt19937_64;

template <Field F>
typename F::value_type random_scalar(const F& f, Rng& rng) {
  std::uniform_int_distribution<long> dist(-3, 3);
  return f.from_int(dist(rng));
}

inline std::size_t random_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <Field F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(f, rng);
  return m;
}

/// Uniformly drawn row space of exact dimension `dim`.
template <Field F>
Subspace<F> random_subspace(const F& f, std::size_t ambient, std::size_t dim, Rng& rng) {
  if (dim > ambient) throw DimensionError("random_subspace: dim exceeds ambient");
  if (dim == ambient) return Subspace<F>::full(f, ambient);
  for (;;) {
    auto s = Subspace<F>::span(random_matrix(f, dim, ambient, rng));
    if (s.dim() == dim) return s;
  }
}

/// Relation space with dim R uniform in [0, ambient].
template <Field F>
Subspace<F> random_relations(const F& f, std::size_t ambient, Rng& rng) {
  return random_subspace(f, ambient, random_index(rng, 0, ambient), rng);
}

template <Field F>
NHomogeneousAlgebra<F> random_algebra(const F& f, std::size_t dim_e, std::size_t degree, Rng& rng) {
  return {dim_e, degree, random_relations(f, ipow(dim_e, degree), rng), "random"};
}

template <Field F>
NHomogeneousAlgebra<F> random_algebra_with_dim(const F& f, std::size_t dim_e, std::size_t degree, std::size_t dim_r,
                                               Rng& rng) {
  return {dim_e, degree, random_subspace(f, ipow(dim_e, degree), dim_r, rng), "random"};
}

template <Field F>
LinearMap<F> random_map_of_rank(const F& f, std::size_t rows, std::size_t cols, std::size_t r, Rng& rng) {
  if (r > rows || r > cols) throw DimensionError("random_map_of_rank: rank too large");
  for (;;) {
    auto m = random_matrix(f, rows, r, rng) * random_matrix(f, r, cols, rng);
    if (rank(m) == r) return LinearMap<F>(std::move(m));
  }
}

template <Field F>
LinearMap<F> random_invertible(const F& f, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = random_matrix(f, n, n, rng);
    if (rank(m) == n) return LinearMap<F>(std::move(m));
  }
}

}  // namespace nkoszul
