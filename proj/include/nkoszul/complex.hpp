#pragma once

// Finite slices of N-complexes and their generalized homology
//   _pH = Ker(d^p) / Im(d^(N-p)),  1 <= p <= N-1.
// A slice stores its spaces in the order the differential runs, so map k
// goes from position k to position k+1 whatever the homological grading.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"
#include "nkoszul/sparse.hpp"

namespace nkoszul {

/// K(f): chain complex, (B^!)*-degree goes down by one per step.
struct ChainK {
  static constexpr const char* name = "K";
};
/// L(f): cochain complex, B^!-degree goes up by one per step.
struct CochainL {
  static constexpr const char* name = "L";
};

template <Field F, class Orientation>
struct NComplexSlice {
  F field;
  std::size_t N = 2;
  long grade = 0;                  // total degree for K, C-degree minus B^!-degree for L
  std::vector<std::size_t> index;  // B^! degree m of each position
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  std::vector<SparseMatrix<F>> maps;  // maps[k] : position k -> position k+1

  std::size_t size() const { return dims.size(); }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
  }

  /// Position holding B^! degree m, if any.
  std::optional<std::size_t> position_of(std::size_t m) const {
    for (std::size_t k = 0; k < index.size(); ++k)
      if (index[k] == m) return k;
    return std::nullopt;
  }
};

template <Field F>
using KSlice = NComplexSlice<F, ChainK>;
template <Field F>
using LSlice = NComplexSlice<F, CochainL>;

/// d^p starting at position k; maps running off the end give the zero map
/// into the zero space.
template <Field F, class O>
SparseMatrix<F> power(const NComplexSlice<F, O>& s, std::size_t k, std::size_t p) {
  if (k >= s.size()) throw DimensionError("power: position out of range");
  if (k + p >= s.size()) return SparseMatrix<F>(s.field, 0, s.dims[k]);
  SparseMatrix<F> m = SparseMatrix<F>::identity(s.field, s.dims[k]);
  for (std::size_t j = 0; j < p; ++j) m = s.maps[k + j] * m;
  return m;
}

/// Throws ContractViolation unless every composite of N consecutive maps is zero.
template <Field F, class O>
void check_nilpotent(const NComplexSlice<F, O>& s) {
  for (std::size_t k = 0; k + s.N < s.size(); ++k)
    if (!power(s, k, s.N).is_zero())
      throw ContractViolation(std::string(O::name) + " slice " + std::to_string(s.grade) +
                              ": d^N is nonzero starting at position " + std::to_string(k));
}

template <Field F, class O>
bool is_nilpotent(const NComplexSlice<F, O>& s) {
  try {
    check_nilpotent(s);
    return true;
  } catch (const ContractViolation&) {
    return false;
  }
}

/// dim _pH keyed by (p, B^! degree of the position).
struct HomologyReport {
  std::size_t N = 2;
  long grade = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> entries;

  std::size_t at(std::size_t p, std::size_t m) const { return entries.at({p, m}); }
  bool is_acyclic() const {
    for (const auto& [key, dim] : entries)
      if (dim != 0) return false;
    return true;
  }
};

/// Caches ranks of d^p out of each position.
template <Field F, class O>
class PowerRanks {
 public:
  explicit PowerRanks(const NComplexSlice<F, O>& s) : s_(s) {}

  std::size_t rank(std::size_t k, std::size_t p) {
    auto it = cache_.find({k, p});
    if (it != cache_.end()) return it->second;
    const std::size_t r = power(s_, k, p).rank();
    cache_[{k, p}] = r;
    return r;
  }

  /// dim Ker(d^p at k) - dim Im(d^q into k).
  std::size_t homology(std::size_t k, std::size_t p, std::size_t q) {
    const std::size_t ker = s_.dims[k] - rank(k, p);
    const std::size_t im = k >= q ? rank(k - q, q) : 0;
    if (im > ker) throw ContractViolation("image larger than kernel: d^N is not zero");
    return ker - im;
  }

 private:
  const NComplexSlice<F, O>& s_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cache_;
};

/// _pH at every position for the given p (or all p in 1..N-1 when p == 0).
template <Field F, class O>
HomologyReport generalized_homology(const NComplexSlice<F, O>& s, std::size_t p = 0) {
  if (p >= s.N) throw std::invalid_argument("p must lie in 1..N-1");
  HomologyReport rep;
  rep.N = s.N;
  rep.grade = s.grade;
  PowerRanks<F, O> ranks(s);
  const std::size_t lo = p == 0 ? 1 : p, hi = p == 0 ? s.N - 1 : p;
  for (std::size_t q = lo; q <= hi; ++q)
    for (std::size_t k = 0; k < s.size(); ++k) rep.entries[{q, s.index[k]}] = ranks.homology(k, q, s.N - q);
  return rep;
}

template <Field F, class O>
bool is_acyclic(const NComplexSlice<F, O>& s) {
  return generalized_homology(s).is_acyclic();
}

}  // namespace nkoszul
