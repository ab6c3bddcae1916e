#pragma once

// Lexicographic reduction operators on a word basis and the equality test
// R (x) E^r = E^r (x) R.

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "nkoszul/errors.hpp"
#include "nkoszul/matrix.hpp"
#include "nkoszul/tensor.hpp"

namespace nkoszul {

/// S : V -> V with S^2 = S, Ker S = R, and S(a) = a or every word of S(a)
/// smaller than a. Words are indexed as in WordBasis, so word order and
/// index order agree.
template <Field F>
struct ReductionOperator {
  LinearMap<F> S;
  std::vector<std::size_t> leading_words;  // increasing

  std::size_t dim() const { return S.domain_dim(); }
};

/// Row echelon form of R with each row's pivot at its greatest word.
template <Field F>
ReductionOperator<F> reduction_operator(const Subspace<F>& r) {
  const F& f = r.field();
  const std::size_t n = r.ambient_dim();
  // eliminate on reversed columns so that leftmost pivots are greatest words
  Matrix<F> rev(f, r.dim(), n);
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) rev(i, n - 1 - j) = r.basis()(i, j);
  const auto e = rref(std::move(rev));
  Matrix<F> s = Matrix<F>::identity(f, n);
  std::vector<std::size_t> leading;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const std::size_t lead = n - 1 - e.pivots[i];
    leading.push_back(lead);
    // S(lead) = lead - row
    for (std::size_t j = 0; j < n; ++j) s(j, lead) = f.neg(e.matrix(i, n - 1 - j));
    s(lead, lead) = f.zero();
  }
  std::sort(leading.begin(), leading.end());
  return {LinearMap<F>(std::move(s)), std::move(leading)};
}

struct ReductionProperties {
  bool idempotent;
  bool decreasing;
  bool kernel_is_r;
  bool all() const { return idempotent && decreasing && kernel_is_r; }
};

template <Field F>
ReductionProperties check_reduction(const ReductionOperator<F>& op, const Subspace<F>& r) {
  const F& f = r.field();
  const auto& m = op.S.matrix();
  const std::size_t n = op.dim();
  bool decreasing = true;
  for (std::size_t a = 0; a < n && decreasing; ++a) {
    bool fixed = true;
    for (std::size_t j = 0; j < n; ++j)
      if (!(m(j, a) == (j == a ? f.one() : f.zero()))) fixed = false;
    if (fixed) continue;
    for (std::size_t j = a; j < n; ++j)
      if (!f.is_zero(m(j, a))) decreasing = false;
  }
  return {op.S * op.S == op.S, decreasing, kernel(op.S) == r};
}

/// Im(S) is spanned by words.
template <Field F>
bool image_is_monomial(const ReductionOperator<F>& op) {
  const auto im = image(op.S);
  const F& f = op.S.field();
  for (std::size_t i = 0; i < im.dim(); ++i) {
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < im.ambient_dim(); ++j)
      if (!f.is_zero(im.basis()(i, j))) ++nonzero;
    if (nonzero != 1) return false;
  }
  return true;
}

enum class Lemma3Conclusion { Zero, Full, NotEqual };

inline const char* to_string(Lemma3Conclusion c) {
  switch (c) {
    case Lemma3Conclusion::Zero: return "Zero";
    case Lemma3Conclusion::Full: return "Full";
    default: return "NotEqual";
  }
}

struct Lemma3Result {
  bool equal;
  Lemma3Conclusion conclusion;
};

/// Compares R (x) E^r with E^r (x) R inside E^(N+r). Equality with R neither
/// 0 nor everything would contradict the lemma and raises ContractViolation.
template <Field F>
Lemma3Result lemma3_check(const Subspace<F>& r, std::size_t dim_e, std::size_t shift) {
  if (shift < 1) throw std::invalid_argument("lemma3_check needs r >= 1");
  const std::size_t pad = ipow(dim_e, shift);
  const bool equal = pad_subspace(r, 1, pad) == pad_subspace(r, pad, 1);
  if (!equal) return {false, Lemma3Conclusion::NotEqual};
  if (r.is_zero()) return {true, Lemma3Conclusion::Zero};
  if (r.is_full()) return {true, Lemma3Conclusion::Full};
  throw ContractViolation("R (x) E^r = E^r (x) R for a proper nonzero R");
}

/// Closure of a set of length-N words (as indices) under
/// w_1...w_N -> w_{r+1}...w_N u_1...u_r for all letters u.
inline std::set<std::size_t> monomial_rotation_closure(const std::set<std::size_t>& words, std::size_t dim_e,
                                                       std::size_t N, std::size_t r) {
  if (r < 1) throw std::invalid_argument("rotation needs r >= 1");
  const std::size_t shift = ipow(dim_e, std::min(r, N));
  const std::size_t total = ipow(dim_e, N);
  std::set<std::size_t> closed = words;
  std::vector<std::size_t> todo(words.begin(), words.end());
  while (!todo.empty()) {
    const std::size_t w = todo.back();
    todo.pop_back();
    // dropping min(r, N) leading letters keeps w mod dim_e^(N-r)
    const std::size_t kept = r >= N ? 0 : w % ipow(dim_e, N - r);
    for (std::size_t u = 0; u < shift; ++u) {
      const std::size_t next = (kept * shift + u) % total;
      if (closed.insert(next).second) todo.push_back(next);
    }
  }
  return closed;
}

/// span of the given words in E^(x)N.
template <Field F>
Subspace<F> monomial_subspace(const F& f, std::size_t ambient, const std::set<std::size_t>& words) {
  Matrix<F> m(f, words.size(), ambient);
  std::size_t i = 0;
  for (auto w : words) m(i++, w) = f.one();
  return Subspace<F>::span(std::move(m));
}

}  // namespace nkoszul
