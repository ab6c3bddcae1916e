#pragma once

// N-homogeneous algebras A(E, R) = T(E)/(R), their duals, the two
// products built from the interleaving permutation, morphisms, and a
// degree-by-degree normal form engine for the graded components.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"
#include "nkoszul/matrix.hpp"
#include "nkoszul/sparse.hpp"
#include "nkoszul/tensor.hpp"

namespace nkoszul {

template <Field F>
class NHomogeneousAlgebra {
 public:
  NHomogeneousAlgebra(std::size_t dim_e, std::size_t degree, Subspace<F> relations, std::string label = {})
      : dim_e_(dim_e), degree_(degree), relations_(std::move(relations)), label_(std::move(label)) {
    if (degree_ < 2) throw DimensionError("homogeneity degree must be at least 2");
    if (relations_.ambient_dim() != ipow(dim_e_, degree_))
      throw DimensionError("relation space does not live in E^(x)N");
  }

  const F& field() const { return relations_.field(); }
  std::size_t dim_e() const { return dim_e_; }
  std::size_t degree() const { return degree_; }
  const Subspace<F>& relations() const { return relations_; }
  const std::string& label() const { return label_; }

  /// Equality of presentations; the label is ignored.
  friend bool operator==(const NHomogeneousAlgebra& a, const NHomogeneousAlgebra& b) {
    return a.dim_e_ == b.dim_e_ && a.degree_ == b.degree_ && a.relations_ == b.relations_;
  }

 private:
  std::size_t dim_e_;
  std::size_t degree_;
  Subspace<F> relations_;
  std::string label_;
};

/// T(E), no relations.
template <Field F>
NHomogeneousAlgebra<F> tensor_algebra(F f, std::size_t dim_e, std::size_t degree) {
  return {dim_e, degree, Subspace<F>::zero(f, ipow(dim_e, degree)), "T(E)"};
}

/// A(E, E^(x)N): everything of degree N vanishes.
template <Field F>
NHomogeneousAlgebra<F> truncated_tensor_algebra(F f, std::size_t dim_e, std::size_t degree) {
  return {dim_e, degree, Subspace<F>::full(f, ipow(dim_e, degree)), "A(E,E^N)"};
}

/// K[t], the unit object for the circle product.
template <Field F>
NHomogeneousAlgebra<F> polynomial_unit(F f, std::size_t degree) {
  return {1, degree, Subspace<F>::zero(f, 1), "K[t]"};
}

/// The algebra generated by d with d^N = 0, unit object for the bullet product.
template <Field F>
NHomogeneousAlgebra<F> nilpotent_unit(F f, std::size_t degree) {
  return {1, degree, Subspace<F>::full(f, 1), "Lambda_N{d}"};
}

/// K[x_0, ..., x_{k-1}] as a quadratic algebra with relations x_i x_j - x_j x_i.
template <Field F>
NHomogeneousAlgebra<F> commutative_polynomials(F f, std::size_t variables) {
  const std::size_t n = variables * variables;
  std::vector<Vector<F>> rows;
  for (std::size_t i = 0; i < variables; ++i)
    for (std::size_t j = i + 1; j < variables; ++j) {
      Vector<F> v(n, f.zero());
      v[i * variables + j] = f.one();
      v[j * variables + i] = f.neg(f.one());
      rows.push_back(std::move(v));
    }
  return {variables, 2, Subspace<F>::span(f, n, rows), "K[x]"};
}

/// sum over r+s = n-N of E^r (x) R (x) E^s inside E^(x)n, computed densely.
template <Field F>
Subspace<F> component_relations(const NHomogeneousAlgebra<F>& a, std::size_t n) {
  const F& f = a.field();
  const std::size_t d = a.dim_e(), N = a.degree();
  if (n < N) return Subspace<F>::zero(f, ipow(d, n));
  Matrix<F> all(f, 0, ipow(d, n));
  for (std::size_t r = 0; r + N <= n; ++r)
    all = Matrix<F>::stack(all, pad_subspace(a.relations(), ipow(d, r), ipow(d, n - N - r)).basis());
  return Subspace<F>::span(std::move(all));
}

/// Graded components A_0 .. A_max of an N-homogeneous algebra.
///
/// A_n is presented by its standard words: the words that are not pivots
/// of the (leftmost-pivot) RREF of the degree-n relations. Degree n is
/// built from degree n-1 as the quotient of A_{n-1} (x) E by the image of
/// A_{n-N} (x) R, which yields exactly the same standard words as the
/// RREF in E^(x)n but works in quotient-sized coordinates.
template <Field F>
class GradedQuotient {
 public:
  using value_type = typename F::value_type;

  GradedQuotient(const NHomogeneousAlgebra<F>& a, std::size_t max_degree)
      : f_(a.field()), dim_e_(a.dim_e()), degree_(a.degree()) {
    for (std::size_t i = 0; i < a.relations().dim(); ++i)
      relation_rows_.push_back(dense_to_sparse(f_, a.relations().basis().row(i)));
    levels_.emplace_back();
    levels_[0].words = {0};
    for (std::size_t n = 1; n <= max_degree; ++n) build_level(n);
  }

  const F& field() const { return f_; }
  std::size_t dim_e() const { return dim_e_; }
  std::size_t degree() const { return degree_; }
  std::size_t max_degree() const { return levels_.size() - 1; }

  std::size_t dim(std::size_t n) const { return level(n).words.size(); }

  std::vector<std::size_t> hilbert_dims() const {
    std::vector<std::size_t> h;
    for (const auto& l : levels_) h.push_back(l.words.size());
    return h;
  }

  /// Indices in E^(x)n of the standard words, increasing.
  const std::vector<std::uint64_t>& standard_words(std::size_t n) const { return level(n).words; }

  /// Column of the standard word `pos` of degree n inside A_{n-1} (x) E, i.e.
  /// (position of its prefix) * dim E + last letter.
  std::size_t parent_column(std::size_t n, std::size_t pos) const { return level(n).parent.at(pos); }

  /// (standard word pos of degree n-1) * x, in A_n.
  const SparseVec<F>& right_letter(std::size_t n, std::size_t pos, Letter x) const {
    return level(n).right.at(pos * dim_e_ + x);
  }

  /// x * (standard word pos of degree n-1), in A_n.
  const SparseVec<F>& left_letter(std::size_t n, Letter x, std::size_t pos) const {
    level(n);
    while (left_built_ < n) build_left(left_built_ + 1);
    return levels_[n].left.at(x).at(pos);
  }

  /// v * x for v in A_{n-1}.
  SparseVec<F> times_letter(std::size_t n, const SparseVec<F>& v, Letter x) const {
    std::vector<SparseEntry<F>> terms;
    for (const auto& e : v) {
      for (const auto& t : right_letter(n, e.index, x)) terms.push_back({t.index, f_.mul(e.value, t.value)});
    }
    return combine(std::move(terms));
  }

  /// x * v for v in A_{n-1}.
  SparseVec<F> letter_times(std::size_t n, Letter x, const SparseVec<F>& v) const {
    std::vector<SparseEntry<F>> terms;
    for (const auto& e : v) {
      for (const auto& t : left_letter(n, x, e.index)) terms.push_back({t.index, f_.mul(e.value, t.value)});
    }
    return combine(std::move(terms));
  }

  /// Coordinates in A_n of the class of the word w, n = |w|.
  SparseVec<F> normal_form(const Word& w) const {
    SparseVec<F> v = sparse_unit(f_, 0);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] >= dim_e_) throw std::out_of_range("letter outside alphabet");
      v = times_letter(k + 1, v, w[k]);
    }
    return v;
  }

  /// Standard word `pos` of degree n as a Word.
  Word word(std::size_t n, std::size_t pos) const { return WordBasis(dim_e_, n).word(standard_words(n).at(pos)); }

  /// Product of a in A_m and b in A_k, in A_{m+k}.
  SparseVec<F> multiply(std::size_t m, const SparseVec<F>& a, std::size_t k, const SparseVec<F>& b) const {
    if (m + k > max_degree()) throw DimensionError("multiply: degree beyond computed range");
    std::vector<SparseEntry<F>> terms;
    for (const auto& e : b) {
      const Word t = word(k, e.index);
      SparseVec<F> v = a;
      for (std::size_t j = 0; j < k; ++j) v = times_letter(m + j + 1, v, t[j]);
      for (auto& x : v) terms.push_back({x.index, f_.mul(e.value, x.value)});
    }
    return combine(std::move(terms));
  }

  /// table[a * dim(q) + b] = (standard word a of degree p) * (standard word b of degree q).
  std::vector<SparseVec<F>> product_table(std::size_t p, std::size_t q) const {
    if (p + q > max_degree()) throw DimensionError("product_table: degree beyond computed range");
    const std::size_t dp = dim(p), dq = dim(q);
    std::vector<SparseVec<F>> table(dp * dq);
    for (std::size_t a = 0; a < dp; ++a) {
      // products with prefixes of the standard words of degree j <= q
      std::vector<SparseVec<F>> prev{sparse_unit(f_, a)};
      for (std::size_t j = 1; j <= q; ++j) {
        std::vector<SparseVec<F>> cur(dim(j));
        for (std::size_t t = 0; t < dim(j); ++t) {
          const auto col = parent_column(j, t);
          cur[t] = times_letter(p + j, prev[col / dim_e_], static_cast<Letter>(col % dim_e_));
        }
        prev = std::move(cur);
      }
      for (std::size_t b = 0; b < dq; ++b) table[a * dq + b] = std::move(prev[b]);
    }
    return table;
  }

 private:
  struct Level {
    std::vector<std::uint64_t> words;
    std::vector<std::size_t> parent;
    std::vector<SparseVec<F>> right;              // indexed by parent column
    std::vector<std::vector<SparseVec<F>>> left;  // [letter][position in degree n-1]
  };

  const Level& level(std::size_t n) const {
    if (n >= levels_.size()) throw DimensionError("graded component beyond computed range");
    return levels_[n];
  }

  SparseVec<F> combine(std::vector<SparseEntry<F>> terms) const {
    std::size_t span = 0;
    for (const auto& t : terms) span = std::max<std::size_t>(span, t.index + 1);
    if (terms.size() > 64 && terms.size() * 4 > span) {
      // long combinations: accumulate densely instead of sorting
      std::vector<value_type> acc(span, f_.zero());
      for (const auto& t : terms) acc[t.index] = f_.add(acc[t.index], t.value);
      SparseVec<F> out;
      for (std::size_t i = 0; i < span; ++i)
        if (!f_.is_zero(acc[i])) out.push_back({static_cast<std::uint32_t>(i), std::move(acc[i])});
      return out;
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    SparseVec<F> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().index == t.index) {
        out.back().value = f_.add(out.back().value, t.value);
        if (f_.is_zero(out.back().value)) out.pop_back();
      } else if (!f_.is_zero(t.value)) {
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  void build_level(std::size_t n) {
    const Level& below = levels_[n - 1];
    const std::size_t cols = below.words.size() * dim_e_;
    std::vector<bool> is_pivot(cols, false);
    std::vector<SparseVec<F>> pivot_rows(cols);

    if (n >= degree_ && !relation_rows_.empty()) {
      SparseEchelon<F> ech(f_, cols);
      const std::size_t base = n - degree_;
      for (std::size_t w = 0; w < dim(base); ++w) {
        // prefix[p] = class of (standard word w) * p for words p of length N-1
        std::vector<SparseVec<F>> prefix{sparse_unit(f_, w)};
        for (std::size_t len = 1; len < degree_; ++len) {
          std::vector<SparseVec<F>> next(prefix.size() * dim_e_);
          for (std::size_t p = 0; p < prefix.size(); ++p)
            for (Letter x = 0; x < dim_e_; ++x) next[p * dim_e_ + x] = times_letter(base + len, prefix[p], x);
          prefix = std::move(next);
        }
        for (const auto& r : relation_rows_) {
          std::vector<SparseEntry<F>> terms;
          for (const auto& e : r) {
            const std::size_t p = e.index / dim_e_, x = e.index % dim_e_;
            for (const auto& t : prefix[p]) terms.push_back({static_cast<std::uint32_t>(t.index * dim_e_ + x), f_.mul(e.value, t.value)});
          }
          ech.insert(combine(std::move(terms)));
        }
      }
      for (auto& row : ech.reduced_rows()) {
        const auto p = row.front().index;
        is_pivot[p] = true;
        pivot_rows[p] = std::move(row);
      }
    }

    Level lvl;
    std::vector<std::int64_t> std_pos(cols, -1);
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_pivot[c]) continue;
      std_pos[c] = static_cast<std::int64_t>(lvl.words.size());
      lvl.words.push_back(below.words[c / dim_e_] * dim_e_ + c % dim_e_);
      lvl.parent.push_back(c);
    }
    lvl.right.resize(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      if (!is_pivot[c]) {
        lvl.right[c] = sparse_unit(f_, static_cast<std::size_t>(std_pos[c]));
        continue;
      }
      SparseVec<F> v;
      for (std::size_t k = 1; k < pivot_rows[c].size(); ++k) {
        const auto& e = pivot_rows[c][k];
        v.push_back({static_cast<std::uint32_t>(std_pos[e.index]), f_.neg(e.value)});
      }
      lvl.right[c] = std::move(v);
    }
    levels_.push_back(std::move(lvl));
  }

  // Left multiplication by generators is only needed by some callers and is
  // the costly table for large components, so it is built on first use.
  void build_left(std::size_t n) const {
    Level& cur = levels_[n];
    const Level& prev = levels_[n - 1];
    cur.left.assign(dim_e_, std::vector<SparseVec<F>>(prev.words.size()));
    for (Letter x = 0; x < dim_e_; ++x)
      for (std::size_t pos = 0; pos < prev.words.size(); ++pos) {
        if (n == 1) {
          cur.left[x][pos] = right_letter(1, 0, x);
        } else {
          const auto col = prev.parent[pos];
          cur.left[x][pos] =
              times_letter(n, prev.left[x][col / dim_e_], static_cast<Letter>(col % dim_e_));
        }
      }
    left_built_ = n;
  }

  F f_;
  std::size_t dim_e_;
  std::size_t degree_;
  std::vector<SparseVec<F>> relation_rows_;
  mutable std::size_t left_built_ = 0;
  mutable std::vector<Level> levels_;
};

/// dim A_0, ..., dim A_{n_max}.
template <Field F>
std::vector<std::size_t> hilbert_dims(const NHomogeneousAlgebra<F>& a, std::size_t n_max) {
  return GradedQuotient<F>(a, n_max).hilbert_dims();
}

/// dim A_0, dim A_d, dim A_{2d}, ... up to A_{k_max d}.
template <Field F>
std::vector<std::size_t> veronese_dims(const NHomogeneousAlgebra<F>& a, std::size_t d, std::size_t k_max) {
  const auto h = hilbert_dims(a, d * k_max);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= k_max; ++k) out.push_back(h[k * d]);
  return out;
}

/// The degree-n component with its relation space, standard words and the
/// projection E^(x)n -> A_n in standard-word coordinates. Dense; meant for
/// small n.
template <Field F>
struct GradedComponent {
  std::size_t n;
  Subspace<F> relations;
  std::vector<std::uint64_t> complement_words;
  LinearMap<F> projector;
};

template <Field F>
GradedComponent<F> graded_component(const NHomogeneousAlgebra<F>& a, std::size_t n) {
  const F& f = a.field();
  GradedQuotient<F> q(a, n);
  const WordBasis basis(a.dim_e(), n);
  Matrix<F> proj(f, q.dim(n), basis.size());
  for (std::size_t w = 0; w < basis.size(); ++w)
    for (const auto& e : q.normal_form(basis.word(w))) proj(e.index, w) = e.value;
  return {n, component_relations(a, n), q.standard_words(n), LinearMap<F>(std::move(proj))};
}

template <Field F>
NHomogeneousAlgebra<F> dual(const NHomogeneousAlgebra<F>& a) {
  std::string label = a.label();
  if (label.size() > 1 && label.back() == '!')
    label.pop_back();
  else
    label += "!";
  return {a.dim_e(), a.degree(), annihilator(a.relations()), label};
}

/// The opposite algebra: every relation read backwards.
template <Field F>
NHomogeneousAlgebra<F> opposite(const NHomogeneousAlgebra<F>& a) {
  return {a.dim_e(), a.degree(), reindex(a.relations(), reversal_permutation(a.dim_e(), a.degree())), a.label() + "^op"};
}

namespace detail {

template <Field F>
void check_same_kind(const NHomogeneousAlgebra<F>& a, const NHomogeneousAlgebra<F>& b, const char* what) {
  if (a.degree() != b.degree())
    throw DimensionError(std::string(what) + ": homogeneity degrees differ (" + std::to_string(a.degree()) +
                         " vs " + std::to_string(b.degree()) + ")");
  if (!(a.field() == b.field())) throw DimensionError(std::string(what) + ": fields differ");
}

/// Carries a subspace of E^N (x) E'^N (block slots) to (E (x) E')^N.
template <Field F>
Subspace<F> blocks_to_interleaved(const Subspace<F>& s, std::size_t n, std::size_t d1, std::size_t d2) {
  return reindex(s, invert_permutation(shuffle_permutation(n, d1, d2)));
}

}  // namespace detail

/// A o A' = A(E (x) E', pi_N(R (x) E'^N + E^N (x) R')).
template <Field F>
NHomogeneousAlgebra<F> circ(const NHomogeneousAlgebra<F>& a, const NHomogeneousAlgebra<F>& b) {
  detail::check_same_kind(a, b, "circ");
  const F& f = a.field();
  const std::size_t N = a.degree();
  const auto left = tensor_subspace(a.relations(), Subspace<F>::full(f, ipow(b.dim_e(), N)));
  const auto right = tensor_subspace(Subspace<F>::full(f, ipow(a.dim_e(), N)), b.relations());
  return {a.dim_e() * b.dim_e(), N, detail::blocks_to_interleaved(sum(left, right), N, a.dim_e(), b.dim_e()),
          "(" + a.label() + " o " + b.label() + ")"};
}

/// A . A' = A(E (x) E', pi_N(R (x) R')).
template <Field F>
NHomogeneousAlgebra<F> bullet(const NHomogeneousAlgebra<F>& a, const NHomogeneousAlgebra<F>& b) {
  detail::check_same_kind(a, b, "bullet");
  const std::size_t N = a.degree();
  return {a.dim_e() * b.dim_e(), N,
          detail::blocks_to_interleaved(tensor_subspace(a.relations(), b.relations()), N, a.dim_e(), b.dim_e()),
          "(" + a.label() + " * " + b.label() + ")"};
}

/// Word-index permutation (E (x) E')^N -> (E' (x) E)^N induced by swapping
/// the two factors of every letter.
inline std::vector<std::size_t> swap_factors_permutation(std::size_t n, std::size_t d1, std::size_t d2) {
  const std::size_t pair = d1 * d2;
  const WordBasis from(pair, n);
  std::vector<std::size_t> perm(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    Word w = from.word(i);
    for (auto& l : w.letters) l = static_cast<Letter>((l % d2) * d1 + l / d2);
    perm[i] = from.index(w);
  }
  return perm;
}

/// f^(x)N(R) subset of R'.
template <Field F>
bool is_morphism(const NHomogeneousAlgebra<F>& a, const NHomogeneousAlgebra<F>& b, const LinearMap<F>& f) {
  if (a.degree() != b.degree()) return false;
  if (f.domain_dim() != a.dim_e() || f.codomain_dim() != b.dim_e())
    throw DimensionError("is_morphism: map has the wrong shape");
  for (std::size_t i = 0; i < a.relations().dim(); ++i)
    if (!b.relations().contains(apply_tensor_power(f, a.relations().basis().row_vector(i), a.degree()))) return false;
  return true;
}

/// A linear map E -> E' with f^(x)N(R) subset of R', checked on construction.
template <Field F>
class Morphism {
 public:
  Morphism(NHomogeneousAlgebra<F> source, NHomogeneousAlgebra<F> target, LinearMap<F> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (!is_morphism(source_, target_, map_))
      throw std::invalid_argument("linear map does not carry the relations of the source into the target");
  }

  static Morphism identity(const NHomogeneousAlgebra<F>& a) {
    return Morphism(a, a, LinearMap<F>::identity(a.field(), a.dim_e()));
  }

  const NHomogeneousAlgebra<F>& source() const { return source_; }
  const NHomogeneousAlgebra<F>& target() const { return target_; }
  const LinearMap<F>& map() const { return map_; }
  const F& field() const { return source_.field(); }

  /// Invertible on generators with f^(x)N(R) = R'.
  bool is_isomorphism() const {
    if (source_.dim_e() != target_.dim_e() || map_.rank() != source_.dim_e()) return false;
    return tensor_power_image(map_, source_.relations(), source_.degree()) == target_.relations();
  }

 private:
  NHomogeneousAlgebra<F> source_;
  NHomogeneousAlgebra<F> target_;
  LinearMap<F> map_;
};

/// hom(A, B) = A^! . B
template <Field F>
NHomogeneousAlgebra<F> hom_algebra(const NHomogeneousAlgebra<F>& a, const NHomogeneousAlgebra<F>& b) {
  return bullet(dual(a), b);
}

/// end(A) = A^! . A
template <Field F>
NHomogeneousAlgebra<F> end_algebra(const NHomogeneousAlgebra<F>& a) {
  return hom_algebra(a, a);
}

/// dim (A o A')_n = dim A_n * dim A'_n for all n <= n_max.
template <Field F>
bool prop1_check(const NHomogeneousAlgebra<F>& a, const NHomogeneousAlgebra<F>& b, std::size_t n_max) {
  const auto ha = hilbert_dims(a, n_max), hb = hilbert_dims(b, n_max), hc = hilbert_dims(circ(a, b), n_max);
  for (std::size_t n = 0; n <= n_max; ++n)
    if (hc[n] != ha[n] * hb[n]) return false;
  return true;
}

}  // namespace nkoszul
