#pragma once

// Word bases of tensor powers and subspace constructions on them.
//
// A word (w_0, ..., w_{n-1}) over an alphabet of size d has index
// sum_k w_k d^(n-1-k): the first letter is most significant, so the index
// order is the lexicographic order with letter 0 < letter 1 < ... .
// Tensor products of coordinate vectors use the same convention:
// (u (x) v)[i * dim(v) + j] = u[i] v[j].

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"
#include "nkoszul/matrix.hpp"

namespace nkoszul {

using Letter = std::uint32_t;

struct Word {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  friend auto operator<=>(const Word&, const Word&) = default;
};

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint32_t>::max() / base)
      throw DimensionError("tensor power too large: " + std::to_string(base) + "^" + std::to_string(exp));
    r *= base;
  }
  return r;
}

/// The lexicographically ordered basis of E^{(x)n}, dim E = alphabet_size.
class WordBasis {
 public:
  WordBasis(std::size_t alphabet_size, std::size_t length)
      : alphabet_(alphabet_size), length_(length), size_(ipow(alphabet_size, length)) {}

  std::size_t alphabet_size() const { return alphabet_; }
  std::size_t length() const { return length_; }
  std::size_t size() const { return size_; }

  std::size_t index(const Word& w) const {
    if (w.size() != length_) throw std::out_of_range("word has length " + std::to_string(w.size()));
    std::size_t i = 0;
    for (Letter l : w.letters) {
      if (l >= alphabet_) throw std::out_of_range("letter " + std::to_string(l) + " outside alphabet");
      i = i * alphabet_ + l;
    }
    return i;
  }

  Word word(std::size_t index) const {
    if (index >= size_) throw std::out_of_range("word index " + std::to_string(index) + " out of range");
    Word w;
    w.letters.assign(length_, 0);
    for (std::size_t k = length_; k-- > 0;) {
      w.letters[k] = static_cast<Letter>(index % alphabet_);
      index /= alphabet_;
    }
    return w;
  }

 private:
  std::size_t alphabet_;
  std::size_t length_;
  std::size_t size_;
};

/// perm[i] is the index of the reversal of the word with index i.
inline std::vector<std::size_t> reversal_permutation(std::size_t dim_e, std::size_t n) {
  const WordBasis basis(dim_e, n);
  std::vector<std::size_t> perm(basis.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    Word w = basis.word(i);
    std::reverse(w.letters.begin(), w.letters.end());
    perm[i] = basis.index(w);
  }
  return perm;
}

/// Factor positions of the interleaving permutation pi_n on 2n slots,
/// 0-based: slot j of the interleaved product carries block slot order[j],
/// i.e. (0, n, 1, n+1, ..., n-1, 2n-1).
inline std::vector<std::size_t> interleave_slot_order(std::size_t n) {
  std::vector<std::size_t> order;
  order.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    order.push_back(k);
    order.push_back(n + k);
  }
  return order;
}

/// perm[i] is the index in E^{(x)n} (x) E'^{(x)n} (block convention) of the
/// basis word with index i in (E (x) E')^{(x)n} (interleaved convention, the
/// letter (a, b) of E (x) E' having index a * dim E' + b). This is the
/// index map of pi_n^{-1}.
inline std::vector<std::size_t> shuffle_permutation(std::size_t n, std::size_t dim_e, std::size_t dim_e2) {
  const std::size_t pair = dim_e * dim_e2;
  const std::size_t total = ipow(pair, n);
  const std::size_t right = ipow(dim_e2, n);
  std::vector<std::size_t> perm(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i, a = 0, b = 0, scale_a = 1, scale_b = 1;
    for (std::size_t k = 0; k < n; ++k) {  // last pair first
      const std::size_t letter = rest % pair;
      rest /= pair;
      a += (letter / dim_e2) * scale_a;
      b += (letter % dim_e2) * scale_b;
      scale_a *= dim_e;
      scale_b *= dim_e2;
    }
    perm[i] = a * right + b;
  }
  return perm;
}

/// Permutation matrix of pi_n^{-1} : (E (x) E')^{(x)n} -> E^{(x)n} (x) E'^{(x)n}.
template <Field F>
LinearMap<F> shuffle_to_blocks(F f, std::size_t n, std::size_t dim_e, std::size_t dim_e2) {
  const auto perm = shuffle_permutation(n, dim_e, dim_e2);
  Matrix<F> m(f, perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m(perm[i], i) = f.one();
  return LinearMap<F>(std::move(m));
}

/// The subspace {v' : v'[to[i]] = v[i], v in s}.
template <Field F>
Subspace<F> reindex(const Subspace<F>& s, const std::vector<std::size_t>& to) {
  if (to.size() != s.ambient_dim()) throw DimensionError("reindex: permutation size mismatch");
  const F& f = s.field();
  Matrix<F> m(f, s.dim(), s.ambient_dim());
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t i = 0; i < to.size(); ++i) m(r, to[i]) = s.basis()(r, i);
  return Subspace<F>::span(std::move(m));
}

/// Inverse of an index permutation.
inline std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv.at(p[i]) = i;
  return inv;
}

/// R^perp in the dual word basis: the forms vanishing on R.
template <Field F>
Subspace<F> annihilator(const Subspace<F>& r) {
  return kernel(LinearMap<F>(r.basis()));
}

/// span{s (x) t}; the Kronecker products of two RREF bases, taken in
/// (row of s, row of t) order, are already in RREF.
template <Field F>
Subspace<F> tensor_subspace(const Subspace<F>& s, const Subspace<F>& t) {
  if (!(s.field() == t.field())) throw DimensionError("tensor_subspace: field mismatch");
  const F& f = s.field();
  const std::size_t na = s.ambient_dim(), nb = t.ambient_dim();
  const std::size_t ambient = na * nb;
  Matrix<F> m(f, s.dim() * t.dim(), ambient);
  std::vector<std::size_t> pivots;
  pivots.reserve(s.dim() * t.dim());
  std::size_t row = 0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j, ++row) {
      for (std::size_t a = 0; a < na; ++a) {
        const auto& x = s.basis()(i, a);
        if (f.is_zero(x)) continue;
        for (std::size_t b = 0; b < nb; ++b)
          if (!f.is_zero(t.basis()(j, b))) m(row, a * nb + b) = f.mul(x, t.basis()(j, b));
      }
      pivots.push_back(s.pivots()[i] * nb + t.pivots()[j]);
    }
  return Subspace<F>::from_canonical(std::move(m), std::move(pivots));
}

/// F^left (x) s (x) F^right.
template <Field F>
Subspace<F> pad_subspace(const Subspace<F>& s, std::size_t left, std::size_t right) {
  const F& f = s.field();
  return tensor_subspace(Subspace<F>::full(f, left), tensor_subspace(s, Subspace<F>::full(f, right)));
}

template <Field F>
Vector<F> kron(const Vector<F>& u, const Vector<F>& v, const F& f) {
  Vector<F> w(u.size() * v.size(), f.zero());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (f.is_zero(u[i])) continue;
    for (std::size_t j = 0; j < v.size(); ++j) w[i * v.size() + j] = f.mul(u[i], v[j]);
  }
  return w;
}

template <Field F>
LinearMap<F> kron(const LinearMap<F>& a, const LinearMap<F>& b) {
  const F& f = a.field();
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  Matrix<F> m(f, ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (std::size_t i = 0; i < ma.rows(); ++i)
    for (std::size_t j = 0; j < ma.cols(); ++j) {
      if (f.is_zero(ma(i, j))) continue;
      for (std::size_t k = 0; k < mb.rows(); ++k)
        for (std::size_t l = 0; l < mb.cols(); ++l)
          m(i * mb.rows() + k, j * mb.cols() + l) = f.mul(ma(i, j), mb(k, l));
    }
  return LinearMap<F>(std::move(m));
}

/// f^{(x)n} applied to x in E^{(x)n}, one tensor slot at a time.
template <Field F>
Vector<F> apply_tensor_power(const LinearMap<F>& map, const Vector<F>& x, std::size_t n) {
  const F& f = map.field();
  const std::size_t dom = map.domain_dim(), cod = map.codomain_dim();
  if (x.size() != ipow(dom, n)) throw DimensionError("apply_tensor_power: vector length mismatch");
  Vector<F> cur = x;
  for (std::size_t k = 0; k < n; ++k) {
    // cur has shape cod^k x dom x dom^(n-k-1)
    const std::size_t prefix = ipow(cod, k), suffix = ipow(dom, n - k - 1);
    Vector<F> next(prefix * cod * suffix, f.zero());
    for (std::size_t p = 0; p < prefix; ++p)
      for (std::size_t a = 0; a < dom; ++a)
        for (std::size_t s = 0; s < suffix; ++s) {
          const auto& v = cur[(p * dom + a) * suffix + s];
          if (f.is_zero(v)) continue;
          for (std::size_t b = 0; b < cod; ++b) {
            const auto& c = map.matrix()(b, a);
            if (!f.is_zero(c)) f.axpy(next[(p * cod + b) * suffix + s], c, v);
          }
        }
    cur = std::move(next);
  }
  return cur;
}

/// f^{(x)n}(s) as a subspace of E'^{(x)n}.
template <Field F>
Subspace<F> tensor_power_image(const LinearMap<F>& map, const Subspace<F>& s, std::size_t n) {
  std::vector<Vector<F>> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(apply_tensor_power(map, s.basis().row_vector(i), n));
  return Subspace<F>::span(map.field(), ipow(map.codomain_dim(), n), rows);
}

}  // namespace nkoszul
