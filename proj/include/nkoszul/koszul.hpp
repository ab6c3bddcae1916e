#pragma once

// Koszul N-complexes K(f), L(f) of a morphism f : B -> C, contracted
// complexes C_{p,r}, the Koszulity test, and the convolution algebra
// Hom((B^!)*, C) acting on C (x) (B^!)*.
//
// (B^!_m)* is coordinatised by the basis dual to the standard words of
// B^! in degree m. These are taken from the opposite algebra: t is the
// reversal of a standard word of (B^!)^op, and inside E^(x)m the dual basis
// vector of t is w -> NF^op(reverse w)[t]. Splitting off the first letter i
// of such a form is precomposition with left multiplication by e*^i in B^!,
// which is right multiplication in (B^!)^op. That turns
//   c (x) (e_1 (x) ... (x) e_m) -> c f(e_1) (x) (e_2 (x) ... (x) e_m)
// into a lookup in the right multiplication tables, which stay sparse.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nkoszul/algebra.hpp"
#include "nkoszul/complex.hpp"
#include "nkoszul/errors.hpp"
#include "nkoszul/random.hpp"
#include "nkoszul/sparse.hpp"
#include "nkoszul/tensor.hpp"

namespace nkoszul {

template <Field F>
struct DualComponent {
  std::size_t m;
  Subspace<F> space;  // inside E^(x)m
};

/// (B^!_m)* as a subspace of E^(x)m: all of it below N, the intersection of
/// the E^r (x) R (x) E^s from N on. Dense.
template <Field F>
DualComponent<F> dual_component(const NHomogeneousAlgebra<F>& b, std::size_t m) {
  const F& f = b.field();
  const std::size_t d = b.dim_e(), N = b.degree();
  if (m < N) return {m, Subspace<F>::full(f, ipow(d, m))};
  Subspace<F> acc = Subspace<F>::full(f, ipow(d, m));
  for (std::size_t r = 0; r + N <= m && !acc.is_zero(); ++r)
    acc = intersect(acc, pad_subspace(b.relations(), ipow(d, r), ipow(d, m - N - r)));
  return {m, std::move(acc)};
}

/// Builds slices of K(f) and L(f) up to a fixed total degree.
template <Field F>
class KoszulBuilder {
 public:
  KoszulBuilder(const Morphism<F>& f, std::size_t max_degree)
      : f_(f.field()),
        N_(f.source().degree()),
        map_(f.map()),
        shriek_(opposite(dual(f.source())), max_degree),
        target_(f.target(), max_degree) {
    // entries of the transposed left tables of B^!
    transposed_.resize(max_degree + 1);
    for (std::size_t m = 1; m <= max_degree; ++m) {
      transposed_[m].resize(shriek_.dim(m));
      for (Letter i = 0; i < shriek_.dim_e(); ++i)
        for (std::size_t u = 0; u < shriek_.dim(m - 1); ++u)
          for (const auto& e : shriek_left(m, i, u)) transposed_[m][e.index].push_back({i, u, e.value});
    }
  }

  std::size_t N() const { return N_; }
  std::size_t max_degree() const { return shriek_.max_degree(); }
  /// B^! is held as the quotient of its opposite algebra: the standard words
  /// of B^! are the reversed standard words of this quotient, so left
  /// multiplication in B^! is a right-multiplication lookup here.
  const GradedQuotient<F>& shriek() const { return shriek_; }
  const GradedQuotient<F>& target() const { return target_; }

  /// K(f)^n, positions C_{n-m} (x) (B^!_m)* for m = n, ..., 0.
  KSlice<F> K(std::size_t n) const {
    check_degree(n);
    KSlice<F> s{f_, N_, static_cast<long>(n), {}, {}, {}, {}};
    for (std::size_t k = 0; k <= n; ++k) {
      const std::size_t m = n - k;
      s.index.push_back(m);
      s.dims.push_back(target_.dim(n - m) * shriek_.dim(m));
      s.labels.push_back("C_" + std::to_string(n - m) + " (x) (B!_" + std::to_string(m) + ")*");
    }
    for (std::size_t k = 0; k < n; ++k) s.maps.push_back(k_map(n, n - k));
    return s;
  }

  /// The part of L(f) with C-degree minus B^!-degree equal to t and total
  /// degree at most max_degree(): positions B^!_m (x) C_{m+t}, m increasing.
  LSlice<F> L(long t) const {
    const long D = static_cast<long>(max_degree());
    LSlice<F> s{f_, N_, t, {}, {}, {}, {}};
    for (long m = t < 0 ? -t : 0; 2 * m + t <= D; ++m) {
      const auto mu = static_cast<std::size_t>(m), su = static_cast<std::size_t>(m + t);
      s.index.push_back(mu);
      s.dims.push_back(shriek_.dim(mu) * target_.dim(su));
      s.labels.push_back("B!_" + std::to_string(mu) + " (x) C_" + std::to_string(su));
    }
    for (std::size_t k = 0; k + 1 < s.index.size(); ++k)
      s.maps.push_back(l_map(s.index[k], static_cast<std::size_t>(static_cast<long>(s.index[k]) + t)));
    return s;
  }

  /// All nonempty slices of L(f) within max_degree().
  std::vector<LSlice<F>> L_all() const {
    std::vector<LSlice<F>> out;
    const long D = static_cast<long>(max_degree());
    for (long t = -D; t <= D; ++t) out.push_back(L(t));
    return out;
  }

 private:
  struct Term {
    Letter letter;
    std::size_t position;
    typename F::value_type value;
  };

  /// e_i^* * u in B^!, u a standard word of degree m-1.
  const SparseVec<F>& shriek_left(std::size_t m, Letter i, std::size_t u) const { return shriek_.right_letter(m, u, i); }

  void check_degree(std::size_t n) const {
    if (n > max_degree()) throw DimensionError("slice degree beyond the builder's range");
  }

  /// c * f(e_i) for every generator e_i, c a standard word of degree s-1 of C.
  std::vector<SparseVec<F>> times_image(std::size_t s, std::size_t c) const {
    std::vector<SparseVec<F>> out(map_.domain_dim());
    for (std::size_t i = 0; i < map_.domain_dim(); ++i) {
      SparseVec<F> v;
      for (std::size_t j = 0; j < map_.codomain_dim(); ++j) {
        const auto& a = map_.matrix()(j, i);
        if (f_.is_zero(a)) continue;
        v = sparse_axpy(f_, v, a, target_.right_letter(s, c, static_cast<Letter>(j)));
      }
      out[i] = std::move(v);
    }
    return out;
  }

  /// f(e_i) * c for every generator e_i, c a standard word of degree s-1 of C.
  std::vector<SparseVec<F>> image_times(std::size_t s, std::size_t c) const {
    std::vector<SparseVec<F>> out(map_.domain_dim());
    for (std::size_t i = 0; i < map_.domain_dim(); ++i) {
      SparseVec<F> v;
      for (std::size_t j = 0; j < map_.codomain_dim(); ++j) {
        const auto& a = map_.matrix()(j, i);
        if (f_.is_zero(a)) continue;
        v = sparse_axpy(f_, v, a, target_.left_letter(s, static_cast<Letter>(j), c));
      }
      out[i] = std::move(v);
    }
    return out;
  }

  /// C_{n-m} (x) (B^!_m)* -> C_{n-m+1} (x) (B^!_{m-1})*.
  SparseMatrix<F> k_map(std::size_t n, std::size_t m) const {
    const std::size_t s = n - m;
    const std::size_t tm = shriek_.dim(m), tm1 = shriek_.dim(m - 1);
    const std::size_t cs = target_.dim(s), cs1 = target_.dim(s + 1);
    SparseMatrix<F> d(f_, cs1 * tm1, cs * tm);
    Accumulator<F> acc(f_, cs1 * tm1);
    for (std::size_t c = 0; c < cs; ++c) {
      const auto cf = times_image(s + 1, c);
      for (std::size_t t = 0; t < tm; ++t) {
        for (const auto& term : transposed_[m][t])
          for (const auto& e : cf[term.letter]) acc.add_product(e.index * tm1 + term.position, term.value, e.value);
        d.set_column(c * tm + t, acc.take());
      }
    }
    return d;
  }

  /// B^!_m (x) C_s -> B^!_{m+1} (x) C_{s+1}, b (x) c -> sum_i e*^i b (x) f(e_i) c.
  SparseMatrix<F> l_map(std::size_t m, std::size_t s) const {
    const std::size_t bm = shriek_.dim(m), bm1 = shriek_.dim(m + 1);
    const std::size_t cs = target_.dim(s), cs1 = target_.dim(s + 1);
    SparseMatrix<F> d(f_, bm1 * cs1, bm * cs);
    Accumulator<F> acc(f_, bm1 * cs1);
    for (std::size_t c = 0; c < cs; ++c) {
      const auto fc = image_times(s + 1, c);
      for (std::size_t b = 0; b < bm; ++b) {
        for (Letter i = 0; i < shriek_.dim_e(); ++i)
          for (const auto& u : shriek_left(m + 1, i, b))
            for (const auto& v : fc[i]) acc.add_product(u.index * cs1 + v.index, u.value, v.value);
        d.set_column(b * cs + c, acc.take());
      }
    }
    return d;
  }

  F f_;
  std::size_t N_;
  LinearMap<F> map_;
  GradedQuotient<F> shriek_;
  GradedQuotient<F> target_;
  std::vector<std::vector<std::vector<Term>>> transposed_;  // [m][t] -> terms
};

template <Field F>
KSlice<F> koszul_K(const Morphism<F>& f, std::size_t n) {
  return KoszulBuilder<F>(f, n).K(n);
}

template <Field F>
std::vector<LSlice<F>> koszul_L(const Morphism<F>& f, std::size_t max_total_degree) {
  return KoszulBuilder<F>(f, max_total_degree).L_all();
}

struct Lemma2Result {
  bool acyclic_n_minus_1;
  bool acyclic_n;
  bool is_iso;

  bool consistent() const { return (acyclic_n_minus_1 && acyclic_n) == is_iso; }
};

template <Field F>
Lemma2Result lemma2_check(const Morphism<F>& f) {
  const std::size_t N = f.source().degree();
  KoszulBuilder<F> kb(f, N);
  return {is_acyclic(kb.K(N - 1)), is_acyclic(kb.K(N)), f.is_isomorphism()};
}

/// K(A) = K(id_A).
template <Field F>
KoszulBuilder<F> koszul_builder(const NHomogeneousAlgebra<F>& a, std::size_t max_degree) {
  return KoszulBuilder<F>(Morphism<F>::identity(a), max_degree);
}

inline bool admissible_contraction(std::size_t N, std::size_t p, std::size_t r) {
  return r + 2 <= N && r + 1 <= p && p + 1 <= N;
}

/// k such that C_{p,r} in degree i is A (x) (A^!_k)*.
inline std::size_t contracted_k(std::size_t N, std::size_t p, std::size_t r, std::size_t i) {
  const std::size_t j = i / 2;
  return i % 2 == 0 ? j * N + r : (j + 1) * N - p + r;
}

/// Homology of C_{p,r}, split by total degree: h[i][n] for i <= i_max, n <= n_max.
struct ContractedHomology {
  std::size_t N, p, r, i_max, n_max;
  std::vector<std::size_t> k;               // A^! degree of each homological degree
  std::vector<std::vector<std::size_t>> h;  // [i][n]; zero where the space is zero
  std::vector<std::vector<std::size_t>> dims;

  bool exact_at(std::size_t i) const {
    for (auto x : h.at(i))
      if (x != 0) return false;
    return true;
  }
};

template <Field F>
ContractedHomology contracted(const KoszulBuilder<F>& kb, std::size_t p, std::size_t r, std::size_t i_max,
                              std::size_t n_max) {
  const std::size_t N = kb.N();
  if (!admissible_contraction(N, p, r))
    throw std::invalid_argument("contracted complex needs 0 <= r <= N-2 and r+1 <= p <= N-1");
  if (n_max > kb.max_degree()) throw DimensionError("contracted: n_max beyond the builder's range");
  ContractedHomology out{N, p, r, i_max, n_max, {}, {}, {}};
  for (std::size_t i = 0; i <= i_max; ++i) out.k.push_back(contracted_k(N, p, r, i));
  out.h.assign(i_max + 1, std::vector<std::size_t>(n_max + 1, 0));
  out.dims = out.h;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto slice = kb.K(n);
    PowerRanks<F, ChainK> ranks(slice);
    for (std::size_t i = 0; i <= i_max; ++i) {
      const std::size_t m = out.k[i];
      if (m > n) continue;
      const std::size_t pos = n - m;  // flow index of B^! degree m
      const std::size_t q_out = i % 2 == 1 ? N - p : p;
      const std::size_t q_in = i % 2 == 0 ? N - p : p;
      out.dims[i][n] = slice.dims[pos];
      out.h[i][n] = ranks.homology(pos, q_out, q_in);
    }
  }
  return out;
}

template <Field F>
ContractedHomology contracted(const NHomogeneousAlgebra<F>& a, std::size_t p, std::size_t r, std::size_t i_max,
                              std::size_t n_max) {
  return contracted(koszul_builder(a, n_max), p, r, i_max, n_max);
}

struct KoszulVerdict {
  bool koszul = true;
  std::size_t n_max = 0;
  std::size_t i_max = 0;  // homological degrees checked
  // first failure, in order of total degree then homological degree
  std::size_t degree = 0, total_degree = 0, homology = 0;

  std::string to_string() const {
    if (koszul) return "KoszulUpTo(" + std::to_string(n_max) + ")";
    return "NotKoszul(i=" + std::to_string(degree) + ", n=" + std::to_string(total_degree) +
           ", dim=" + std::to_string(homology) + ")";
  }
};

/// Exactness of C_{N-1,0} in degrees 0 < i <= i_limit and total degree <= n_max.
/// With the default i_limit every degree whose space is nonzero within the
/// window is checked.
template <Field F>
KoszulVerdict koszulity_check(const NHomogeneousAlgebra<F>& a, std::size_t n_max,
                              std::optional<std::size_t> i_limit = std::nullopt) {
  const std::size_t N = a.degree();
  if (n_max < N) throw std::invalid_argument("koszulity_check needs n_max >= N");
  std::size_t i_max = 0;
  while (contracted_k(N, N - 1, 0, i_max + 1) <= n_max) ++i_max;
  if (i_limit) i_max = std::min(i_max, *i_limit);
  const auto c = contracted(a, N - 1, 0, i_max, n_max);
  KoszulVerdict v;
  v.n_max = n_max;
  v.i_max = i_max;
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t i = 1; i <= i_max; ++i)
      if (c.h[i][n] != 0) {
        v.koszul = false;
        v.degree = i;
        v.total_degree = n;
        v.homology = c.h[i][n];
        return v;
      }
  return v;
}

// ---------------------------------------------------------------------------
// Convolution algebra Hom((B^!)*, A) and the operators d_alpha on A (x) (B^!)*.

/// A homogeneous linear map (B^!_source)* -> A_target, as a
/// dim A_target x dim B^!_source matrix in standard-word coordinates.
template <Field F>
struct GradedHom {
  std::size_t source_degree;
  std::size_t target_degree;
  Matrix<F> matrix;
};

template <Field F>
class Convolution {
 public:
  /// `b` supplies the coalgebra (B^!)*, `a` the algebra.
  Convolution(const NHomogeneousAlgebra<F>& b, const NHomogeneousAlgebra<F>& a, std::size_t max_degree)
      : f_(a.field()), shriek_(opposite(dual(b)), max_degree), alg_(a, max_degree) {
    coproduct_.resize(max_degree + 1);
    for (std::size_t m = 0; m <= max_degree; ++m) {
      coproduct_[m].resize(m + 1);
      for (std::size_t k = 0; k <= m; ++k) {
        auto& terms = coproduct_[m][k];
        terms.resize(shriek_.dim(m));
        // u * v in B^! (u of degree k) is v * u in the opposite quotient
        const auto table = shriek_.product_table(m - k, k);
        const std::size_t dk = shriek_.dim(k);
        for (std::size_t idx = 0; idx < table.size(); ++idx)
          for (const auto& e : table[idx]) terms[e.index].push_back({idx % dk, idx / dk, e.value});
      }
    }
  }

  std::size_t max_degree() const { return alg_.max_degree(); }
  /// Quotient of the opposite of B^!, as in KoszulBuilder::shriek.
  const GradedQuotient<F>& shriek() const { return shriek_; }
  const GradedQuotient<F>& algebra() const { return alg_; }

  /// alpha = f in degree 1.
  GradedHom<F> from_morphism(const LinearMap<F>& f) const {
    if (f.domain_dim() != shriek_.dim(1) || f.codomain_dim() != alg_.dim(1))
      throw DimensionError("from_morphism: map has the wrong shape");
    return {1, 1, f.matrix()};
  }

  GradedHom<F> random_hom(std::size_t source, std::size_t target, Rng& rng) const {
    return {source, target, random_matrix(f_, alg_.dim(target), shriek_.dim(source), rng)};
  }

  /// (alpha * beta)(x) = sum alpha(x_(1)) beta(x_(2)).
  GradedHom<F> convolve(const GradedHom<F>& alpha, const GradedHom<F>& beta) const {
    const std::size_t m = alpha.source_degree + beta.source_degree;
    const std::size_t s = alpha.target_degree + beta.target_degree;
    if (m > max_degree() || s > max_degree()) throw DimensionError("convolve: degree beyond range");
    const auto prod = alg_.product_table(alpha.target_degree, beta.target_degree);
    const std::size_t db = alg_.dim(beta.target_degree);
    Matrix<F> out(f_, alg_.dim(s), shriek_.dim(m));
    for (std::size_t t = 0; t < shriek_.dim(m); ++t)
      for (const auto& term : coproduct_[m][alpha.source_degree][t])
        for (std::size_t x = 0; x < alpha.matrix.rows(); ++x) {
          const auto& ax = alpha.matrix(x, term.left);
          if (f_.is_zero(ax)) continue;
          for (std::size_t y = 0; y < db; ++y) {
            const auto& by = beta.matrix(y, term.right);
            if (f_.is_zero(by)) continue;
            const auto c = f_.mul(term.value, f_.mul(ax, by));
            for (const auto& e : prod[x * db + y]) f_.axpy(out(e.index, t), c, e.value);
          }
        }
    return {m, s, std::move(out)};
  }

  /// alpha * ... * alpha (k >= 1 factors).
  GradedHom<F> convolution_power(const GradedHom<F>& alpha, std::size_t k) const {
    GradedHom<F> acc = alpha;
    for (std::size_t j = 1; j < k; ++j) acc = convolve(acc, alpha);
    return acc;
  }

  /// Blocks A_s (x) (B^!_m)* with s <= s_max, m <= m_max, s-major.
  struct Truncation {
    std::size_t s_max, m_max;
    std::vector<std::vector<std::size_t>> offset;  // [s][m]
    std::size_t dim = 0;
  };

  Truncation truncation(std::size_t s_max, std::size_t m_max) const {
    if (s_max > max_degree() || m_max > max_degree()) throw DimensionError("truncation beyond range");
    Truncation t{s_max, m_max, {}, 0};
    t.offset.assign(s_max + 1, std::vector<std::size_t>(m_max + 1, 0));
    for (std::size_t s = 0; s <= s_max; ++s)
      for (std::size_t m = 0; m <= m_max; ++m) {
        t.offset[s][m] = t.dim;
        t.dim += alg_.dim(s) * shriek_.dim(m);
      }
    return t;
  }

  /// d_alpha(a (x) x) = sum a alpha(x_(1)) (x) x_(2), components past s_max dropped.
  SparseMatrix<F> d(const GradedHom<F>& alpha, const Truncation& tr) const {
    SparseMatrix<F> out(f_, tr.dim, tr.dim);
    const std::size_t ka = alpha.source_degree, sa = alpha.target_degree;
    Accumulator<F> acc(f_, tr.dim);
    for (std::size_t s = 0; s <= tr.s_max; ++s) {
      const bool lands = s + sa <= tr.s_max;
      const auto prod = lands ? alg_.product_table(s, sa) : std::vector<SparseVec<F>>{};
      const std::size_t da = alg_.dim(sa);
      for (std::size_t m = 0; m <= tr.m_max; ++m) {
        if (!lands || m < ka) continue;
        const std::size_t tm = shriek_.dim(m), tl = shriek_.dim(m - ka);
        for (std::size_t c = 0; c < alg_.dim(s); ++c) {
          // c * alpha(phi_u) for every u of degree ka
          std::vector<SparseVec<F>> ca(shriek_.dim(ka));
          for (std::size_t u = 0; u < ca.size(); ++u) {
            SparseVec<F> v;
            for (std::size_t y = 0; y < da; ++y)
              if (!f_.is_zero(alpha.matrix(y, u))) v = sparse_axpy(f_, v, alpha.matrix(y, u), prod[c * da + y]);
            ca[u] = std::move(v);
          }
          for (std::size_t t = 0; t < tm; ++t) {
            for (const auto& term : coproduct_[m][ka][t])
              for (const auto& e : ca[term.left])
                acc.add_product(tr.offset[s + sa][m - ka] + e.index * tl + term.right, term.value, e.value);
            out.set_column(tr.offset[s][m] + c * tm + t, acc.take());
          }
        }
      }
    }
    return out;
  }

 private:
  struct CoTerm {
    std::size_t left, right;
    typename F::value_type value;
  };

  F f_;
  GradedQuotient<F> shriek_;
  GradedQuotient<F> alg_;
  std::vector<std::vector<std::vector<std::vector<CoTerm>>>> coproduct_;  // [m][k][t]
};

/// alpha^{*N} = 0 for alpha = f in degree 1, and d_beta d_alpha = d_{alpha * beta}
/// on the truncation s, m <= m_max for `trials` random homogeneous alpha, beta.
template <Field F>
bool convolution_check(const Morphism<F>& f, std::size_t m_max, std::uint64_t seed, std::size_t trials = 10) {
  const std::size_t N = f.source().degree();
  const std::size_t top = std::max(m_max, N);
  Convolution<F> conv(f.source(), f.target(), top);
  const auto alpha = conv.from_morphism(f.map());
  for (std::size_t k = N; k <= top; ++k) {
    // alpha^{*k} lives in source degree k; it factors through alpha^{*N}
    if (!conv.convolution_power(alpha, k).matrix.is_zero()) return false;
  }
  Rng rng(seed);
  const auto tr = conv.truncation(m_max, m_max);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t a1 = random_index(rng, 0, m_max), b1 = random_index(rng, 0, m_max - a1);
    const std::size_t a2 = random_index(rng, 0, m_max), b2 = random_index(rng, 0, m_max - a2);
    const auto x = conv.random_hom(a1, a2, rng);
    const auto y = conv.random_hom(b1, b2, rng);
    if (!(conv.d(y, tr) * conv.d(x, tr) == conv.d(conv.convolve(x, y), tr))) return false;
  }
  return true;
}

}  // namespace nkoszul
