#include <gtest/gtest.h>

#include "nkoszul/random.hpp"
#include "nkoszul/sparse.hpp"

using namespace nkoszul;

namespace {

const Rationals Q;
const PrimeField GFP(kDefaultPrime);

template <Field F>
Matrix<F> sparse_random(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (random_index(rng, 0, 3) == 0) m(i, j) = random_scalar(f, rng);
  return m;
}

}  // namespace

TEST(SparseVec, AxpyCancels) {
  const auto x = dense_to_sparse(Q, std::span<const mpq_class>(Vector<Rationals>{1, 0, 2}));
  const auto y = dense_to_sparse(Q, std::span<const mpq_class>(Vector<Rationals>{0, 3, 4}));
  const auto z = sparse_axpy(Q, y, Q.from_int(-2), x);
  EXPECT_EQ(sparse_to_dense(Q, z, 3), (Vector<Rationals>{-2, 3, 0}));
  EXPECT_EQ(z.size(), 2u);
}

TEST(SparseMatrix, DenseRoundTrip) {
  Rng rng(1);
  const auto d = sparse_random(Q, 5, 7, rng);
  EXPECT_EQ(SparseMatrix<Rationals>::from_dense(d).to_dense(), d);
}

template <Field F>
void matches_dense(const F& f, std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t a = random_index(rng, 1, 10), b = random_index(rng, 1, 10), c = random_index(rng, 1, 10);
    const auto x = sparse_random(f, a, b, rng), y = sparse_random(f, b, c, rng);
    const auto sx = SparseMatrix<F>::from_dense(x), sy = SparseMatrix<F>::from_dense(y);
    EXPECT_EQ((sx * sy).to_dense(), x * y);
    EXPECT_EQ(sx.rank(), rank(x));
    EXPECT_EQ(sx.transpose().to_dense(), x.transpose());
    Vector<F> v(b, f.zero());
    for (auto& e : v) e = random_scalar(f, rng);
    EXPECT_EQ(sparse_to_dense(f, sx.apply(dense_to_sparse(f, std::span<const typename F::value_type>(v))), a),
              LinearMap<F>(x).apply(v));
  }
}

TEST(SparseMatrix, MatchesDenseRational) { matches_dense(Q, 2); }
TEST(SparseMatrix, MatchesDensePrime) { matches_dense(GFP, 3); }

TEST(SparseMatrix, HomologyAgreesWithDense) {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    // U --a--> V --b--> W with b a = 0: a maps into Ker b
    const std::size_t u = random_index(rng, 1, 6), v = random_index(rng, 2, 8), w = random_index(rng, 1, 6);
    const auto b = random_map_of_rank(Q, w, v, random_index(rng, 0, std::min(v, w)), rng);
    const auto ker = kernel(b);
    const auto coeff = random_matrix(Q, u, ker.dim(), rng);
    const LinearMap<Rationals> a((coeff * ker.basis()).transpose());
    const auto sa = SparseMatrix<Rationals>::from_dense(a.matrix());
    const auto sb = SparseMatrix<Rationals>::from_dense(b.matrix());
    EXPECT_EQ(homology_dim(sa, sb), homology_dim(a, b));
  }
}

TEST(SparseMatrix, HomologyRejectsNonzeroComposite) {
  const auto id = SparseMatrix<Rationals>::identity(Q, 3);
  EXPECT_THROW(homology_dim(id, id), ContractViolation);
}

TEST(SparseEchelon, RankAndReducedRows) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = sparse_random(Q, random_index(rng, 1, 8), random_index(rng, 1, 8), rng);
    SparseEchelon<Rationals> ech(Q, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(dense_to_sparse(Q, m.row(i)));
    EXPECT_EQ(ech.rank(), rank(m));
    const auto canonical = rref(m);
    const auto rows = ech.reduced_rows();
    ASSERT_EQ(rows.size(), canonical.matrix.rows());
    for (std::size_t i = 0; i < rows.size(); ++i)
      EXPECT_EQ(sparse_to_dense(Q, rows[i], m.cols()), canonical.matrix.row_vector(i));
  }
}

TEST(SparseEchelon, LongRowsMatchDenseRref) {
  // rows long enough to take the dense elimination path
  Rng rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t cols = random_index(rng, 200, 400), rows = random_index(rng, 20, 120);
    const auto m = random_matrix(GFP, rows, cols, rng);
    SparseEchelon<PrimeField> ech(GFP, cols);
    for (std::size_t i = 0; i < rows; ++i) ech.insert(dense_to_sparse(GFP, m.row(i)));
    const auto canonical = rref(m);
    const auto reduced = ech.reduced_rows();
    ASSERT_EQ(reduced.size(), canonical.matrix.rows());
    for (std::size_t i = 0; i < reduced.size(); ++i)
      EXPECT_EQ(sparse_to_dense(GFP, reduced[i], cols), canonical.matrix.row_vector(i));
    // combinations of the rows reduce to zero
    const auto combo = sparse_axpy(GFP, dense_to_sparse(GFP, m.row(0)), 5u, dense_to_sparse(GFP, m.row(rows - 1)));
    EXPECT_TRUE(ech.contains(combo));
  }
}
