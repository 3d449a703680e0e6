#include <gtest/gtest.h>

#include <apolar/linalg.hpp>
#include <apolar/random.hpp>

#include "oracles.hpp"

using namespace apolar;

namespace
{

MatrixQ random_matrix(Rng &rng, std::size_t rows, std::size_t cols, long long bound, int zero_bias)
{
    MatrixQ m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            // Extra zeros make rank drops common.
            if (rng.uniform(0, 9) < zero_bias) {
                continue;
            }
            m(i, j) = make_scalar(Integer(static_cast<long>(rng.uniform(-bound, bound))),
                                  Integer(static_cast<long>(rng.uniform(1, 3))));
        }
    }
    return m;
}

std::vector<std::vector<oracle::Q>> rows_of(const MatrixQ &m)
{
    std::vector<std::vector<oracle::Q>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.push_back(m.row(i));
    }
    return out;
}

} // namespace

TEST(Rref, HandExample)
{
    const MatrixQ m{{0, 2}, {2, 0}, {0, 0}};
    const auto r = rref(m);
    EXPECT_EQ(r.rank, 2u);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.matrix, (MatrixQ{{1, 0}, {0, 1}, {0, 0}}));
}

TEST(Rref, IdentityAndZero)
{
    const auto r = rref(MatrixQ::identity(4));
    EXPECT_EQ(r.rank, 4u);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(rank(MatrixQ(3, 5)), 0u);
    EXPECT_EQ(rref(MatrixQ(3, 5)).rank, 0u);
}

TEST(Rref, RationalEntries)
{
    const MatrixQ m{{make_scalar(1, 2), make_scalar(1, 3)}, {make_scalar(1, 4), make_scalar(1, 6)}};
    EXPECT_EQ(rank(m), 1u);
    const auto r = rref(m);
    EXPECT_EQ(r.matrix, (MatrixQ{{1, make_scalar(2, 3)}, {0, 0}}));
}

TEST(Determinant, Small)
{
    EXPECT_EQ(determinant(MatrixQ{{2, 1}, {1, 1}}), 1);
    EXPECT_EQ(determinant(MatrixQ{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(MatrixQ{{1, 2}, {2, 4}}), 0);
    EXPECT_EQ(determinant(MatrixQ{{make_scalar(1, 2), 0, 0}, {0, 3, 0}, {5, 7, make_scalar(2, 3)}}), 1);
    EXPECT_THROW(determinant(MatrixQ(2, 3)), PreconditionError);
}

TEST(Determinant, MatchesCofactorExpansion)
{
    Rng rng(11);
    for (int s = 0; s < 100; ++s) {
        const auto m = random_matrix(rng, 3, 3, 6, 2);
        std::array<std::array<oracle::Q, 3>, 3> a;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                a[i][j] = m(i, j);
            }
        }
        EXPECT_EQ(determinant(m), oracle::det3(a));
    }
}

TEST(Inverse, RoundTrip)
{
    Rng rng(5);
    for (int s = 0; s < 30; ++s) {
        const auto m = random_matrix(rng, 4, 4, 5, 0);
        if (determinant(m) == 0) {
            continue;
        }
        EXPECT_EQ(m * inverse(m), MatrixQ::identity(4));
        EXPECT_EQ(inverse(m) * m, MatrixQ::identity(4));
    }
    EXPECT_THROW(inverse(MatrixQ{{1, 2}, {2, 4}}), PreconditionError);
}

TEST(Kernel, Examples)
{
    EXPECT_EQ(kernel_basis(MatrixQ::identity(3)).dim(), 0u);
    EXPECT_EQ(kernel_basis(MatrixQ(2, 3)).dim(), 3u);
    const auto k = kernel_basis(MatrixQ{{1, 1, 0}});
    EXPECT_EQ(k.dim(), 2u);
    EXPECT_TRUE(k.contains({1, -1, 0}));
    EXPECT_FALSE(k.contains({1, 0, 0}));
}

TEST(SpanDim, Examples)
{
    EXPECT_EQ(span_dim({{1, 0}, {0, 1}, {1, 1}}), 2u);
    EXPECT_EQ(span_dim({}), 0u);
    EXPECT_EQ(span_dim({{2, 4}, {1, 2}}), 1u);
    EXPECT_THROW(span_dim({{1, 0}, {1}}), PreconditionError);
}

TEST(SubspaceSum, Examples)
{
    const auto u = Subspace::row_space(MatrixQ{{1, 2, 0}});
    const auto w = Subspace::row_space(MatrixQ{{0, 1, 1}});
    EXPECT_EQ(subspace_sum(u, Subspace::zero(3)), u);
    EXPECT_EQ(subspace_sum(u, u), u);
    EXPECT_EQ(subspace_sum(u, w).dim(), 2u);
    EXPECT_THROW(subspace_sum(u, Subspace::zero(4)), PreconditionError);
    EXPECT_THROW(subspace_sum(Subspace::zero(3, Grading{1, 3}), Subspace::zero(3, Grading{2, 2})), PreconditionError);
}

TEST(Subspace, CanonicalBasisMakesEqualityGeometric)
{
    const auto a = Subspace::row_space(MatrixQ{{1, 1, 0}, {0, 1, 1}});
    const auto b = Subspace::row_space(MatrixQ{{1, 2, 1}, {2, 3, 1}, {0, 0, 0}});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, Subspace::row_space(MatrixQ{{1, 0, 0}, {0, 1, 0}}));
}

// Bareiss elimination and the incremental builder must agree with textbook elimination.
TEST(LinalgProperties, EliminationRoutesAgree)
{
    Rng rng(2024);
    for (int s = 0; s < 150; ++s) {
        const auto rows = static_cast<std::size_t>(rng.uniform(1, 7));
        const auto cols = static_cast<std::size_t>(rng.uniform(1, 7));
        const auto m = random_matrix(rng, rows, cols, 4, static_cast<int>(rng.uniform(0, 7)));
        const auto r = rref(m);
        const auto expected = oracle::rank(rows_of(m));
        ASSERT_EQ(r.rank, expected);
        ASSERT_EQ(rank(m), expected);

        RowSpaceBuilder b(cols);
        for (std::size_t i = 0; i < rows; ++i) {
            b.add(m.row(i));
        }
        ASSERT_EQ(b.rank(), expected);
        const auto built = b.build();
        ASSERT_EQ(built, Subspace::row_space(m));
        ASSERT_EQ(built.pivots(), r.pivots);
    }
}

TEST(LinalgProperties, RankOfTransposeAndRankNullity)
{
    Rng rng(77);
    for (int s = 0; s < 150; ++s) {
        const auto rows = static_cast<std::size_t>(rng.uniform(1, 8));
        const auto cols = static_cast<std::size_t>(rng.uniform(1, 8));
        const auto m = random_matrix(rng, rows, cols, 3, static_cast<int>(rng.uniform(0, 8)));
        ASSERT_EQ(rank(m), rank(m.transpose()));
        const auto k = kernel_basis(m);
        ASSERT_EQ(k.dim() + rank(m), cols);
        for (const auto &v : k.basis_vectors()) {
            for (std::size_t i = 0; i < rows; ++i) {
                Scalar dot = 0;
                for (std::size_t j = 0; j < cols; ++j) {
                    dot += m(i, j) * v[j];
                }
                ASSERT_EQ(dot, 0);
            }
        }
    }
}

TEST(LinalgProperties, SubspaceSumLaws)
{
    Rng rng(303);
    for (int s = 0; s < 120; ++s) {
        const std::size_t amb = static_cast<std::size_t>(rng.uniform(1, 6));
        const auto u = Subspace::row_space(random_matrix(rng, static_cast<std::size_t>(rng.uniform(1, 4)), amb, 3, 4));
        const auto w = Subspace::row_space(random_matrix(rng, static_cast<std::size_t>(rng.uniform(1, 4)), amb, 3, 4));
        const auto sum = subspace_sum(u, w);
        ASSERT_EQ(sum, subspace_sum(w, u));
        ASSERT_EQ(subspace_sum(sum, u), sum);
        ASSERT_EQ(subspace_sum(u, Subspace::zero(amb)), u);
        ASSERT_LE(sum.dim(), u.dim() + w.dim());
        ASSERT_GE(sum.dim(), std::max(u.dim(), w.dim()));
        for (const auto &v : u.basis_vectors()) {
            ASSERT_TRUE(sum.contains(v));
        }
    }
}
