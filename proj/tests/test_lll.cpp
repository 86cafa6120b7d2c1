#include <random>

#include <gtest/gtest.h>

#include "cipherkit/lll.hpp"

using namespace cipherkit;

namespace {

IntMatrix random_basis(std::size_t n, std::size_t dim, long range, std::mt19937_64& rng)
{
    IntMatrix b(n, IntVector(dim));
    for (auto& row : b)
        for (auto& v : row)
            v = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
    return b;
}

// Coordinates of v in the row basis b, by exact Gaussian elimination on the
// normal equations (b b^T) c = b v.
std::vector<mpq_class> coordinates(const IntMatrix& b, const IntVector& v)
{
    const std::size_t n = b.size();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = dot(b[i], b[j]);
        m[i][n] = dot(b[i], v);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (m[p][c] == 0)
            ++p;
        std::swap(m[p], m[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0)
                continue;
            const mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    std::vector<mpq_class> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = m[i][n] / m[i][i];
    return out;
}

bool in_lattice(const IntMatrix& b, const IntVector& v)
{
    for (const auto& c : coordinates(b, v))
        if (c.get_den() != 1)
            return false;
    return true;
}

} // namespace

TEST(Lll, IdentityUnchanged)
{
    IntMatrix id(4, IntVector(4, 0));
    for (int i = 0; i < 4; ++i)
        id[i][i] = 1;
    EXPECT_EQ(lll_reduce(id), id);
}

TEST(Lll, TwoDimensional)
{
    const IntMatrix b{{1, 0}, {4, 1}};
    const auto r = lll_reduce(b);
    EXPECT_TRUE(is_lll_reduced(r));
    EXPECT_LE(dot(r[0], r[0]), dot(b[0], b[0]));
    EXPECT_EQ(abs(gram_determinant(r)), 1);
    EXPECT_EQ(r, (IntMatrix{{1, 0}, {0, 1}}));
}

TEST(Lll, Errors)
{
    EXPECT_THROW(lll_reduce({{1, 2}, {2, 4}}), rank_error);
    EXPECT_THROW(lll_reduce({{0, 0}, {1, 0}}), rank_error);
    EXPECT_THROW(lll_reduce({{1, 0}, {1}}), dimension_error);
    EXPECT_THROW(lll_reduce({{1, 0}, {0, 1}}, {1, 4}), domain_error);
    EXPECT_THROW(lll_reduce({{1, 0}, {0, 1}}, {5, 4}), domain_error);
    EXPECT_NO_THROW(lll_reduce({{1, 0}, {0, 1}}, {1, 1}));
}

TEST(Lll, SameLatticeAndReduced)
{
    std::mt19937_64 rng(10);
    for (std::size_t n = 1; n <= 10; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t dim = n + rng() % 3;
            IntMatrix b;
            do {
                b = random_basis(n, dim, 1000, rng);
            } while (gram_determinant(b) == 0);
            const auto r = lll_reduce(b);
            ASSERT_TRUE(is_lll_reduced(r));
            ASSERT_EQ(gram_determinant(r), gram_determinant(b));
            for (const auto& v : r)
                ASSERT_TRUE(in_lattice(b, v));
            for (const auto& v : b)
                ASSERT_TRUE(in_lattice(r, v));
        }
    }
}

TEST(Lll, OtherDelta)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto b = random_basis(6, 6, 1L << 20, rng);
        if (gram_determinant(b) == 0)
            continue;
        const auto r = lll_reduce(b, {99, 100});
        EXPECT_TRUE(is_lll_reduced(r, {99, 100}));
        EXPECT_EQ(gram_determinant(r), gram_determinant(b));
    }
}

TEST(Lll, FirstVectorBound)
{
    // |b1|^2 <= 2^(n-1) * d^(1/n)-style bound, checked as |b1|^(2n) <= 2^(n(n-1)) det(Gram).
    std::mt19937_64 rng(12);
    for (std::size_t n = 2; n <= 8; ++n) {
        auto b = random_basis(n, n, 1L << 30, rng);
        const auto det = gram_determinant(b);
        if (det == 0)
            continue;
        const auto r = lll_reduce(b);
        mpz_class lhs, rhs;
        mpz_pow_ui(lhs.get_mpz_t(), mpz_class(dot(r[0], r[0])).get_mpz_t(), n);
        rhs = (mpz_class(1) << (n * (n - 1))) * det;
        EXPECT_LE(lhs, rhs);
    }
}

TEST(GramDeterminant, Known)
{
    EXPECT_EQ(gram_determinant({{2, 0}, {0, 3}}), 36);
    EXPECT_EQ(gram_determinant({{1, 2}, {2, 4}}), 0);
    EXPECT_EQ(gram_determinant({{1, 1, 0}}), 2);
}
