#ifndef CIPHERKIT_LLL_HPP
#define CIPHERKIT_LLL_HPP

// Exact LLL reduction over the integers.
//
// Integral variant: instead of rational Gram-Schmidt coefficients it keeps
// the integers d_i (Gram determinants of the first i vectors) and
// lambda_{i,j} = d_j * mu_{i,j}, so every division below is exact and no
// fractions or floating point appear.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cipherkit/error.hpp"

namespace cipherkit {

class rank_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>; // one basis vector per row

inline mpz_class dot(const IntVector& x, const IntVector& y)
{
    mpz_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

// Lovasz parameter delta = numerator / denominator, 1/4 < delta <= 1.
struct LllDelta {
    long numerator = 3;
    long denominator = 4;
};

namespace detail {

// q = nearest integer to num / den, den > 0.
inline mpz_class round_div(const mpz_class& num, const mpz_class& den)
{
    mpz_class twice = 2 * num + den;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    return q;
}

inline mpz_class exact_div(const mpz_class& num, const mpz_class& den)
{
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace detail

inline IntMatrix lll_reduce(IntMatrix basis, LllDelta delta = {})
{
    const std::size_t n = basis.size();
    if (delta.denominator <= 0 || 4 * delta.numerator <= delta.denominator || delta.numerator > delta.denominator)
        throw domain_error("LLL parameter must satisfy 1/4 < delta <= 1");
    if (n == 0)
        return basis;
    const std::size_t dim = basis.front().size();
    for (const auto& row : basis)
        if (row.size() != dim)
            throw dimension_error("lattice basis rows differ in length");

    // 1-based d and lambda as in the textbook presentation; d[0] = 1.
    std::vector<mpz_class> d(n + 1, 0);
    std::vector<std::vector<mpz_class>> lambda(n + 1, std::vector<mpz_class>(n + 1, 0));
    auto b = [&](std::size_t i) -> IntVector& { return basis[i - 1]; };

    d[0] = 1;
    d[1] = dot(b(1), b(1));
    if (d[1] == 0)
        throw rank_error("basis vector 1 is zero");

    auto reduce = [&](std::size_t k, std::size_t l) {
        mpz_class twice_abs = 2 * abs(lambda[k][l]);
        if (twice_abs <= d[l])
            return;
        const mpz_class q = detail::round_div(lambda[k][l], d[l]);
        for (std::size_t c = 0; c < dim; ++c)
            b(k)[c] -= q * b(l)[c];
        lambda[k][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i)
            lambda[k][i] -= q * lambda[l][i];
    };

    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                mpz_class u = dot(b(k), b(j));
                for (std::size_t i = 1; i < j; ++i)
                    u = detail::exact_div(d[i] * u - lambda[k][i] * lambda[j][i], d[i - 1]);
                if (j < k)
                    lambda[k][j] = u;
                else
                    d[k] = u;
            }
            if (d[k] == 0)
                throw rank_error("basis rows are linearly dependent (row " + std::to_string(k) + ")");
        }
        reduce(k, k - 1);
        const mpz_class lhs = delta.denominator * d[k] * d[k - 2];
        const mpz_class rhs = delta.numerator * d[k - 1] * d[k - 1] - delta.denominator * lambda[k][k - 1] * lambda[k][k - 1];
        if (lhs < rhs) {
            std::swap(b(k), b(k - 1));
            for (std::size_t j = 1; j + 1 < k; ++j)
                std::swap(lambda[k][j], lambda[k - 1][j]);
            const mpz_class lam = lambda[k][k - 1];
            const mpz_class big_b = detail::exact_div(d[k - 2] * d[k] + lam * lam, d[k - 1]);
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                const mpz_class t = lambda[i][k];
                lambda[i][k] = detail::exact_div(d[k] * lambda[i][k - 1] - lam * t, d[k - 1]);
                lambda[i][k - 1] = detail::exact_div(big_b * t + lam * lambda[i][k], d[k]);
            }
            d[k - 1] = big_b;
            if (k > 2)
                --k;
        } else {
            for (std::size_t l = k - 1; l-- > 1;)
                reduce(k, l);
            ++k;
        }
    }
    return basis;
}

// Determinant of the Gram matrix B B^T (fraction-free Bareiss elimination).
inline mpz_class gram_determinant(const IntMatrix& basis)
{
    const std::size_t n = basis.size();
    std::vector<std::vector<mpz_class>> g(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g[i][j] = dot(basis[i], basis[j]);
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (g[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && g[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(g[p], g[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                g[i][j] = detail::exact_div(g[i][j] * g[k][k] - g[i][k] * g[k][j], prev);
        prev = g[k][k];
    }
    return sign * prev;
}

// Checks size reduction (|mu| <= 1/2) and the Lovasz condition, by exact
// rational Gram-Schmidt. Independent of lll_reduce's bookkeeping.
inline bool is_lll_reduced(const IntMatrix& basis, LllDelta delta = {})
{
    const std::size_t n = basis.size();
    std::vector<std::vector<mpq_class>> star(n);
    std::vector<mpq_class> norm(n);
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        star[i].assign(basis[i].begin(), basis[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            mpq_class num = 0;
            for (std::size_t c = 0; c < basis[i].size(); ++c)
                num += mpq_class(basis[i][c]) * star[j][c];
            mu[i][j] = num / norm[j];
            for (std::size_t c = 0; c < basis[i].size(); ++c)
                star[i][c] -= mu[i][j] * star[j][c];
        }
        norm[i] = 0;
        for (const auto& v : star[i])
            norm[i] += v * v;
        for (std::size_t j = 0; j < i; ++j)
            if (abs(mu[i][j]) > mpq_class(1, 2))
                return false;
        if (i > 0) {
            const mpq_class dq(delta.numerator, delta.denominator);
            if (norm[i] < (dq - mu[i][i - 1] * mu[i][i - 1]) * norm[i - 1])
                return false;
        }
    }
    return true;
}

} // namespace cipherkit

#endif
