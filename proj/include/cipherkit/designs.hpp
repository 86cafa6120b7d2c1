#ifndef CIPHERKIT_DESIGNS_HPP
#define CIPHERKIT_DESIGNS_HPP

// Matrix problems over GF(2): key matrices with odd diagonals, Sylvester
// matrices, orthogonal arrays, t-disjunct matrices, and the action of
// GL(n, 2) on the degree-r layer of the Reed-Muller code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cipherkit/error.hpp"
#include "cipherkit/gf2.hpp"

namespace cipherkit::design {

// Number of k-subsets of an n-set, saturating at cap + 1.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap)
            return cap + 1;
    }
    return r;
}

inline constexpr std::uint64_t max_subsets = 1'000'000;

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order
// until f returns false. Returns false when stopped early.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f)
{
    if (k > n)
        return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (!f(static_cast<const std::vector<std::size_t>&>(idx)))
            return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// ---- key matrices ----

enum class DiagonalDirection { down_right, down_left };

struct Diagonal {
    DiagonalDirection direction = DiagonalDirection::down_right;
    std::size_t row = 0; // first cell (topmost)
    std::size_t col = 0;
    std::size_t length = 0;
};

// All 2(2n - 1) diagonals of an n x n matrix.
inline std::vector<Diagonal> diagonals(std::size_t n)
{
    std::vector<Diagonal> out;
    for (std::size_t c = n; c-- > 0;)
        out.push_back({DiagonalDirection::down_right, 0, c, n - c});
    for (std::size_t r = 1; r < n; ++r)
        out.push_back({DiagonalDirection::down_right, r, 0, n - r});
    for (std::size_t c = 0; c < n; ++c)
        out.push_back({DiagonalDirection::down_left, 0, c, c + 1});
    for (std::size_t r = 1; r < n; ++r)
        out.push_back({DiagonalDirection::down_left, r, n - 1, n - r});
    return out;
}

inline std::size_t diagonal_weight(const BitMatrix& m, const Diagonal& d)
{
    std::size_t w = 0;
    for (std::size_t k = 0; k < d.length; ++k) {
        const std::size_t c = d.direction == DiagonalDirection::down_right ? d.col + k : d.col - k;
        w += m.get(d.row + k, c);
    }
    return w;
}

struct KeyMatrixCheck {
    bool valid = false;
    std::optional<Diagonal> violation;
};

inline KeyMatrixCheck check_key_matrix(const BitMatrix& m)
{
    if (!m.square())
        throw dimension_error("key matrix must be square");
    if (m.rows() % 2 == 0)
        throw domain_error("key matrix dimension must be odd");
    for (const auto& d : diagonals(m.rows()))
        if (diagonal_weight(m, d) % 2 == 0)
            return {false, d};
    return {true, std::nullopt};
}

// Top row, bottom row and the centre: 2n + 1 ones.
inline BitMatrix key_matrix_min(std::size_t n)
{
    if (n % 2 == 0)
        throw domain_error("key matrix dimension must be odd");
    BitMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        m.set(0, j);
        m.set(n - 1, j);
    }
    m.set(n / 2, n / 2);
    return m;
}

// All ones except even rows (1-based) of the first and last column:
// n^2 - n + 1 ones.
inline BitMatrix key_matrix_max(std::size_t n)
{
    if (n % 2 == 0)
        throw domain_error("key matrix dimension must be odd");
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, !((i % 2 == 1) && (j == 0 || j == n - 1)));
    return m;
}

// ---- Sylvester matrices ----

// Coefficients are stored leading term first: "1001" is x^3 + 1.
struct SylvesterSpec {
    BitVec p1;
    BitVec p2;

    std::size_t m() const { return p1.size() - 1; }
    std::size_t n() const { return p2.size() - 1; }

    static SylvesterSpec parse(std::string_view p1, std::string_view p2)
    {
        return {BitVec::from_string(p1), BitVec::from_string(p2)};
    }
};

inline BitMatrix sylvester_build(const SylvesterSpec& s)
{
    if (s.p1.size() < 2 || s.p2.size() < 2)
        throw domain_error("Sylvester polynomials need degree >= 1");
    if (!s.p1[0] || !s.p2[0])
        throw domain_error("leading coefficient is zero");
    const std::size_t m = s.m(), n = s.n(), size = m + n;
    BitMatrix out(size, size);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k)
            out.set(r, r + k, s.p1[k]);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k)
            out.set(n + r, r + k, s.p2[k]);
    return out;
}

// Reads a square matrix as a Sylvester matrix with deg Q1 = p, if it is one.
inline std::optional<SylvesterSpec> as_sylvester(const BitMatrix& a, std::size_t p)
{
    const std::size_t size = a.rows();
    if (p == 0 || p >= size)
        return std::nullopt;
    const std::size_t q = size - p;
    SylvesterSpec s{a.row(0).slice(0, p + 1), a.row(q).slice(0, q + 1)};
    if (!s.p1[0] || !s.p2[0])
        return std::nullopt;
    if (sylvester_build(s) != a)
        return std::nullopt;
    return s;
}

struct SylvesterInverseVerdict {
    bool invertible = false;
    std::optional<SylvesterSpec> witness; // the inverse as a Sylvester matrix
    std::optional<BitMatrix> inverse;

    bool yes() const { return witness.has_value(); }
};

inline SylvesterInverseVerdict sylvester_inverse_is_sylvester(const SylvesterSpec& s)
{
    const auto inv = inverse(sylvester_build(s));
    SylvesterInverseVerdict v;
    v.invertible = inv.invertible();
    if (!v.invertible)
        return v;
    v.inverse = inv.inverse;
    for (std::size_t p = 1; p < inv.inverse->rows(); ++p)
        if (auto w = as_sylvester(*inv.inverse, p)) {
            v.witness = std::move(w);
            break;
        }
    return v;
}

// ---- orthogonal arrays ----

struct OaCheck {
    bool valid = false;
    std::size_t lambda = 0;
    std::vector<std::size_t> columns; // violating column set
    std::uint32_t tuple = 0;           // violating tuple, first column most significant
    std::size_t count = 0;             // its number of occurrences
};

// Every t columns must show every t-tuple exactly lambda = rows / 2^t times.
inline OaCheck check_oa(const BitMatrix& array, std::size_t t)
{
    const std::size_t n = array.cols();
    if (t == 0 || t >= n)
        throw domain_error("strength must satisfy 0 < t < columns");
    if (t > 20)
        throw resource_error("strength above 20");
    if (binomial_capped(n, t, max_subsets) > max_subsets)
        throw resource_error("more than 10^6 column subsets");
    const std::size_t cells = std::size_t{1} << t;
    if (array.rows() == 0 || array.rows() % cells != 0)
        throw domain_error("row count " + std::to_string(array.rows()) + " is not a multiple of 2^" + std::to_string(t));
    OaCheck out;
    out.lambda = array.rows() / cells;
    std::vector<std::size_t> counts(cells);
    const bool ok = for_each_subset(n, t, [&](const std::vector<std::size_t>& cols) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t r = 0; r < array.rows(); ++r) {
            std::uint32_t v = 0;
            for (auto c : cols)
                v = (v << 1) | static_cast<std::uint32_t>(array.get(r, c));
            ++counts[v];
        }
        for (std::uint32_t v = 0; v < cells; ++v)
            if (counts[v] != out.lambda) {
                out.columns = cols;
                out.tuple = v;
                out.count = counts[v];
                return false;
            }
        return true;
    });
    out.valid = ok;
    return out;
}

// All codewords of the code generated by g, each XORed with the coset leader.
inline BitMatrix oa_from_code(const BitMatrix& g, const BitVec& coset)
{
    if (coset.size() != g.cols())
        throw dimension_error("coset vector length differs from code length");
    if (g.rows() > 20)
        throw resource_error("code dimension above 20");
    if (rank(g) != g.rows())
        throw domain_error("generator matrix is not of full rank");
    const std::size_t k = g.rows();
    BitMatrix out(std::size_t{1} << k, g.cols());
    for (std::uint32_t msg = 0; msg < out.rows(); ++msg) {
        BitVec w = coset;
        for (std::size_t i = 0; i < k; ++i)
            if ((msg >> (k - 1 - i)) & 1U)
                w ^= g.row(i);
        out.row(msg) = w;
    }
    return out;
}

inline std::size_t minimum_distance(const BitMatrix& g)
{
    if (g.rows() > 24)
        throw resource_error("code dimension above 24");
    std::size_t best = g.cols() + 1;
    const std::size_t k = g.rows();
    // Gray-code walk over the nonzero messages.
    BitVec w(g.cols());
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        w ^= g.row(static_cast<std::size_t>(std::countr_zero(i)));
        if (!w.is_zero())
            best = std::min(best, w.weight());
    }
    return best;
}

// [I_k | P] -> [P^T | I_(n-k)], generator of the dual code.
inline BitMatrix dual_of_systematic(const BitMatrix& g)
{
    const std::size_t k = g.rows(), n = g.cols();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (g.get(i, j) != (i == j))
                throw domain_error("generator is not in systematic form");
    BitMatrix h(n - k, n);
    for (std::size_t i = 0; i < n - k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            h.set(i, j, g.get(j, k + i));
        h.set(i, k + i);
    }
    return h;
}

// Random search for a systematic [n, k] code with minimum distance >= d.
template <class Rng>
std::optional<BitMatrix> search_code(std::size_t n, std::size_t k, std::size_t d, Rng& rng, std::size_t tries = 100000)
{
    if (k == 0 || k >= n)
        throw domain_error("code dimension must satisfy 0 < k < n");
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t attempt = 0; attempt < tries; ++attempt) {
        BitMatrix g(k, n);
        for (std::size_t i = 0; i < k; ++i) {
            g.set(i, i);
            for (std::size_t j = k; j < n; ++j)
                g.set(i, j, bit(rng));
        }
        if (minimum_distance(g) >= d)
            return g;
    }
    return std::nullopt;
}

// ---- disjunct matrices ----

struct DisjunctCheck {
    bool disjunct = false;
    std::vector<std::size_t> cover; // t columns whose union covers...
    std::size_t covered = 0;         // ...this other column
};

inline DisjunctCheck check_disjunct(const BitMatrix& m, std::size_t t)
{
    const std::size_t cols = m.cols();
    if (t >= cols)
        throw domain_error("t must be smaller than the number of columns");
    if (binomial_capped(cols, t, max_subsets) > max_subsets)
        throw resource_error("more than 10^6 column subsets");
    std::vector<BitVec> col;
    for (std::size_t c = 0; c < cols; ++c)
        col.push_back(m.column(c));
    DisjunctCheck out;
    std::vector<bool> in_set(cols);
    const bool ok = for_each_subset(cols, t, [&](const std::vector<std::size_t>& s) {
        BitVec u(m.rows());
        std::fill(in_set.begin(), in_set.end(), false);
        for (auto c : s) {
            u |= col[c];
            in_set[c] = true;
        }
        for (std::size_t j = 0; j < cols; ++j)
            if (!in_set[j] && col[j].subset_of(u)) {
                out.cover = s;
                out.covered = j;
                return false;
            }
        return true;
    });
    out.disjunct = ok;
    return out;
}

// ---- Reed-Muller quotient action ----

// Companion matrix of x^n + c_(n-1) x^(n-1) + ... + c_0 (leading term
// first, as in "10011"): ones below the diagonal, last column c_0..c_(n-1).
inline BitMatrix companion(const BitVec& poly)
{
    if (poly.size() < 2 || !poly[0])
        throw domain_error("companion polynomial must be monic of degree >= 1");
    const std::size_t n = poly.size() - 1;
    BitMatrix c(n, n);
    for (std::size_t i = 1; i < n; ++i)
        c.set(i, i - 1);
    for (std::size_t i = 0; i < n; ++i)
        c.set(i, n - 1, poly[n - i]);
    return c;
}

struct MonomialBasisMap {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<std::uint32_t> basis; // degree-r monomials as variable masks (bit i = X_(i+1))
    BitMatrix matrix;                 // column J holds the image of basis[J]
};

inline std::vector<std::uint32_t> degree_monomials(std::size_t n, std::size_t r)
{
    std::vector<std::uint32_t> out;
    for_each_subset(n, r, [&](const std::vector<std::size_t>& s) {
        std::uint32_t m = 0;
        for (auto i : s)
            m |= std::uint32_t{1} << i;
        out.push_back(m);
        return true;
    });
    return out;
}

// Action f -> f((X_1..X_n) A) on R(r, n) / R(r - 1, n): substitute
// X_j -> sum_i X_i A_ij, expand with X^2 = X, keep the degree-r part.
inline MonomialBasisMap rm_quotient_map(const BitMatrix& a, std::size_t r)
{
    if (!a.square())
        throw dimension_error("matrix must be square");
    const std::size_t n = a.rows();
    if (n > 20)
        throw resource_error("at most 20 variables");
    if (r == 0 || r >= n)
        throw domain_error("degree must satisfy 0 < r < n");
    if (binomial_capped(n, r, 4096) > 4096)
        throw resource_error("more than 4096 degree-r monomials");
    MonomialBasisMap out{n, r, degree_monomials(n, r), {}};
    std::vector<std::size_t> index(std::size_t{1} << n, 0);
    for (std::size_t i = 0; i < out.basis.size(); ++i)
        index[out.basis[i]] = i;
    out.matrix = BitMatrix(out.basis.size(), out.basis.size());
    for (std::size_t col = 0; col < out.basis.size(); ++col) {
        // Polynomial as a set of monomials; XOR on insertion.
        std::vector<std::uint32_t> poly{0};
        for (std::size_t j = 0; j < n; ++j) {
            if (!((out.basis[col] >> j) & 1U))
                continue;
            std::vector<std::uint32_t> next;
            for (auto mono : poly)
                for (std::size_t i = 0; i < n; ++i)
                    if (a.get(i, j))
                        next.push_back(mono | (std::uint32_t{1} << i));
            std::sort(next.begin(), next.end());
            poly.clear();
            for (std::size_t k = 0; k < next.size();) {
                std::size_t e = k;
                while (e < next.size() && next[e] == next[k])
                    ++e;
                if ((e - k) % 2)
                    poly.push_back(next[k]);
                k = e;
            }
        }
        for (auto mono : poly)
            if (static_cast<std::size_t>(std::popcount(mono)) == r)
                out.matrix.set(index[mono], col);
    }
    return out;
}

// True when no nonzero element of the quotient is fixed: ker(M + I) = 0.
inline bool rm_fixed_only_zero(const BitMatrix& a, std::size_t r)
{
    const auto inv = inverse(a);
    if (!inv.invertible())
        throw domain_error("matrix is not invertible");
    const auto map = rm_quotient_map(a, r);
    return kernel(map.matrix ^ BitMatrix::identity(map.matrix.rows())).rows() == 0;
}

// Polynomials over GF(2) as bit masks, bit k = coefficient of x^k.
using Poly2 = std::uint64_t;

inline Poly2 poly_mul_linear(Poly2 p, bool constant)
{
    // p * (x + constant)
    return (p << 1) ^ (constant ? p : 0);
}

// Characteristic polynomial by reduction to upper Hessenberg form and the
// usual determinant recurrence; dimension at most 63.
inline Poly2 charpoly(BitMatrix h)
{
    if (!h.square())
        throw dimension_error("characteristic polynomial of a non-square matrix");
    const std::size_t n = h.rows();
    if (n > 63)
        throw resource_error("characteristic polynomial limited to dimension 63");
    for (std::size_t c = 0; c + 2 <= n; ++c) {
        std::size_t p = c + 1;
        while (p < n && !h.get(p, c))
            ++p;
        if (p == n)
            continue;
        if (p != c + 1) {
            std::swap(h.row(p), h.row(c + 1));
            for (std::size_t r = 0; r < n; ++r) {
                const bool x = h.get(r, p), y = h.get(r, c + 1);
                h.set(r, p, y);
                h.set(r, c + 1, x);
            }
        }
        for (std::size_t r = c + 2; r < n; ++r) {
            if (!h.get(r, c))
                continue;
            // Row r += row c+1, then column c+1 += column r (similarity).
            h.row(r) ^= h.row(c + 1);
            for (std::size_t k = 0; k < n; ++k)
                if (h.get(k, r))
                    h.set(k, c + 1, !h.get(k, c + 1));
        }
    }
    std::vector<Poly2> p(n + 1, 0);
    p[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = poly_mul_linear(p[k - 1], h.get(k - 1, k - 1));
        bool sub = true; // product of subdiagonal entries h(j, j-1), j = i+1..k-1
        for (std::size_t i = k - 1; i-- > 0;) {
            sub = sub && h.get(i + 1, i);
            if (!sub)
                break;
            if (h.get(i, k - 1))
                p[k] ^= p[i];
        }
    }
    return p[n];
}

inline bool poly_eval_at_one(Poly2 p) { return std::popcount(p) % 2 == 1; }

} // namespace cipherkit::design

#endif
