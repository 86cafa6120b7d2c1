#ifndef CIPHERKIT_GF2_HPP
#define CIPHERKIT_GF2_HPP

// Vectors and matrices over the two-element field, plus Hamming geometry
// on the hypercube.
//
// Bit i of a BitVec is the coordinate x_{i+1}. The canonical text form is
// a 0/1 string written x_1 first, and the integer form (to_uint/from_uint)
// puts x_1 in the most significant position, so "010" <-> 2.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cipherkit/error.hpp"

namespace cipherkit {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s)
    {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                v.set(i);
            else if (s[i] != '0')
                throw format_error("bit string may only contain 0 and 1: '" + std::string(s) + "'");
        }
        return v;
    }

    static BitVec from_uint(std::uint64_t value, std::size_t n)
    {
        if (n > 64)
            throw dimension_error("from_uint supports at most 64 bits");
        BitVec v(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((value >> (n - 1 - i)) & 1U)
                v.set(i);
        return v;
    }

    static BitVec ones(std::size_t n)
    {
        BitVec v(n);
        for (std::size_t i = 0; i < n; ++i)
            v.set(i);
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool operator[](std::size_t i) const { return get(i); }
    void set(std::size_t i, bool value = true)
    {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    std::uint64_t to_uint() const
    {
        if (size_ > 64)
            throw dimension_error("to_uint supports at most 64 bits");
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < size_; ++i)
            value = (value << 1) | static_cast<std::uint64_t>(get(i));
        return value;
    }

    std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i))
                s[i] = '1';
        return s;
    }

    std::size_t weight() const noexcept
    {
        std::size_t w = 0;
        for (auto word : words_)
            w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    bool is_zero() const noexcept
    {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    BitVec& operator^=(const BitVec& rhs)
    {
        require_same_size(rhs);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] ^= rhs.words_[k];
        return *this;
    }
    BitVec& operator&=(const BitVec& rhs)
    {
        require_same_size(rhs);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] &= rhs.words_[k];
        return *this;
    }
    BitVec& operator|=(const BitVec& rhs)
    {
        require_same_size(rhs);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] |= rhs.words_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

    // Inner product over GF(2).
    bool dot(const BitVec& rhs) const
    {
        require_same_size(rhs);
        unsigned parity = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            parity ^= static_cast<unsigned>(std::popcount(words_[k] & rhs.words_[k])) & 1U;
        return parity != 0;
    }

    // True when every set bit of *this is also set in rhs.
    bool subset_of(const BitVec& rhs) const
    {
        require_same_size(rhs);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~rhs.words_[k])
                return false;
        return true;
    }

    // Vector with coordinates [first, first + count).
    BitVec slice(std::size_t first, std::size_t count) const
    {
        if (first + count > size_)
            throw dimension_error("slice out of range");
        BitVec out(count);
        for (std::size_t i = 0; i < count; ++i)
            out.set(i, get(first + i));
        return out;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;
    friend auto operator<=>(const BitVec& a, const BitVec& b)
    {
        if (auto c = a.size_ <=> b.size_; c != 0)
            return c;
        return a.to_string() <=> b.to_string();
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

private:
    void require_same_size(const BitVec& rhs) const
    {
        if (rhs.size_ != size_)
            throw dimension_error("bit vectors of length " + std::to_string(size_) + " and "
                                  + std::to_string(rhs.size_));
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::ostream& operator<<(std::ostream& os, const BitVec& v) { return os << v.to_string(); }

inline BitVec concat(const BitVec& a, const BitVec& b)
{
    BitVec out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.set(i, a[i]);
    for (std::size_t i = 0; i < b.size(); ++i)
        out.set(a.size() + i, b[i]);
    return out;
}

inline std::size_t hamming(const BitVec& x, const BitVec& y)
{
    if (x.size() != y.size())
        throw dimension_error("hamming: length mismatch");
    return (x ^ y).weight();
}

inline constexpr unsigned max_hypercube_dim = 24;

// Distance from every point of F_2^n to the set given by integer indices
// (x_1 most significant). Multi-source BFS over the hypercube.
inline std::vector<std::uint8_t> distance_table(std::span<const std::uint32_t> members, unsigned n)
{
    if (n > max_hypercube_dim)
        throw resource_error("hypercube dimension " + std::to_string(n) + " exceeds cap of "
                             + std::to_string(max_hypercube_dim));
    if (members.empty())
        throw domain_error("distance to an empty set is undefined");
    constexpr std::uint8_t unseen = 0xFF;
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint8_t> dist(size, unseen);
    std::vector<std::uint32_t> frontier;
    for (auto m : members) {
        if (m >= size)
            throw dimension_error("set member outside F_2^" + std::to_string(n));
        if (dist[m] == unseen) {
            dist[m] = 0;
            frontier.push_back(m);
        }
    }
    std::vector<std::uint32_t> next;
    for (std::uint8_t d = 1; !frontier.empty(); ++d) {
        next.clear();
        for (auto x : frontier)
            for (unsigned b = 0; b < n; ++b) {
                const std::uint32_t y = x ^ (std::uint32_t{1} << b);
                if (dist[y] == unseen) {
                    dist[y] = d;
                    next.push_back(y);
                }
            }
        frontier.swap(next);
    }
    return dist;
}

inline std::vector<std::uint8_t> distance_to_set(std::span<const BitVec> set, unsigned n)
{
    if (n > max_hypercube_dim)
        throw resource_error("hypercube dimension " + std::to_string(n) + " exceeds cap of "
                             + std::to_string(max_hypercube_dim));
    std::vector<std::uint32_t> members;
    members.reserve(set.size());
    for (const auto& v : set) {
        if (v.size() != n)
            throw dimension_error("set member of length " + std::to_string(v.size()) + ", expected "
                                  + std::to_string(n));
        members.push_back(static_cast<std::uint32_t>(v.to_uint()));
    }
    return distance_table(members, n);
}

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n)
    {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i);
        return m;
    }

    static BitMatrix from_rows(std::vector<BitVec> rows)
    {
        BitMatrix m;
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        for (const auto& r : rows)
            if (r.size() != m.cols_)
                throw dimension_error("ragged matrix rows");
        m.rows_ = std::move(rows);
        return m;
    }

    static BitMatrix from_strings(std::span<const std::string_view> rows)
    {
        std::vector<BitVec> v;
        for (auto r : rows)
            v.push_back(BitVec::from_string(r));
        return from_rows(std::move(v));
    }
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows)
    {
        return from_strings(std::span<const std::string_view>(rows.begin(), rows.size()));
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows() == cols(); }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    bool operator()(std::size_t r, std::size_t c) const { return get(r, c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

    const BitVec& row(std::size_t r) const { return rows_[r]; }
    BitVec& row(std::size_t r) { return rows_[r]; }

    BitVec column(std::size_t c) const
    {
        BitVec v(rows());
        for (std::size_t r = 0; r < rows(); ++r)
            v.set(r, get(r, c));
        return v;
    }

    BitMatrix transpose() const
    {
        BitMatrix t(cols(), rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols(); ++c)
                if (get(r, c))
                    t.set(c, r);
        return t;
    }

    std::size_t weight() const
    {
        std::size_t w = 0;
        for (const auto& r : rows_)
            w += r.weight();
        return w;
    }

    BitMatrix& operator^=(const BitMatrix& rhs)
    {
        if (rows() != rhs.rows() || cols() != rhs.cols())
            throw dimension_error("matrix sum shape mismatch");
        for (std::size_t r = 0; r < rows(); ++r)
            rows_[r] ^= rhs.rows_[r];
        return *this;
    }
    friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }

    // Row vector times matrix.
    BitVec left_multiply(const BitVec& v) const
    {
        if (v.size() != rows())
            throw dimension_error("vector-matrix product shape mismatch");
        BitVec out(cols());
        for (std::size_t r = 0; r < rows(); ++r)
            if (v[r])
                out ^= rows_[r];
        return out;
    }

    // Matrix times column vector.
    BitVec operator*(const BitVec& v) const
    {
        if (v.size() != cols())
            throw dimension_error("matrix-vector product shape mismatch");
        BitVec out(rows());
        for (std::size_t r = 0; r < rows(); ++r)
            out.set(r, rows_[r].dot(v));
        return out;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    std::string to_string() const
    {
        std::ostringstream os;
        os << rows() << ' ' << cols() << '\n';
        for (const auto& r : rows_)
            os << r.to_string() << '\n';
        return os.str();
    }

    // "rows cols" header followed by one 0/1 string per row. Whitespace
    // inside a row is ignored.
    static BitMatrix parse(std::istream& in)
    {
        std::size_t r = 0;
        std::size_t c = 0;
        if (!(in >> r >> c))
            throw format_error("matrix header must be \"rows cols\"");
        BitMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            std::string bits;
            while (bits.size() < c) {
                std::string tok;
                if (!(in >> tok))
                    throw format_error("matrix truncated at row " + std::to_string(i + 1));
                bits += tok;
            }
            if (bits.size() != c)
                throw format_error("row " + std::to_string(i + 1) + " has " + std::to_string(bits.size())
                                   + " entries, expected " + std::to_string(c));
            m.rows_[i] = BitVec::from_string(bits);
        }
        return m;
    }
    static BitMatrix parse(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        return parse(in);
    }

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

inline std::ostream& operator<<(std::ostream& os, const BitMatrix& m) { return os << m.to_string(); }

inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b)
{
    if (a.cols() != b.rows())
        throw dimension_error("matrix product: " + std::to_string(a.cols()) + " columns vs "
                              + std::to_string(b.rows()) + " rows");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        out.row(r) = b.left_multiply(a.row(r));
    return out;
}

// Row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(BitMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && !m.get(p, c))
            ++p;
        if (p == m.rows())
            continue;
        std::swap(m.row(p), m.row(rank));
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && m.get(r, c))
                m.row(r) ^= m.row(rank);
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

inline std::size_t rank(BitMatrix m) { return row_reduce(m).size(); }

struct InverseResult {
    std::optional<BitMatrix> inverse; // empty when singular
    std::size_t rank = 0;

    bool invertible() const noexcept { return inverse.has_value(); }
};

// Gauss-Jordan over GF(2). Singularity is a normal outcome, not an error.
inline InverseResult inverse(const BitMatrix& a)
{
    if (!a.square())
        throw dimension_error("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        aug.row(r) = concat(a.row(r), BitVec(n));
        aug.set(r, n + r);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = rank;
        while (p < n && !aug.get(p, c))
            ++p;
        if (p == n)
            continue;
        std::swap(aug.row(p), aug.row(rank));
        for (std::size_t r = 0; r < n; ++r)
            if (r != rank && aug.get(r, c))
                aug.row(r) ^= aug.row(rank);
        ++rank;
    }
    InverseResult result;
    result.rank = rank;
    if (rank == n) {
        BitMatrix inv(n, n);
        for (std::size_t r = 0; r < n; ++r)
            inv.row(r) = aug.row(r).slice(n, n);
        result.inverse = std::move(inv);
    }
    return result;
}

// Basis of {x : m * x = 0}, one vector per row of the result.
inline BitMatrix kernel(const BitMatrix& m)
{
    BitMatrix e = m;
    const auto pivots = row_reduce(e);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<BitVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        BitVec v(m.cols());
        v.set(free);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (e.get(i, free))
                v.set(pivots[i]);
        basis.push_back(std::move(v));
    }
    if (basis.empty())
        return BitMatrix(0, m.cols());
    return BitMatrix::from_rows(std::move(basis));
}

} // namespace cipherkit

#endif
