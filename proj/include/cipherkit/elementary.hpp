#ifndef CIPHERKIT_ELEMENTARY_HPP
#define CIPHERKIT_ELEMENTARY_HPP

// Small self-contained problems: the digit-sum signature test, the
// superincreasing knapsack cipher and differential solution counting.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cipherkit/error.hpp"
#include "cipherkit/gf2.hpp"

namespace cipherkit {

enum class Verdict { possible, impossible };

inline const char* to_string(Verdict v) { return v == Verdict::possible ? "possible" : "impossible"; }

// A signature s is the digit sum of a square t, so s = t = 0 or 1 (mod 3).
inline Verdict signature_plausible(std::uint64_t s)
{
    return s % 3 == 2 ? Verdict::impossible : Verdict::possible;
}

// Same test for a signature given as a decimal string of any length.
inline Verdict signature_plausible(std::string_view decimal)
{
    if (decimal.empty())
        throw format_error("empty signature");
    unsigned residue = 0;
    for (char c : decimal) {
        if (c < '0' || c > '9')
            throw format_error("signature must be a nonnegative decimal integer");
        residue = (residue + static_cast<unsigned>(c - '0')) % 3;
    }
    return residue == 2 ? Verdict::impossible : Verdict::possible;
}

inline unsigned digit_sum(const mpz_class& value)
{
    unsigned sum = 0;
    for (char c : value.get_str())
        sum += static_cast<unsigned>(c - '0');
    return sum;
}

// Knapsack key a_i = 2^i + (-1)^i, i = 1..n.
class KnapsackKey {
public:
    explicit KnapsackKey(std::size_t n) : terms_(n)
    {
        for (std::size_t i = 1; i <= n; ++i) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, i);
            terms_[i - 1] = p + (i % 2 == 0 ? 1 : -1);
        }
    }

    std::size_t size() const noexcept { return terms_.size(); }
    // 1-based, as a_i.
    const mpz_class& term(std::size_t i) const { return terms_.at(i - 1); }
    const std::vector<mpz_class>& terms() const noexcept { return terms_; }

    bool superincreasing() const
    {
        mpz_class prefix = 0;
        for (const auto& a : terms_) {
            if (a <= prefix)
                return false;
            prefix += a;
        }
        return true;
    }

private:
    std::vector<mpz_class> terms_;
};

inline mpz_class knapsack_encrypt(const KnapsackKey& key, const BitVec& message)
{
    if (message.size() != key.size())
        throw dimension_error("message length " + std::to_string(message.size()) + " does not match key length "
                              + std::to_string(key.size()));
    mpz_class y = 0;
    for (std::size_t i = 0; i < message.size(); ++i)
        if (message[i])
            y += key.terms()[i];
    return y;
}

// Greedy scan from a_n down to a_1. Takes a_i whenever the residue is at
// least a_i; the strict comparison misses ciphertexts such as Y = a_n.
inline BitVec knapsack_decrypt(const KnapsackKey& key, const mpz_class& ciphertext)
{
    if (ciphertext < 0)
        throw domain_error("ciphertext must be nonnegative");
    BitVec x(key.size());
    mpz_class residue = ciphertext;
    for (std::size_t i = key.size(); i-- > 0;) {
        if (residue >= key.terms()[i]) {
            x.set(i);
            residue -= key.terms()[i];
        }
    }
    if (residue != 0)
        throw domain_error("not a valid ciphertext: residual " + residue.get_str() + " after greedy scan");
    return x;
}

struct SboxTable {
    unsigned bits = 0;
    std::vector<std::uint32_t> table;

    std::uint32_t operator()(std::uint32_t x) const { return table[x]; }

    static SboxTable identity(unsigned bits)
    {
        SboxTable s{bits, std::vector<std::uint32_t>(std::size_t{1} << bits)};
        for (std::uint32_t x = 0; x < s.table.size(); ++x)
            s.table[x] = x;
        return s;
    }

    void validate() const
    {
        if (bits == 0 || bits > 20)
            throw domain_error("S-box width must be in 1..20 bits");
        if (table.size() != (std::size_t{1} << bits))
            throw domain_error("S-box table has " + std::to_string(table.size()) + " entries, expected 2^"
                               + std::to_string(bits));
        for (auto y : table)
            if (y >> bits)
                throw domain_error("S-box entry out of range");
    }

    bool is_permutation() const
    {
        std::vector<bool> seen(table.size(), false);
        for (auto y : table) {
            if (seen[y])
                return false;
            seen[y] = true;
        }
        return true;
    }

    // Whitespace-separated hex entries; the width follows from the count.
    static SboxTable parse_hex(std::istream& in)
    {
        SboxTable s;
        std::string tok;
        while (in >> tok) {
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tok, &used, 16);
            } catch (const std::exception&) {
                throw format_error("bad hex entry '" + tok + "'");
            }
            if (used != tok.size())
                throw format_error("bad hex entry '" + tok + "'");
            s.table.push_back(static_cast<std::uint32_t>(v));
        }
        if (s.table.empty() || !std::has_single_bit(s.table.size()))
            throw domain_error("S-box table size must be a power of two, got " + std::to_string(s.table.size()));
        s.bits = static_cast<unsigned>(std::countr_zero(s.table.size()));
        s.validate();
        return s;
    }
};

// Multiplication in GF(2^n) with the given modulus (bit n set).
inline std::uint32_t gf2n_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned n)
{
    std::uint32_t r = 0;
    while (b) {
        if (b & 1U)
            r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> n)
            a ^= modulus;
    }
    return r;
}

// x -> x^3 over GF(2^n).
inline SboxTable cube_map(unsigned n, std::uint32_t modulus)
{
    SboxTable s{n, std::vector<std::uint32_t>(std::size_t{1} << n)};
    for (std::uint32_t x = 0; x < s.table.size(); ++x)
        s.table[x] = gf2n_mul(gf2n_mul(x, x, modulus, n), x, modulus, n);
    return s;
}

// Number of (a, b), a != 0, for which S(x) ^ S(x ^ a) = b has exactly two
// solutions x.
inline std::size_t count_two_solution_pairs(const SboxTable& s)
{
    s.validate();
    if (s.bits > 16)
        throw resource_error("difference table limited to 16-bit S-boxes");
    const std::size_t size = s.table.size();
    std::vector<std::uint32_t> row(size);
    std::size_t count = 0;
    for (std::uint32_t a = 1; a < size; ++a) {
        std::fill(row.begin(), row.end(), 0);
        for (std::uint32_t x = 0; x < size; ++x)
            ++row[s.table[x] ^ s.table[x ^ a]];
        for (auto c : row)
            count += (c == 2);
    }
    return count;
}

} // namespace cipherkit

#endif
