#ifndef CIPHERKIT_TWINPEAKS2_HPP
#define CIPHERKIT_TWINPEAKS2_HPP

// TwinPeaks2: four words (a, b, c, d) and 48 rounds of
//   (a, b, c, d) <- (b, c, d, a ^ f(b, c, d)),
//   f(b, c, d) = S3(S1(b) ^ S2(b & ~c ^ c | d) ^ S1(d)),
// over secret word permutations S1, S2, S3. Since f(b, c, d) = f(d, c, b),
// the reversal tau(a, b, c, d) = (d, c, b, a) satisfies F tau F = tau, so
// decryption is tau . encryption . tau and needs only encryption access.
//
// Word width is a parameter (1..32); the cipher proper uses 32.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cipherkit/error.hpp"

namespace cipherkit::tp2 {

inline constexpr unsigned default_rounds = 48;

inline std::uint32_t word_mask(unsigned w)
{
    if (w == 0 || w > 32)
        throw domain_error("TwinPeaks2 word width must be in 1..32");
    return w == 32 ? 0xFFFFFFFFU : (std::uint32_t{1} << w) - 1;
}

class WordPermutation {
public:
    using Fn = std::function<std::uint32_t(std::uint32_t)>;

    WordPermutation(Fn forward, Fn inverse) : forward_(std::move(forward)), inverse_(std::move(inverse)) {}

    std::uint32_t operator()(std::uint32_t x) const { return forward_(x); }
    std::uint32_t inverse(std::uint32_t y) const { return inverse_(y); }

    static WordPermutation identity()
    {
        return {[](std::uint32_t x) { return x; }, [](std::uint32_t x) { return x; }};
    }

    // Lookup-backed permutation of {0, ..., table.size() - 1}.
    static WordPermutation from_table(std::vector<std::uint32_t> table)
    {
        std::vector<std::uint32_t> inv(table.size(), 0);
        std::vector<bool> seen(table.size(), false);
        for (std::uint32_t x = 0; x < table.size(); ++x) {
            if (table[x] >= table.size() || seen[table[x]])
                throw domain_error("table is not a permutation");
            seen[table[x]] = true;
            inv[table[x]] = x;
        }
        auto fwd = std::make_shared<const std::vector<std::uint32_t>>(std::move(table));
        auto bwd = std::make_shared<const std::vector<std::uint32_t>>(std::move(inv));
        return {[fwd](std::uint32_t x) { return (*fwd)[x]; }, [bwd](std::uint32_t y) { return (*bwd)[y]; }};
    }

private:
    Fn forward_;
    Fn inverse_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Inverse of an odd number modulo 2^32 (Newton iteration).
inline std::uint32_t inverse_odd(std::uint32_t a)
{
    std::uint32_t x = a; // correct to 3 bits
    for (int i = 0; i < 5; ++i)
        x *= 2U - a * x;
    return x;
}

inline std::uint32_t rotl(std::uint32_t x, unsigned k, unsigned w, std::uint32_t m)
{
    k %= w;
    return k ? ((x << k) | (x >> (w - k))) & m : x;
}

struct MixRound {
    std::uint32_t mul;
    std::uint32_t mul_inv;
    std::uint32_t add;
    unsigned rot;
};

} // namespace detail

// Deterministic bijection on w-bit words derived from (seed, index): eight
// rounds of odd multiplication, xorshift, key addition and rotation, each
// invertible mod 2^w.
inline WordPermutation keyed_permutation(std::string_view seed, unsigned index, unsigned w = 32)
{
    const std::uint32_t m = word_mask(w);
    std::uint64_t state = 0xCBF29CE484222325ULL; // FNV-1a 64 offset basis
    for (unsigned char ch : seed)
        state = (state ^ ch) * 0x100000001B3ULL;
    state ^= 0xA5A5A5A5ULL * (index + 1);
    std::vector<detail::MixRound> rounds(8);
    for (auto& r : rounds) {
        const auto rnd = detail::splitmix64(state);
        r.mul = static_cast<std::uint32_t>(rnd) | 1U;
        r.mul_inv = detail::inverse_odd(r.mul);
        r.add = static_cast<std::uint32_t>(rnd >> 32);
        r.rot = static_cast<unsigned>((rnd >> 40) % w);
    }
    const unsigned shift = w > 1 ? (w + 1) / 2 : 1;
    auto fwd = [rounds, w, m, shift](std::uint32_t x) {
        x &= m;
        for (const auto& r : rounds) {
            x = (x * r.mul) & m;
            if (w > 1)
                x ^= x >> shift;
            x = (x + r.add) & m;
            x = detail::rotl(x, r.rot, w, m);
        }
        return x;
    };
    auto bwd = [rounds, w, m, shift](std::uint32_t y) {
        y &= m;
        for (auto it = rounds.rbegin(); it != rounds.rend(); ++it) {
            y = detail::rotl(y, (w - it->rot % w) % w, w, m);
            y = (y - it->add) & m;
            if (w > 1) {
                std::uint32_t x = y;
                for (unsigned k = 0; k * shift < w; ++k)
                    x = y ^ (x >> shift);
                y = x;
            }
            y = (y * it->mul_inv) & m;
        }
        return y;
    };
    return {fwd, bwd};
}

struct RoundPermutations {
    unsigned width = 32;
    WordPermutation s1 = WordPermutation::identity();
    WordPermutation s2 = WordPermutation::identity();
    WordPermutation s3 = WordPermutation::identity();

    static RoundPermutations identity(unsigned width) { return {width}; }
    static RoundPermutations keyed(std::string_view seed, unsigned width = 32)
    {
        return {width, keyed_permutation(seed, 1, width), keyed_permutation(seed, 2, width),
                keyed_permutation(seed, 3, width)};
    }
};

struct Block {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t c = 0;
    std::uint32_t d = 0;

    friend bool operator==(const Block&, const Block&) = default;
};

inline Block reverse_words(const Block& x) { return {x.d, x.c, x.b, x.a}; }

// S3(S1(b) ^ S2((b & ~c) ^ (c | d)) ^ S1(d)).
inline std::uint32_t round_fn(std::uint32_t b, std::uint32_t c, std::uint32_t d, const RoundPermutations& s)
{
    const std::uint32_t m = word_mask(s.width);
    const std::uint32_t mix = ((b & ~c) ^ (c | d)) & m;
    return s.s3((s.s1(b) ^ s.s2(mix) ^ s.s1(d)) & m) & m;
}

inline Block round(const Block& x, const RoundPermutations& s)
{
    return {x.b, x.c, x.d, (x.a ^ round_fn(x.b, x.c, x.d, s)) & word_mask(s.width)};
}

inline Block inverse_round(const Block& y, const RoundPermutations& s)
{
    return {(y.d ^ round_fn(y.a, y.b, y.c, s)) & word_mask(s.width), y.a, y.b, y.c};
}

inline Block encrypt(Block x, const RoundPermutations& s, unsigned rounds = default_rounds)
{
    for (unsigned r = 0; r < rounds; ++r)
        x = round(x, s);
    return x;
}

// Direct inverse using the round structure; the attack below does not use it.
inline Block decrypt(Block y, const RoundPermutations& s, unsigned rounds = default_rounds)
{
    for (unsigned r = 0; r < rounds; ++r)
        y = inverse_round(y, s);
    return y;
}

using EncryptionOracle = std::function<Block(const Block&)>;

inline Block reflection_decrypt(const Block& ciphertext, const EncryptionOracle& encrypt_oracle)
{
    return reverse_words(encrypt_oracle(reverse_words(ciphertext)));
}

// 32 hex digits, big-endian per 32-bit word, word a first.
inline Block parse_block_hex(std::string_view hex)
{
    if (hex.size() != 32)
        throw format_error("block must be 32 hex digits");
    std::array<std::uint32_t, 4> w{};
    for (std::size_t i = 0; i < 32; ++i) {
        const char ch = hex[i];
        unsigned v = 0;
        if (ch >= '0' && ch <= '9')
            v = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f')
            v = static_cast<unsigned>(ch - 'a' + 10);
        else if (ch >= 'A' && ch <= 'F')
            v = static_cast<unsigned>(ch - 'A' + 10);
        else
            throw format_error("bad hex digit in block");
        w[i / 8] = (w[i / 8] << 4) | v;
    }
    return {w[0], w[1], w[2], w[3]};
}

inline std::string block_hex(const Block& x)
{
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out;
    for (std::uint32_t word : {x.a, x.b, x.c, x.d})
        for (int shift = 28; shift >= 0; shift -= 4)
            out += digits[(word >> shift) & 0xF];
    return out;
}

} // namespace cipherkit::tp2

#endif
