#ifndef CIPHERKIT_FNV_HPP
#define CIPHERKIT_FNV_HPP

// FNV-1a and FNV2 over a 128-bit state, and the collision pipeline:
// a short lattice vector gives a relation sum a_i g^(n-i) = 0 mod 2^128,
// a splitting a_i = x_i - x'_i without low-byte carries gives an FNV2
// collision, and carry-free additions translate into XOR bytes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cipherkit/error.hpp"
#include "cipherkit/lll.hpp"

namespace cipherkit::fnv {

using u128 = unsigned __int128;
using Bytes = std::vector<std::uint8_t>;

inline constexpr u128 h0 = (u128{0x6c62272e07bb0142ULL} << 64) | 0x62b821756295c58dULL;
inline constexpr u128 g = (u128{1} << 88) + 315;

inline u128 fnv1a(std::span<const std::uint8_t> msg, u128 start = h0)
{
    u128 h = start;
    for (auto x : msg)
        h = (h ^ x) * g;
    return h;
}

inline u128 fnv2(std::span<const std::uint8_t> msg, u128 start = h0)
{
    u128 h = start;
    for (auto x : msg)
        h = (h + x) * g;
    return h;
}

inline u128 power(u128 base, unsigned e)
{
    u128 r = 1;
    while (e) {
        if (e & 1U)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline mpz_class to_mpz(u128 v)
{
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
    return (hi << 64) + lo;
}

inline u128 from_mpz(const mpz_class& v)
{
    mpz_class m = v;
    mpz_class two128 = mpz_class(1) << 128;
    m %= two128;
    if (m < 0)
        m += two128;
    const mpz_class lo = m & mpz_class("ffffffffffffffff", 16);
    const mpz_class hi = m >> 64;
    return (u128{hi.get_ui()} << 64) | lo.get_ui();
}

inline std::string to_hex(u128 v)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 31; i >= 0; --i, v >>= 4)
        s[static_cast<std::size_t>(i)] = digits[static_cast<unsigned>(v & 0xF)];
    return s;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    for (auto b : bytes) {
        s += digits[b >> 4];
        s += digits[b & 0xF];
    }
    return s;
}

inline Bytes parse_hex(std::string_view hex)
{
    if (hex.size() % 2)
        throw format_error("hex string has odd length");
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9')
            return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f')
            return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F')
            return static_cast<unsigned>(c - 'A' + 10);
        throw format_error(std::string("bad hex digit '") + c + "'");
    };
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    return out;
}

struct Relation {
    std::vector<int> a;

    std::size_t size() const noexcept { return a.size(); }
};

// sum a_i g^(n-i) mod 2^128, i = 1..n. Negative coefficients wrap.
inline u128 relation_value(const Relation& r)
{
    u128 acc = 0;
    for (int ai : r.a)
        acc = acc * g + static_cast<u128>(static_cast<__int128>(ai));
    return acc;
}

inline bool verify_relation(const Relation& r) { return relation_value(r) == 0; }

struct SplittingProbability {
    mpq_class exact;
    bool has_full_byte = false; // some |a_i| >= 256, so no splitting exists
    double approx() const { return exact.get_d(); }
};

// prod (1 - |a_i|/256).
inline SplittingProbability splitting_probability(const Relation& r)
{
    SplittingProbability p{mpq_class(1), false};
    for (int ai : r.a) {
        const int m = ai < 0 ? -ai : ai;
        if (m >= 256) {
            p.exact = 0;
            p.has_full_byte = true;
            return p;
        }
        p.exact *= mpq_class(256 - m, 256);
    }
    p.exact.canonicalize();
    return p;
}

struct Splitting {
    Bytes x;      // additive bytes of the first message
    Bytes x_alt;  // additive bytes of the second message
    Bytes h;      // low byte of the first trajectory before step i
    Bytes h_alt;  // same for the second
    u128 start = h0;

    bool suitable() const
    {
        if (x.size() != x_alt.size() || h.size() != x.size() || h_alt.size() != x.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (h[i] + x[i] > 255 || h_alt[i] + x_alt[i] > 255)
                return false;
        return true;
    }
};

struct SplittingOptions {
    std::size_t max_restarts = 200;
    std::size_t node_budget = 4096; // per restart; 0 means unlimited
    bool backtracking = true;
    u128 start = h0;
};

// Randomized depth-first search. At step i with low bytes h, h' the byte
// x must satisfy x - x' = a_i, x <= 255 - h and x' <= 255 - h', i.e.
// max(0, a_i) <= x <= min(255 - h, 255 - h' + a_i). States follow FNV2.
template <class Rng>
std::optional<Splitting> find_splitting(const Relation& r, Rng& rng, const SplittingOptions& options = {})
{
    const std::size_t n = r.size();
    for (int ai : r.a)
        if (ai < -255 || ai > 255)
            return std::nullopt;

    struct Frame {
        u128 state;
        u128 state_alt;
        std::vector<std::uint8_t> choices;
        std::size_t next = 0;
    };

    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, options.max_restarts); ++attempt) {
        std::vector<Frame> stack;
        stack.reserve(n + 1);
        std::size_t nodes = 0;
        auto open = [&](u128 s, u128 s_alt, std::size_t i) {
            Frame f{s, s_alt, {}, 0};
            if (i < n) {
                const int a = r.a[i];
                const int hl = static_cast<int>(s & 0xFF);
                const int hr = static_cast<int>(s_alt & 0xFF);
                const int lo = std::max(0, a);
                const int hi = std::min(255 - hl, 255 - hr + a);
                for (int x = lo; x <= hi; ++x)
                    f.choices.push_back(static_cast<std::uint8_t>(x));
                std::shuffle(f.choices.begin(), f.choices.end(), rng);
                if (!options.backtracking && f.choices.size() > 1)
                    f.choices.resize(1);
            }
            stack.push_back(std::move(f));
        };
        open(options.start, options.start, 0);
        while (!stack.empty()) {
            const std::size_t depth = stack.size() - 1;
            if (depth == n) {
                Splitting s;
                s.start = options.start;
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& f = stack[i];
                    const auto x = f.choices[f.next - 1];
                    s.x.push_back(x);
                    s.x_alt.push_back(static_cast<std::uint8_t>(x - r.a[i]));
                    s.h.push_back(static_cast<std::uint8_t>(f.state & 0xFF));
                    s.h_alt.push_back(static_cast<std::uint8_t>(f.state_alt & 0xFF));
                }
                return s;
            }
            Frame& f = stack.back();
            if (f.next == f.choices.size() || (options.node_budget && nodes >= options.node_budget)) {
                stack.pop_back();
                if (!options.backtracking)
                    break;
                continue;
            }
            const std::uint8_t x = f.choices[f.next++];
            const auto x_alt = static_cast<std::uint8_t>(x - r.a[depth]);
            ++nodes;
            open((f.state + x) * g, (f.state_alt + x_alt) * g, depth + 1);
        }
    }
    return std::nullopt;
}

// x~_i = h_i ^ (h_i + x_i) on the low byte, for both messages.
inline std::pair<Bytes, Bytes> assemble_collision(const Splitting& s)
{
    if (!s.suitable())
        throw domain_error("splitting is not suitable");
    Bytes m1(s.x.size()), m2(s.x.size());
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        m1[i] = static_cast<std::uint8_t>(s.h[i] ^ (s.h[i] + s.x[i]));
        m2[i] = static_cast<std::uint8_t>(s.h_alt[i] ^ (s.h_alt[i] + s.x_alt[i]));
    }
    if (m1 == m2)
        throw domain_error("splitting yields identical messages");
    if (fnv1a(m1, s.start) != fnv1a(m2, s.start))
        throw domain_error("assembled messages do not collide");
    return {m1, m2};
}

// Basis rows e_i | g^(n-i) mod 2^128 and (0, ..., 0, t 2^128).
inline IntMatrix relation_lattice(std::size_t n, unsigned t)
{
    IntMatrix b(n + 1, IntVector(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        b[i][i] = 1;
        b[i][n] = to_mpz(power(g, static_cast<unsigned>(n - 1 - i)));
    }
    b[n][n] = mpz_class(t) << 128;
    return b;
}

// Rows of the reduced lattice that are relations with byte-bounded entries,
// best splitting probability first.
inline std::vector<Relation> relation_candidates(std::size_t n, unsigned t)
{
    if (n < 1)
        throw domain_error("relation length must be positive");
    const auto reduced = lll_reduce(relation_lattice(n, t));
    std::vector<Relation> out;
    for (const auto& row : reduced) {
        if (row[n] != 0)
            continue;
        Relation r;
        bool ok = true;
        bool nonzero = false;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (abs(row[i]) > 255) {
                ok = false;
                break;
            }
            r.a.push_back(static_cast<int>(row[i].get_si()));
            nonzero = nonzero || row[i] != 0;
        }
        if (ok && nonzero && verify_relation(r))
            out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const Relation& x, const Relation& y) {
        return splitting_probability(x).exact > splitting_probability(y).exact;
    });
    return out;
}

inline Relation find_relation(std::size_t n, unsigned t = 1)
{
    if (n < 12 || n > 40)
        throw domain_error("relation length must be in 12..40");
    auto c = relation_candidates(n, t);
    if (c.empty())
        throw search_failure("no byte-bounded relation of length " + std::to_string(n) + " with t = "
                             + std::to_string(t));
    return c.front();
}

struct Collision {
    Bytes first;
    Bytes second;
    u128 digest = 0;
    Relation relation;
    unsigned t = 1;
};

inline constexpr unsigned scaling_retries[] = {1, 2, 3, 5};

// Full pipeline. Throws search_failure when no relation of length n admits
// a suitable splitting within the restart budget.
template <class Rng>
Collision find_collision(std::size_t n, Rng& rng, SplittingOptions options = {})
{
    if (n < 12 || n > 40)
        throw domain_error("relation length must be in 12..40");
    for (unsigned t : scaling_retries) {
        for (const auto& rel : relation_candidates(n, t)) {
            auto s = find_splitting(rel, rng, options);
            if (!s)
                continue;
            auto [m1, m2] = assemble_collision(*s);
            return {m1, m2, fnv1a(m1, options.start), rel, t};
        }
    }
    throw search_failure("no collision found for n = " + std::to_string(n));
}

} // namespace cipherkit::fnv

#endif
