#ifndef CIPHERKIT_BASHS3_HPP
#define CIPHERKIT_BASHS3_HPP

// The S3 permutation of the Bash-f sponge on three w-bit words, linear
// strengthening layers built from XORs of (rotated) inputs, and tests for
// whether S3 ^ L remains a permutation.
//
// Word width is a parameter (1..64) so exhaustive checks run at small w;
// rotation amounts are reduced mod w. Rotation is toward the most
// significant bit.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cipherkit/error.hpp"

namespace cipherkit::bash {

inline std::uint64_t width_mask(unsigned w)
{
    if (w == 0 || w > 64)
        throw domain_error("word width must be in 1..64");
    return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
}

inline std::uint64_t rotl(std::uint64_t x, unsigned k, unsigned w)
{
    const std::uint64_t m = width_mask(w);
    x &= m;
    k %= w;
    if (k == 0)
        return x;
    return ((x << k) | (x >> (w - k))) & m;
}

struct State {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;

    std::uint64_t operator[](int i) const { return i == 0 ? a : i == 1 ? b : c; }
    friend bool operator==(const State&, const State&) = default;
    State operator^(const State& o) const { return {a ^ o.a, b ^ o.b, c ^ o.c}; }
    bool is_zero() const { return (a | b | c) == 0; }
};

// (b | ~c ^ a, a | c ^ b, a & b ^ c) with priority ~, &, |, ^.
inline State s3(const State& s, unsigned w)
{
    const std::uint64_t m = width_mask(w);
    return {((s.b | (~s.c & m)) ^ s.a) & m, ((s.a | s.c) ^ s.b) & m, ((s.a & s.b) ^ s.c) & m};
}

struct Term {
    int input = 0;        // 0 = a, 1 = b, 2 = c
    unsigned rotation = 0; // 0 = the input itself

    friend bool operator==(const Term&, const Term&) = default;
};

class LinearLayer {
public:
    LinearLayer() = default;
    explicit LinearLayer(std::array<std::vector<Term>, 3> outputs) : outputs_(std::move(outputs)) {}

    const std::vector<Term>& output(int i) const { return outputs_.at(static_cast<std::size_t>(i)); }

    // Problem rules: at least one term is a proper rotation, and no output
    // receives the same term twice.
    bool admissible() const
    {
        bool rotated = false;
        for (const auto& out : outputs_) {
            for (std::size_t i = 0; i < out.size(); ++i) {
                rotated = rotated || out[i].rotation != 0;
                for (std::size_t j = i + 1; j < out.size(); ++j)
                    if (out[i] == out[j])
                        return false;
            }
        }
        return rotated;
    }

    State apply(const State& s, unsigned w) const
    {
        std::array<std::uint64_t, 3> r{};
        for (int o = 0; o < 3; ++o)
            for (const auto& t : outputs_[o])
                r[o] ^= rotl(s[t.input], t.rotation, w);
        return {r[0], r[1], r[2]};
    }

    // "a+a<1>+b|a+c|b": '|' separates the three outputs, '+' is XOR and
    // <k> is a left rotation by k. "0" or an empty field is the zero output.
    static LinearLayer parse(std::string_view spec)
    {
        std::array<std::vector<Term>, 3> outs;
        std::size_t field = 0;
        std::string token;
        auto flush_term = [&] {
            if (token.empty() || token == "0") {
                token.clear();
                return;
            }
            Term t;
            switch (token[0]) {
            case 'a': t.input = 0; break;
            case 'b': t.input = 1; break;
            case 'c': t.input = 2; break;
            default: throw format_error("layer term must start with a, b or c: '" + token + "'");
            }
            if (token.size() > 1) {
                if (token[1] != '<' || token.back() != '>')
                    throw format_error("bad rotation in layer term '" + token + "'");
                const std::string digits = token.substr(2, token.size() - 3);
                if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                    throw format_error("bad rotation in layer term '" + token + "'");
                t.rotation = static_cast<unsigned>(std::stoul(digits));
                if (t.rotation >= 64)
                    throw format_error("rotation must be below 64");
            }
            outs[field].push_back(t);
            token.clear();
        };
        for (char ch : spec) {
            if (ch == ' ')
                continue;
            if (ch == '+') {
                flush_term();
            } else if (ch == '|') {
                flush_term();
                if (++field > 2)
                    throw format_error("layer needs exactly three outputs");
            } else {
                token += ch;
            }
        }
        flush_term();
        if (field != 2)
            throw format_error("layer needs exactly three outputs separated by '|'");
        return LinearLayer(std::move(outs));
    }

    std::string to_string() const
    {
        std::ostringstream os;
        for (int o = 0; o < 3; ++o) {
            if (o)
                os << '|';
            if (outputs_[o].empty())
                os << '0';
            for (std::size_t i = 0; i < outputs_[o].size(); ++i) {
                if (i)
                    os << '+';
                os << static_cast<char>('a' + outputs_[o][i].input);
                if (outputs_[o][i].rotation)
                    os << '<' << outputs_[o][i].rotation << '>';
            }
        }
        return os.str();
    }

private:
    std::array<std::vector<Term>, 3> outputs_;
};

// L(a,b,c) = (a ^ a<d> ^ b, a ^ c, b).
inline LinearLayer reference_layer(unsigned d)
{
    return LinearLayer({std::vector<Term>{{0, 0}, {0, d}, {1, 0}}, std::vector<Term>{{0, 0}, {2, 0}},
                        std::vector<Term>{{1, 0}}});
}

// (a<11>, a<7> ^ c, b<32>): admissible, but S3 ^ L collides.
inline LinearLayer non_permutation_layer()
{
    return LinearLayer({std::vector<Term>{{0, 11}}, std::vector<Term>{{0, 7}, {2, 0}}, std::vector<Term>{{1, 32}}});
}

inline State modified_s3(const State& s, const LinearLayer& layer, unsigned w)
{
    return s3(s, w) ^ layer.apply(s, w);
}

inline std::uint64_t pack(const State& s, unsigned w) { return (s.a << (2 * w)) | (s.b << w) | s.c; }
inline State unpack(std::uint64_t v, unsigned w)
{
    const std::uint64_t m = width_mask(w);
    return {(v >> (2 * w)) & m, (v >> w) & m, v & m};
}

inline constexpr unsigned max_difference_scan_width = 10;

inline void require_scan_width(unsigned w)
{
    if (w == 0 || w > max_difference_scan_width)
        throw resource_error("difference scan over 2^(3w) values needs w <= "
                             + std::to_string(max_difference_scan_width));
}

// Input difference (w0, w1, w2) and output difference (W0, W1, W2) of S3
// satisfy w0&W0 ^ w1&W1 ^ w2&W2 = w0|w1|w2. Where every bit position carries
// a nonzero difference the right side is all ones. Checks the identity for
// an arbitrary bitwise map: exhaustively over all pairs for w <= 4, and for
// 4 < w <= 8 over all inputs combined with every difference that is
// nonzero in a single bit position or uniform across positions.
template <class Map>
bool differential_identity_holds(unsigned w, Map&& map)
{
    if (w == 0 || w > 8)
        throw resource_error("differential identity check supports widths 1..8");
    const std::uint64_t m = width_mask(w);
    const std::uint64_t states = std::uint64_t{1} << (3 * w);
    auto check = [&](const State& x, const State& d) {
        const State y = map(x, w) ^ map(x ^ d, w);
        const std::uint64_t lhs = (d.a & y.a) ^ (d.b & y.b) ^ (d.c & y.c);
        return lhs == ((d.a | d.b | d.c) & m);
    };
    std::vector<State> diffs;
    if (w <= 4) {
        for (std::uint64_t d = 1; d < states; ++d)
            diffs.push_back(unpack(d, w));
    } else {
        for (unsigned pos = 0; pos < w; ++pos)
            for (unsigned pattern = 1; pattern < 8; ++pattern) {
                const std::uint64_t bit = std::uint64_t{1} << pos;
                diffs.push_back({(pattern & 4U) ? bit : 0, (pattern & 2U) ? bit : 0, (pattern & 1U) ? bit : 0});
                diffs.push_back({(pattern & 4U) ? m : 0, (pattern & 2U) ? m : 0, (pattern & 1U) ? m : 0});
            }
    }
    for (std::uint64_t x = 0; x < states; ++x) {
        const State sx = unpack(x, w);
        for (const auto& d : diffs)
            if (!check(sx, d))
                return false;
    }
    return true;
}

inline bool differential_identity_holds(unsigned w)
{
    return differential_identity_holds(w, [](const State& s, unsigned width) { return s3(s, width); });
}

// No nonzero difference w satisfies w0&L0(w) ^ w1&L1(w) ^ w2&L2(w) = 11..1.
// This is the all-ones form of the criterion. It is not sufficient for
// every layer (see is_permutation_exact), but it holds for
// reference_layer(d) at every d.
inline bool is_permutation_via_criterion(const LinearLayer& layer, unsigned w)
{
    require_scan_width(w);
    const std::uint64_t m = width_mask(w);
    const std::uint64_t states = std::uint64_t{1} << (3 * w);
    for (std::uint64_t v = 1; v < states; ++v) {
        const State d = unpack(v, w);
        const State l = layer.apply(d, w);
        if (((d.a & l.a) ^ (d.b & l.b) ^ (d.c & l.c)) == m)
            return false;
    }
    return true;
}

namespace detail {

// reachable[delta][Delta]: some 3-bit input x has S3(x) ^ S3(x ^ delta) = Delta,
// one bit position of S3 taken in isolation.
inline std::array<std::array<bool, 8>, 8> s3_bit_transitions()
{
    std::array<std::array<bool, 8>, 8> reach{};
    auto f = [](unsigned x) {
        const unsigned a = (x >> 2) & 1U;
        const unsigned b = (x >> 1) & 1U;
        const unsigned c = x & 1U;
        const unsigned y0 = (b | (c ^ 1U)) ^ a;
        const unsigned y1 = (a | c) ^ b;
        const unsigned y2 = (a & b) ^ c;
        return (y0 << 2) | (y1 << 1) | y2;
    };
    for (unsigned x = 0; x < 8; ++x)
        for (unsigned d = 0; d < 8; ++d)
            reach[d][f(x) ^ f(x ^ d)] = true;
    return reach;
}

} // namespace detail

// Exact test: S3 ^ L collides iff some nonzero difference w has L(w)
// reachable as an output difference of S3 from w. S3 acts bit by bit, so
// reachability factors over bit positions.
inline bool is_permutation_exact(const LinearLayer& layer, unsigned w)
{
    require_scan_width(w);
    static const auto reach = detail::s3_bit_transitions();
    const std::uint64_t states = std::uint64_t{1} << (3 * w);
    for (std::uint64_t v = 1; v < states; ++v) {
        const State d = unpack(v, w);
        const State l = layer.apply(d, w);
        bool reachable = true;
        for (unsigned j = 0; j < w && reachable; ++j) {
            const unsigned din = static_cast<unsigned>((((d.a >> j) & 1U) << 2) | (((d.b >> j) & 1U) << 1) | ((d.c >> j) & 1U));
            const unsigned dout = static_cast<unsigned>((((l.a >> j) & 1U) << 2) | (((l.b >> j) & 1U) << 1) | ((l.c >> j) & 1U));
            reachable = reach[din][dout];
        }
        if (reachable)
            return false;
    }
    return true;
}

// Exhaustive image scan; returns two distinct inputs with equal image.
inline std::optional<std::pair<State, State>> find_collision(const LinearLayer& layer, unsigned w)
{
    if (w == 0 || w > 8)
        throw resource_error("exhaustive bijectivity scan supports widths 1..8");
    const std::uint64_t states = std::uint64_t{1} << (3 * w);
    std::vector<std::uint32_t> preimage(states, 0); // stores x + 1
    for (std::uint64_t x = 0; x < states; ++x) {
        const State sx = unpack(x, w);
        const std::uint64_t y = pack(modified_s3(sx, layer, w), w);
        if (preimage[y])
            return std::make_pair(unpack(preimage[y] - 1, w), sx);
        preimage[y] = static_cast<std::uint32_t>(x + 1);
    }
    return std::nullopt;
}

inline bool is_bijective_exhaustive(const LinearLayer& layer, unsigned w) { return !find_collision(layer, w); }

} // namespace cipherkit::bash

#endif
