#ifndef CIPHERKIT_QCIRCUIT_HPP
#define CIPHERKIT_QCIRCUIT_HPP

// Classical simulation of X / CNOT / CCNOT circuits on basis states,
// algebraic normal forms of the resulting vectorial function, and key
// recovery for the 16-bit toy cipher C = K ^ (F(p1..p4), ..., F(p13..p16)).
//
// Wire i carries x_i; wire 1 is the top line of a diagram. Monomials are
// bit masks with bit i-1 standing for x_i (mask 0 is the constant 1).

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cipherkit/elementary.hpp"
#include "cipherkit/error.hpp"
#include "cipherkit/gf2.hpp"

namespace cipherkit {

class circuit_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Gate {
    enum class Kind { X, CNOT, CCNOT };

    Kind kind = Kind::X;
    std::vector<unsigned> controls; // 1-based
    unsigned target = 1;           // 1-based

    static Gate x(unsigned t) { return {Kind::X, {}, t}; }
    static Gate cnot(unsigned c, unsigned t) { return {Kind::CNOT, {c}, t}; }
    static Gate ccnot(unsigned c1, unsigned c2, unsigned t) { return {Kind::CCNOT, {c1, c2}, t}; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
    unsigned wires = 4;
    std::vector<Gate> gates;

    void validate() const
    {
        for (std::size_t g = 0; g < gates.size(); ++g) {
            const auto& gate = gates[g];
            const std::size_t expected = gate.kind == Gate::Kind::X ? 0 : gate.kind == Gate::Kind::CNOT ? 1 : 2;
            if (gate.controls.size() != expected)
                throw circuit_error("gate " + std::to_string(g + 1) + ": wrong number of controls");
            auto check = [&](unsigned w) {
                if (w < 1 || w > wires)
                    throw circuit_error("gate " + std::to_string(g + 1) + ": wire " + std::to_string(w)
                                        + " outside 1.." + std::to_string(wires));
            };
            check(gate.target);
            for (auto c : gate.controls) {
                check(c);
                if (c == gate.target)
                    throw circuit_error("gate " + std::to_string(g + 1) + ": control equals target");
            }
            if (expected == 2 && gate.controls[0] == gate.controls[1])
                throw circuit_error("gate " + std::to_string(g + 1) + ": repeated control");
        }
    }

    // Same gates in reverse order. Every gate is an involution, so this is
    // the inverse circuit.
    Circuit reversed() const { return {wires, {gates.rbegin(), gates.rend()}}; }

    // One gate per line: "X w", "CNOT c t", "CCNOT c1 c2 t". '#' starts a
    // comment. An optional "WIRES n" line sets the width (default 4).
    static Circuit parse(std::istream& in)
    {
        Circuit c;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream ls(line);
            std::string op;
            if (!(ls >> op))
                continue;
            std::vector<unsigned> args;
            long v = 0;
            while (ls >> v) {
                if (v < 1)
                    throw circuit_error("line " + std::to_string(lineno) + ": wire indices are 1-based");
                args.push_back(static_cast<unsigned>(v));
            }
            if (!ls.eof())
                throw circuit_error("line " + std::to_string(lineno) + ": bad argument");
            auto need = [&](std::size_t k) {
                if (args.size() != k)
                    throw circuit_error("line " + std::to_string(lineno) + ": " + op + " takes "
                                        + std::to_string(k) + " wire(s)");
            };
            if (op == "WIRES") {
                need(1);
                c.wires = args[0];
            } else if (op == "X") {
                need(1);
                c.gates.push_back(Gate::x(args[0]));
            } else if (op == "CNOT") {
                need(2);
                c.gates.push_back(Gate::cnot(args[0], args[1]));
            } else if (op == "CCNOT") {
                need(3);
                c.gates.push_back(Gate::ccnot(args[0], args[1], args[2]));
            } else {
                throw circuit_error("line " + std::to_string(lineno) + ": unknown gate '" + op + "'");
            }
        }
        c.validate();
        return c;
    }
    static Circuit parse(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        return parse(in);
    }

    std::string to_string() const
    {
        std::ostringstream os;
        if (wires != 4)
            os << "WIRES " << wires << '\n';
        for (const auto& g : gates) {
            switch (g.kind) {
            case Gate::Kind::X: os << "X " << g.target; break;
            case Gate::Kind::CNOT: os << "CNOT " << g.controls[0] << ' ' << g.target; break;
            case Gate::Kind::CCNOT:
                os << "CCNOT " << g.controls[0] << ' ' << g.controls[1] << ' ' << g.target;
                break;
            }
            os << '\n';
        }
        return os.str();
    }
};

// Runs on a packed state where wire i is bit (wires - i), i.e. x_1 is the
// most significant bit, matching BitVec::to_uint.
inline std::uint32_t run_circuit_packed(const Circuit& c, std::uint32_t state)
{
    auto bit = [&](unsigned w) { return (state >> (c.wires - w)) & 1U; };
    for (const auto& g : c.gates) {
        bool flip = true;
        for (auto ctl : g.controls)
            flip = flip && bit(ctl);
        if (flip)
            state ^= 1U << (c.wires - g.target);
    }
    return state;
}

inline BitVec run_circuit(const Circuit& c, const BitVec& x)
{
    if (x.size() != c.wires)
        throw dimension_error("input has " + std::to_string(x.size()) + " bits, circuit has "
                              + std::to_string(c.wires) + " wires");
    c.validate();
    BitVec state = x;
    for (const auto& g : c.gates) {
        bool flip = true;
        for (auto ctl : g.controls)
            flip = flip && state[ctl - 1];
        if (flip)
            state.flip(g.target - 1);
    }
    return state;
}

inline SboxTable truth_table(const Circuit& c)
{
    if (c.wires > 20)
        throw resource_error("truth table limited to 20 wires");
    c.validate();
    SboxTable t{c.wires, std::vector<std::uint32_t>(std::size_t{1} << c.wires)};
    for (std::uint32_t x = 0; x < t.table.size(); ++x)
        t.table[x] = run_circuit_packed(c, x);
    return t;
}

using Monomial = std::uint32_t;
using Anf = std::set<Monomial>;

inline std::string anf_to_string(const Anf& f)
{
    if (f.empty())
        return "0";
    // Order by degree, then by variable indices, so x1 + x2x3 reads naturally.
    std::vector<Monomial> terms(f.begin(), f.end());
    std::sort(terms.begin(), terms.end(), [](Monomial a, Monomial b) {
        const int da = std::popcount(a);
        const int db = std::popcount(b);
        if (da != db)
            return (da == 0) ? false : (db == 0) ? true : da < db;
        for (unsigned i = 0; i < 32; ++i) {
            const bool ba = (a >> i) & 1U;
            const bool bb = (b >> i) & 1U;
            if (ba != bb)
                return ba;
        }
        return false;
    });
    std::string out;
    for (auto m : terms) {
        if (!out.empty())
            out += " + ";
        if (m == 0) {
            out += "1";
            continue;
        }
        for (unsigned i = 0; i < 32; ++i)
            if ((m >> i) & 1U)
                out += "x" + std::to_string(i + 1);
    }
    return out;
}

// Parses "x1 + x2x3 + 1" (also accepts '^' as the separator).
inline Anf parse_anf(std::string_view text)
{
    Anf f;
    std::string term;
    auto flush = [&] {
        if (term.empty())
            return;
        Monomial m = 0;
        if (term == "1") {
            m = 0;
        } else if (term == "0") {
            term.clear();
            return;
        } else {
            std::size_t i = 0;
            while (i < term.size()) {
                if (term[i] != 'x')
                    throw format_error("bad ANF term '" + term + "'");
                std::size_t j = i + 1;
                unsigned idx = 0;
                while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j])))
                    idx = idx * 10 + static_cast<unsigned>(term[j++] - '0');
                if (j == i + 1 || idx == 0 || idx > 32)
                    throw format_error("bad ANF term '" + term + "'");
                m |= Monomial{1} << (idx - 1);
                i = j;
            }
        }
        if (!f.insert(m).second)
            f.erase(m);
        term.clear();
    };
    for (char ch : text) {
        if (ch == '+' || ch == '^')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(ch)))
            term += ch;
    }
    flush();
    return f;
}

// Moebius transform of every output coordinate. Result[j] is f_{j+1}.
inline std::vector<Anf> anf(const SboxTable& t)
{
    t.validate();
    const unsigned n = t.bits;
    const std::size_t size = t.table.size();
    std::vector<Anf> out(n);
    std::vector<std::uint8_t> coeff(size);
    for (unsigned j = 0; j < n; ++j) {
        const unsigned shift = n - 1 - j;
        for (std::size_t x = 0; x < size; ++x)
            coeff[x] = (t.table[x] >> shift) & 1U;
        for (std::size_t step = 1; step < size; step <<= 1)
            for (std::size_t x = 0; x < size; ++x)
                if (x & step)
                    coeff[x] ^= coeff[x ^ step];
        for (std::size_t x = 0; x < size; ++x) {
            if (!coeff[x])
                continue;
            // Input index bit (n-1-i) is x_{i+1}.
            Monomial m = 0;
            for (unsigned i = 0; i < n; ++i)
                if ((x >> (n - 1 - i)) & 1U)
                    m |= Monomial{1} << i;
            out[j].insert(m);
        }
    }
    return out;
}

inline bool anf_evaluate(const Anf& f, const BitVec& x)
{
    bool value = false;
    for (auto m : f) {
        bool term = true;
        for (unsigned i = 0; i < 32 && term; ++i)
            if ((m >> i) & 1U)
                term = i < x.size() && x[i];
        value ^= term;
    }
    return value;
}

// Tabulates the vectorial function whose coordinates are the given ANFs.
inline SboxTable anf_table(const std::vector<Anf>& coords, unsigned inputs)
{
    SboxTable t{inputs, std::vector<std::uint32_t>(std::size_t{1} << inputs)};
    for (std::uint32_t x = 0; x < t.table.size(); ++x) {
        const auto v = BitVec::from_uint(x, inputs);
        std::uint32_t y = 0;
        for (const auto& f : coords)
            y = (y << 1) | static_cast<std::uint32_t>(anf_evaluate(f, v));
        t.table[x] = y;
    }
    return t;
}

// K = C ^ (F(P1..4), F(P5..8), F(P9..12), F(P13..16)).
inline BitVec recover_key(const SboxTable& f, const BitVec& plaintext, const BitVec& ciphertext)
{
    if (f.bits != 4)
        throw dimension_error("block function must act on 4 bits");
    if (plaintext.size() != 16 || ciphertext.size() != 16)
        throw dimension_error("plaintext and ciphertext must be 16 bits");
    BitVec key(16);
    for (std::size_t block = 0; block < 4; ++block) {
        const auto nibble = static_cast<std::uint32_t>(plaintext.slice(4 * block, 4).to_uint());
        const auto image = BitVec::from_uint(f(nibble), 4);
        for (std::size_t i = 0; i < 4; ++i)
            key.set(4 * block + i, ciphertext[4 * block + i] != image[i]);
    }
    return key;
}

inline BitVec toy_encrypt(const SboxTable& f, const BitVec& key, const BitVec& plaintext)
{
    // Encryption and key recovery are the same XOR with the F-image.
    return recover_key(f, plaintext, key);
}

} // namespace cipherkit

#endif
