#ifndef CIPHERKIT_CLASSICAL_HPP
#define CIPHERKIT_CLASSICAL_HPP

// Vigenere cipher and a three-rotor Enigma without plugboard, together with
// the known-source attack that exploits repeated letters at the input of
// the fixed middle/left/reflector composite.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "cipherkit/error.hpp"

namespace cipherkit {

inline constexpr int alphabet_size = 26;

inline int letter_index(char c)
{
    if (c < 'A' || c > 'Z')
        throw format_error(std::string("expected an upper-case letter, got '") + c + "'");
    return c - 'A';
}

inline char letter_at(int i) { return static_cast<char>('A' + ((i % alphabet_size) + alphabet_size) % alphabet_size); }

// Keeps letters only and upper-cases them.
inline std::string normalize_letters(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalpha(u) && u < 0x80)
            out += static_cast<char>(std::toupper(u));
    }
    return out;
}

inline void require_letters(std::string_view text)
{
    for (char c : text)
        letter_index(c);
}

class VigenereKey {
public:
    explicit VigenereKey(std::string letters) : letters_(std::move(letters))
    {
        if (letters_.empty())
            throw format_error("Vigenere key must not be empty");
        require_letters(letters_);
    }
    const std::string& letters() const noexcept { return letters_; }
    int shift(std::size_t i) const { return letters_[i % letters_.size()] - 'A'; }

private:
    std::string letters_;
};

inline std::string vigenere_encrypt(const VigenereKey& key, std::string_view plaintext)
{
    require_letters(plaintext);
    std::string out(plaintext.size(), 'A');
    for (std::size_t i = 0; i < plaintext.size(); ++i)
        out[i] = letter_at(letter_index(plaintext[i]) + key.shift(i));
    return out;
}

inline std::string vigenere_decrypt(const VigenereKey& key, std::string_view ciphertext)
{
    require_letters(ciphertext);
    std::string out(ciphertext.size(), 'A');
    for (std::size_t i = 0; i < ciphertext.size(); ++i)
        out[i] = letter_at(letter_index(ciphertext[i]) - key.shift(i));
    return out;
}

using Permutation26 = std::array<std::uint8_t, alphabet_size>;

inline Permutation26 parse_permutation(std::string_view letters)
{
    const std::string clean = normalize_letters(letters);
    if (clean.size() != alphabet_size)
        throw format_error("a wiring needs exactly 26 letters, got " + std::to_string(clean.size()));
    Permutation26 p{};
    std::array<bool, alphabet_size> seen{};
    for (int i = 0; i < alphabet_size; ++i) {
        const int v = clean[i] - 'A';
        if (seen[v])
            throw format_error("wiring repeats letter " + std::string(1, clean[i]));
        seen[v] = true;
        p[i] = static_cast<std::uint8_t>(v);
    }
    return p;
}

inline std::string permutation_string(const Permutation26& p)
{
    std::string s(alphabet_size, 'A');
    for (int i = 0; i < alphabet_size; ++i)
        s[i] = letter_at(p[i]);
    return s;
}

inline Permutation26 invert(const Permutation26& p)
{
    Permutation26 inv{};
    for (int i = 0; i < alphabet_size; ++i)
        inv[p[i]] = static_cast<std::uint8_t>(i);
    return inv;
}

// A rotor at position p maps x to wiring[(x + p) mod 26] on the way in,
// i.e. the wiring composed with a rotation of the alphabet by p.
class Rotor {
public:
    Rotor() : Rotor(identity_wiring()) {}
    explicit Rotor(const Permutation26& wiring) : wiring_(wiring), inverse_(invert(wiring)) {}
    explicit Rotor(std::string_view letters) : Rotor(parse_permutation(letters)) {}

    int forward(int x, int position) const { return wiring_[mod26(x + position)]; }
    int backward(int y, int position) const { return mod26(inverse_[y] - position); }

    const Permutation26& wiring() const noexcept { return wiring_; }
    std::string to_string() const { return permutation_string(wiring_); }

    static Permutation26 identity_wiring()
    {
        Permutation26 p{};
        for (int i = 0; i < alphabet_size; ++i)
            p[i] = static_cast<std::uint8_t>(i);
        return p;
    }

    static int mod26(int v) { return ((v % alphabet_size) + alphabet_size) % alphabet_size; }

private:
    Permutation26 wiring_;
    Permutation26 inverse_;
};

class Reflector {
public:
    explicit Reflector(const Permutation26& pairing) : pairing_(pairing)
    {
        for (int x = 0; x < alphabet_size; ++x) {
            if (pairing_[x] == x)
                throw format_error("reflector maps " + std::string(1, letter_at(x)) + " to itself");
            if (pairing_[pairing_[x]] != x)
                throw format_error("reflector wiring is not an involution");
        }
    }
    explicit Reflector(std::string_view letters) : Reflector(parse_permutation(letters)) {}

    int reflect(int x) const { return pairing_[x]; }
    std::string to_string() const { return permutation_string(pairing_); }

private:
    Permutation26 pairing_;
};

struct Odometer {
    int left = 0;
    int middle = 0;
    int right = 0;

    // Right steps every letter, middle every 26, left every 676.
    void step()
    {
        right = (right + 1) % alphabet_size;
        if (right == 0) {
            middle = (middle + 1) % alphabet_size;
            if (middle == 0)
                left = (left + 1) % alphabet_size;
        }
    }

    static Odometer after(std::uint64_t letters)
    {
        return {static_cast<int>((letters / 676) % 26), static_cast<int>((letters / 26) % 26),
                static_cast<int>(letters % 26)};
    }

    friend bool operator==(const Odometer&, const Odometer&) = default;
};

// Stateful: each encrypted letter advances the odometer. A letter is
// processed at the current positions, then the rotors step, so the k-th
// letter of a message (counting from 0) sees Odometer::after(k).
class EnigmaMachine {
public:
    EnigmaMachine(Rotor left, Rotor middle, Rotor right, Reflector reflector, Odometer start = {})
        : left_(left), middle_(middle), right_(right), reflector_(reflector), odometer_(start)
    {
    }

    // Letter map at a given odometer setting; no stepping.
    int map_letter(int x, const Odometer& at) const
    {
        int y = right_.forward(x, at.right);
        y = middle_.forward(y, at.middle);
        y = left_.forward(y, at.left);
        y = reflector_.reflect(y);
        y = left_.backward(y, at.left);
        y = middle_.backward(y, at.middle);
        return right_.backward(y, at.right);
    }

    char encrypt_letter(char c)
    {
        const char out = letter_at(map_letter(letter_index(c), odometer_));
        odometer_.step();
        return out;
    }

    std::string encrypt(std::string_view plaintext)
    {
        require_letters(plaintext);
        std::string out;
        out.reserve(plaintext.size());
        for (char c : plaintext)
            out += encrypt_letter(c);
        return out;
    }

    const Odometer& odometer() const noexcept { return odometer_; }
    void set_odometer(const Odometer& o) { odometer_ = o; }
    const Rotor& right() const noexcept { return right_; }

private:
    Rotor left_;
    Rotor middle_;
    Rotor right_;
    Reflector reflector_;
    Odometer odometer_;
};

// Undoes the right rotor on a block of at most 26 ciphertext letters: the
// k-th letter is pushed through the rotor wiring at position start + k,
// which yields the letter that left the middle/left/reflector composite.
inline std::string invert_right_rotor(const Rotor& right, std::string_view block, int start_position = 0)
{
    if (block.size() > static_cast<std::size_t>(alphabet_size))
        throw domain_error("block longer than one rotor revolution");
    std::string out(block.size(), 'A');
    for (std::size_t k = 0; k < block.size(); ++k)
        out[k] = letter_at(right.forward(letter_index(block[k]), start_position + static_cast<int>(k)));
    return out;
}

// Within one block, equal composite outputs at offsets i < j force the
// plaintext letters to satisfy p_i - p_j = distance (mod 26).
struct RepeatConstraint {
    std::size_t i = 0;
    std::size_t j = 0;
    int distance = 0;

    friend bool operator==(const RepeatConstraint&, const RepeatConstraint&) = default;
};

inline std::vector<RepeatConstraint> repeat_constraints(std::string_view inverted_block)
{
    std::vector<RepeatConstraint> out;
    for (std::size_t i = 0; i < inverted_block.size(); ++i)
        for (std::size_t j = i + 1; j < inverted_block.size(); ++j)
            if (inverted_block[i] == inverted_block[j])
                out.push_back({i, j, static_cast<int>(j - i) % alphabet_size});
    return out;
}

// Splits a ciphertext (starting at right-rotor position 0) into 26-letter
// blocks and collects the repeat constraints of each block.
inline std::vector<std::vector<RepeatConstraint>> block_constraints(const Rotor& right, std::string_view ciphertext)
{
    std::vector<std::vector<RepeatConstraint>> out;
    for (std::size_t start = 0; start < ciphertext.size(); start += alphabet_size) {
        const auto block = ciphertext.substr(start, alphabet_size);
        out.push_back(repeat_constraints(invert_right_rotor(right, block, 0)));
    }
    return out;
}

struct AttackOptions {
    // Fraction of repeat constraints an offset must satisfy. 1.0 keeps only
    // offsets consistent with every constraint, which is right when the
    // right rotor is known exactly; a perturbed rotor produces spurious
    // repeats and needs a lower threshold.
    double min_satisfied_fraction = 1.0;
};

struct AttackCandidate {
    std::size_t offset = 0;
    std::size_t satisfied = 0;
    std::size_t total = 0;
};

// Slides the ciphertext over the normalized corpus. Offsets survive when
// no plaintext letter equals its ciphertext letter and enough repeat
// constraints hold. Survivors are ranked by satisfied constraints.
inline std::vector<AttackCandidate> corpus_attack(std::string_view ciphertext, std::string_view corpus,
                                                  const std::vector<std::vector<RepeatConstraint>>& constraints,
                                                  const AttackOptions& options = {})
{
    require_letters(ciphertext);
    require_letters(corpus);
    if (corpus.size() < ciphertext.size())
        throw domain_error("corpus shorter than ciphertext");
    std::size_t total = 0;
    for (const auto& block : constraints)
        total += block.size();
    const auto needed = static_cast<std::size_t>(std::ceil(options.min_satisfied_fraction * static_cast<double>(total) - 1e-9));

    std::vector<AttackCandidate> out;
    const std::size_t len = ciphertext.size();
    for (std::size_t offset = 0; offset + len <= corpus.size(); ++offset) {
        const char* pt = corpus.data() + offset;
        bool fixed_point = false;
        for (std::size_t k = 0; k < len && !fixed_point; ++k)
            fixed_point = pt[k] == ciphertext[k];
        if (fixed_point)
            continue;
        std::size_t satisfied = 0;
        std::size_t failed = 0;
        for (std::size_t b = 0; b < constraints.size() && total - failed >= needed; ++b) {
            const std::size_t base = b * alphabet_size;
            for (const auto& c : constraints[b]) {
                if (base + c.j >= len) {
                    ++failed;
                    continue;
                }
                const int diff = Rotor::mod26((pt[base + c.i] - 'A') - (pt[base + c.j] - 'A'));
                if (diff == Rotor::mod26(c.distance))
                    ++satisfied;
                else
                    ++failed;
            }
        }
        if (total - failed >= needed && satisfied >= needed)
            out.push_back({offset, satisfied, total});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const AttackCandidate& a, const AttackCandidate& b) { return a.satisfied > b.satisfied; });
    return out;
}

} // namespace cipherkit

#endif
