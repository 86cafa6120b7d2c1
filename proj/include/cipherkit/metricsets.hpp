#ifndef CIPHERKIT_METRICSETS_HPP
#define CIPHERKIT_METRICSETS_HPP

// Letter-by-letter encryption over a strongly metrically regular pair
// (A, B): d(x, A) + d(x, B) = ell for every x. Letter k travels as a vector
// at distance k from A. The attack only needs the leaked set C of points
// within distance 1 of A or B: its covering radius r gives ell = 2r + 2,
// and d(v, C) + 1 pins each letter down to {s + 1, ell - s - 1}.
//
// Points of F_2^n are integer indices with x_1 as the most significant bit,
// so integer order is lexicographic order of the 0/1 strings.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cipherkit/error.hpp"
#include "cipherkit/gf2.hpp"

namespace cipherkit::metric {

using PointSet = std::vector<std::uint32_t>;

inline constexpr unsigned max_dim = 20;

inline void check_dim(unsigned n)
{
    if (n > max_dim)
        throw resource_error("metric set operations limited to n <= " + std::to_string(max_dim));
}

inline PointSet normalized(PointSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline PointSet to_points(const std::vector<BitVec>& vs, unsigned n)
{
    PointSet out;
    for (const auto& v : vs) {
        if (v.size() != n)
            throw dimension_error("vector of length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
        out.push_back(static_cast<std::uint32_t>(v.to_uint()));
    }
    return normalized(std::move(out));
}

// One 0/1 vector per line; blank lines and '#' comments ignored.
inline std::vector<BitVec> read_vectors(std::istream& in)
{
    std::vector<BitVec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::string token;
        std::istringstream ls(line);
        if (!(ls >> token))
            continue;
        out.push_back(BitVec::from_string(token));
        if (!out.empty() && out.back().size() != out.front().size())
            throw format_error("vectors of different lengths");
    }
    return out;
}

struct RegularityCheck {
    bool regular = false;
    unsigned ell = 0;                      // valid when regular
    std::optional<std::uint32_t> witness;  // first x whose sum differs from x = 0
};

inline RegularityCheck check_regular(const PointSet& a, const PointSet& b, unsigned n)
{
    check_dim(n);
    const auto da = distance_table(a, n);
    const auto db = distance_table(b, n);
    const unsigned ell = da[0] + db[0];
    for (std::uint32_t x = 1; x < da.size(); ++x)
        if (static_cast<unsigned>(da[x] + db[x]) != ell)
            return {false, 0, x};
    return {true, ell, std::nullopt};
}

struct RegularPair {
    unsigned n = 0;
    PointSet a;
    PointSet b;
    unsigned ell = 0;

    static RegularPair make(unsigned n, PointSet a, PointSet b)
    {
        a = normalized(std::move(a));
        b = normalized(std::move(b));
        const auto chk = check_regular(a, b, n);
        if (!chk.regular)
            throw domain_error("sets are not strongly metrically regular (witness "
                               + BitVec::from_uint(*chk.witness, n).to_string() + ")");
        return {n, std::move(a), std::move(b), chk.ell};
    }
};

struct LevelSets {
    std::vector<PointSet> a; // a[i] = points at distance i from A
    std::vector<PointSet> b;
};

inline LevelSets level_sets(const RegularPair& p)
{
    const auto da = distance_table(p.a, p.n);
    const auto db = distance_table(p.b, p.n);
    LevelSets ls{std::vector<PointSet>(p.ell + 1), std::vector<PointSet>(p.ell + 1)};
    for (std::uint32_t x = 0; x < da.size(); ++x) {
        if (da[x] > p.ell || db[x] > p.ell)
            throw domain_error("pair is not regular with the stored ell");
        ls.a[da[x]].push_back(x);
        ls.b[db[x]].push_back(x);
    }
    return ls;
}

// C = A_0 u A_1 u B_0 u B_1.
inline PointSet leaked_set(const RegularPair& p)
{
    const auto da = distance_table(p.a, p.n);
    const auto db = distance_table(p.b, p.n);
    PointSet c;
    for (std::uint32_t x = 0; x < da.size(); ++x)
        if (da[x] <= 1 || db[x] <= 1)
            c.push_back(x);
    return c;
}

struct EllRecovery {
    unsigned radius = 0;
    unsigned ell = 0;
    PointSet farthest; // equals A_{ell/2}
};

// Assumes ell is even.
inline EllRecovery recover_ell(const PointSet& c, unsigned n)
{
    check_dim(n);
    const auto dc = distance_table(c, n);
    EllRecovery out;
    out.radius = *std::max_element(dc.begin(), dc.end());
    out.ell = 2 * out.radius + 2;
    for (std::uint32_t x = 0; x < dc.size(); ++x)
        if (dc[x] == out.radius)
            out.farthest.push_back(x);
    return out;
}

// {s + 1, ell - (s + 1)} restricted to 1..alphabet. Points of B itself are
// also at distance 0 from C, so s = 0 admits the letter ell as well.
inline std::vector<unsigned> letter_candidates(unsigned s, unsigned ell, unsigned alphabet = 26)
{
    std::vector<unsigned> out;
    const long near = static_cast<long>(s) + 1;
    const long far = static_cast<long>(ell) - near;
    const long top = s == 0 ? static_cast<long>(ell) : far;
    for (long k : {near, far, top})
        if (k >= 1 && k <= static_cast<long>(alphabet) && std::find(out.begin(), out.end(), k) == out.end())
            out.push_back(static_cast<unsigned>(k));
    std::sort(out.begin(), out.end());
    if (out.empty())
        throw domain_error("distance " + std::to_string(s) + " gives no letter in 1.." + std::to_string(alphabet));
    return out;
}

// Everything Eve derives from C, computed once.
class LeakAttack {
public:
    LeakAttack(PointSet c, unsigned n) : n_(n), table_(distance_table(normalized(std::move(c)), n))
    {
        check_dim(n);
        radius_ = *std::max_element(table_.begin(), table_.end());
    }

    unsigned n() const noexcept { return n_; }
    unsigned ell() const noexcept { return 2 * radius_ + 2; }
    unsigned distance(std::uint32_t v) const
    {
        if (v >= table_.size())
            throw dimension_error("vector outside F_2^" + std::to_string(n_));
        return table_[v];
    }

    std::vector<unsigned> decrypt_letter(std::uint32_t v, unsigned alphabet = 26) const
    {
        return letter_candidates(distance(v), ell(), alphabet);
    }
    std::vector<unsigned> decrypt_letter(const BitVec& v, unsigned alphabet = 26) const
    {
        if (v.size() != n_)
            throw dimension_error("intercepted vector has wrong length");
        return decrypt_letter(static_cast<std::uint32_t>(v.to_uint()), alphabet);
    }

private:
    unsigned n_;
    std::vector<std::uint8_t> table_;
    unsigned radius_ = 0;
};

enum class Side { A, B };

// Lexicographically least vector at each distance 0..ell from the chosen set.
inline std::vector<std::uint32_t> make_sender_vectors(const RegularPair& p, Side side)
{
    const auto ls = level_sets(p);
    const auto& levels = side == Side::A ? ls.a : ls.b;
    std::vector<std::uint32_t> out;
    for (unsigned k = 0; k <= p.ell; ++k) {
        if (levels[k].empty())
            throw domain_error("no vector at distance " + std::to_string(k) + "; pair unusable");
        out.push_back(levels[k].front());
    }
    return out;
}

// Letter k (1-based) is sent as the vector at distance k from the sender's set.
inline std::vector<std::uint32_t> encrypt_letters(const std::vector<unsigned>& letters,
                                                  const std::vector<std::uint32_t>& sender_vectors)
{
    std::vector<std::uint32_t> out;
    for (auto k : letters) {
        if (k >= sender_vectors.size())
            throw domain_error("letter " + std::to_string(k) + " exceeds ell");
        out.push_back(sender_vectors[k]);
    }
    return out;
}

// Bob: k = ell - d(v, B).
inline unsigned receive_letter(const RegularPair& p, const std::vector<std::uint8_t>& dist_b, std::uint32_t v)
{
    return p.ell - dist_b.at(v);
}

// Constructions of regular pairs.

inline RegularPair singleton_complement(unsigned n, std::uint32_t v = 0)
{
    const std::uint32_t mask = n == 32 ? 0xFFFFFFFFU : (std::uint32_t{1} << n) - 1;
    return RegularPair::make(n, {v & mask}, {~v & mask});
}

// Even- and odd-weight vectors: every x is within distance 1 of both, ell = 1.
inline RegularPair parity_pair(unsigned n)
{
    check_dim(n);
    PointSet even, odd;
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x)
        (std::popcount(x) % 2 ? odd : even).push_back(x);
    return RegularPair::make(n, even, odd);
}

// A x F_2^k, B x F_2^k: the extra coordinates never matter.
inline RegularPair with_free_coordinates(const RegularPair& p, unsigned k)
{
    check_dim(p.n + k);
    auto lift = [&](const PointSet& s) {
        PointSet out;
        for (auto x : s)
            for (std::uint32_t y = 0; y < (std::uint32_t{1} << k); ++y)
                out.push_back((x << k) | y);
        return out;
    };
    return RegularPair::make(p.n + k, lift(p.a), lift(p.b));
}

// (A1 x A2, B1 x B2) with ell = ell1 + ell2.
inline RegularPair product(const RegularPair& p, const RegularPair& q)
{
    check_dim(p.n + q.n);
    auto cross = [&](const PointSet& s, const PointSet& t) {
        PointSet out;
        for (auto x : s)
            for (auto y : t)
                out.push_back((x << q.n) | y);
        return out;
    };
    return RegularPair::make(p.n + q.n, cross(p.a, q.a), cross(p.b, q.b));
}

// Image under x -> pi(x) ^ u, an isometry of the Hamming space.
template <class Rng>
RegularPair random_isometry(const RegularPair& p, Rng& rng)
{
    std::vector<unsigned> perm(p.n);
    for (unsigned i = 0; i < p.n; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::uint32_t mask = (std::uint32_t{1} << p.n) - 1;
    const auto u = static_cast<std::uint32_t>(rng()) & mask;
    auto map = [&](const PointSet& s) {
        PointSet out;
        for (auto x : s) {
            std::uint32_t y = 0;
            for (unsigned i = 0; i < p.n; ++i)
                if ((x >> i) & 1U)
                    y |= std::uint32_t{1} << perm[i];
            out.push_back(y ^ u);
        }
        return out;
    };
    return RegularPair::make(p.n, map(p.a), map(p.b));
}

// Letter frequencies of English text, A..Z, in percent.
inline constexpr std::array<double, 26> english_frequency = {
    8.17, 1.49, 2.78, 4.25, 12.70, 2.23, 2.02, 6.09, 6.97, 0.15, 0.77, 4.03, 2.41,
    6.75, 7.51, 1.93, 0.10, 5.99, 6.33, 9.06, 2.76, 0.98, 2.36, 0.15, 1.97, 0.07};

struct Reading {
    std::string text;
    double score = 0; // log-likelihood under unigram frequencies
};

// Every combination of per-position candidates, best-scoring first. Letters
// beyond Z (alphabets larger than 26) score as the rarest letter.
inline std::vector<Reading> rank_readings(const std::vector<std::vector<unsigned>>& candidates,
                                          std::size_t max_readings = std::size_t{1} << 16)
{
    std::size_t total = 1;
    for (const auto& c : candidates) {
        if (c.empty())
            throw domain_error("empty candidate set");
        if (total > max_readings / c.size())
            throw resource_error("more than " + std::to_string(max_readings) + " readings");
        total *= c.size();
    }
    auto letter_score = [](unsigned k) {
        return std::log(k >= 1 && k <= 26 ? english_frequency[k - 1] : 0.07);
    };
    std::vector<Reading> out;
    out.reserve(total);
    std::vector<std::size_t> idx(candidates.size(), 0);
    for (std::size_t r = 0; r < total; ++r) {
        Reading rd;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const unsigned k = candidates[i][idx[i]];
            rd.text += k >= 1 && k <= 26 ? static_cast<char>('A' + k - 1) : '?';
            rd.score += letter_score(k);
        }
        out.push_back(std::move(rd));
        for (std::size_t i = candidates.size(); i-- > 0;) {
            if (++idx[i] < candidates[i].size())
                break;
            idx[i] = 0;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Reading& x, const Reading& y) { return x.score > y.score; });
    return out;
}

} // namespace cipherkit::metric

#endif
