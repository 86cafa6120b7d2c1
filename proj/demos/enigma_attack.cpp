// Encrypts a random stretch of a corpus with a random machine, then finds
// it again knowing only the right rotor.
//   demo_enigma_attack corpus.txt [length] [seed]

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cipherkit/classical.hpp"

using namespace cipherkit;

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: demo_enigma_attack corpus.txt [length] [seed]\n";
        return 2;
    }
    std::ifstream in(argv[1]);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto corpus = normalize_letters(ss.str());
    const std::size_t len = argc > 2 ? std::stoul(argv[2]) : 351;
    if (corpus.size() < len) {
        std::cerr << "corpus shorter than " << len << " letters\n";
        return 2;
    }
    std::mt19937_64 rng(argc > 3 ? std::stoull(argv[3]) : 1);

    auto wiring = [&] {
        auto p = Rotor::identity_wiring();
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    auto order = wiring();
    Permutation26 refl{};
    for (int i = 0; i < alphabet_size; i += 2) {
        refl[order[i]] = order[i + 1];
        refl[order[i + 1]] = order[i];
    }
    EnigmaMachine m{Rotor{wiring()}, Rotor{wiring()}, Rotor{wiring()}, Reflector{refl}};

    const std::size_t offset = rng() % (corpus.size() - len + 1);
    const auto ct = m.encrypt(std::string_view(corpus).substr(offset, len));
    std::cout << "hidden offset " << offset << "\n" << ct.substr(0, 60) << "...\n";

    const auto found = corpus_attack(ct, corpus, block_constraints(m.right(), ct));
    std::cout << found.size() << " candidate(s)\n";
    for (std::size_t i = 0; i < found.size() && i < 5; ++i)
        std::cout << "  " << found[i].offset << "  " << found[i].satisfied << '/' << found[i].total << "  "
                  << corpus.substr(found[i].offset, 40) << '\n';
    return !found.empty() && found.front().offset == offset ? 0 : 1;
}
