// Finds a fresh FNV-1a collision of the requested length and prints it.
//   demo_fnv_collision [length] [seed]

#include <cstdlib>
#include <iostream>
#include <random>

#include "cipherkit/fnv.hpp"

using namespace cipherkit::fnv;

int main(int argc, char** argv)
{
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 18;
    std::mt19937_64 rng(argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1);
    try {
        const auto c = find_collision(n, rng);
        std::cout << "relation (t = " << c.t << "):";
        for (int a : c.relation.a)
            std::cout << ' ' << a;
        std::cout << "\nsplitting probability ~ " << splitting_probability(c.relation).approx() << '\n';
        std::cout << to_hex(c.first) << '\n' << to_hex(c.second) << '\n';
        std::cout << "fnv1a = " << to_hex(c.digest) << '\n';
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
