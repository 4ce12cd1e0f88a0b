#pragma once

#include <random>

#include "q2/lattices.hpp"

namespace q2::testing {

inline IntMatrix random_unimodular(int n, std::mt19937& rng) {
    IntMatrix P = IntMatrix::identity(n);
    if (n < 2) return P;
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
    for (int s = 0; s < 3 * n; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IntMatrix E = IntMatrix::identity(n);
        E(i, j) = coef(rng);
        P = P * E;
    }
    return P;
}

// Random lattice of rank in [1, max_rank] over the cyclic group G: a sum of
// trivial, sign, augmentation-ideal and regular pieces, conjugated by a
// random unimodular matrix.
inline BasedLattice random_cyclic_lattice(GroupPtr G, int max_rank, std::mt19937& rng) {
    int n = G->factors.at(0).n;
    auto triv = Character::trivial(G);
    std::vector<BasedLattice> pieces{sign_module(triv), aug_ideal(triv), regular(G)};
    if (n % 2 == 0) {
        auto sg = Character(G, {-1});
        pieces.push_back(sign_module(sg));
        pieces.push_back(aug_ideal(sg));
    }
    std::uniform_int_distribution<size_t> pick(0, pieces.size() - 1);
    BasedLattice A;
    bool have = false;
    for (int tries = 0; tries < 20; ++tries) {
        const auto& p = pieces[pick(rng)];
        int r = (have ? A.rank() : 0) + p.rank();
        if (r > max_rank) continue;
        A = have ? direct_sum(A, p) : p;
        have = true;
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) break;
    }
    if (!have) A = pieces[0];
    IntMatrix P = random_unimodular(A.rank(), rng), Pi = unimodular_inverse(P);
    std::vector<IntMatrix> act;
    for (const auto& m : A.action) act.push_back(P * m * Pi);
    return make_lattice(G, act);
}

}  // namespace q2::testing
