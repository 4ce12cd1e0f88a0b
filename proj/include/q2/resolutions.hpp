#pragma once

#include <vector>

#include "q2/exactla.hpp"
#include "q2/groupring.hpp"

namespace q2 {

// Finite chain complex of free ZG-modules, row-vector convention:
// d[k-1] is d_k : C_k -> C_{k-1}, a ranks[k] x ranks[k-1] matrix.
struct ZPiChain {
    GroupPtr G;
    std::vector<int> ranks;
    std::vector<RingMatrix> d;

    int top() const { return static_cast<int>(ranks.size()) - 1; }
    // Shapes, and d_{k+1} d_k = 0 checked with ring_mul.
    void validate() const;
};

struct Resolution : ZPiChain {};

Resolution std_resolution(GroupPtr G, int N = 5);

// Sub-free-product on the listed factors, generator names preserved.
GroupPtr sub_group(const GroupSpec& G, const std::vector<int>& factors);
Character restrict_character(const Character& v, const std::vector<int>& factors);
// Ring element of a factor group pushed into G along factor index f.
RingElt push_forward(const RingElt& x, GroupPtr G, const std::vector<int>& factor_map);

// Letters of a free word: (generator index, exponent).
using FreeWord = std::vector<std::pair<int, long>>;
FreeWord parse_free_word(const std::string& text, const GroupSpec& G);
RingElt fox_derivative(const FreeWord& w, int gen, GroupPtr G);

struct FoxComplex {
    GroupPtr G;
    std::vector<FreeWord> relators;
    RingMatrix d1;  // generators x 1, entries g - 1
    RingMatrix d2;  // relators x generators, Fox Jacobian
};

FoxComplex fox_complex(GroupPtr G, const std::vector<FreeWord>& relators);

// Entrywise twisted augmentation; result in column convention.
IntComplex reduce(const ZPiChain& C, const Character& v);

// Finite G: the complex of underlying abelian groups.  Basis of C_k is
// (i, g) -> i * |G| + index(g), g running over elements(G).
struct Expanded {
    IntComplex C;
    std::vector<Word> elems;
    std::vector<IntMatrix> act;  // generator action on each C_k (column convention), if G != 1
};
IntMatrix right_mult(const RingElt& x, const std::vector<Word>& elems);  // g |-> g x
IntMatrix left_mult(const RingElt& x, const std::vector<Word>& elems);   // g |-> x g
Expanded expand(const ZPiChain& C);

AbGroup homology_twisted(GroupPtr G, const Character& v, int k, int N = 5);
AbGroup tor1_aug_ideal(GroupPtr G, const Character& vbar, const std::vector<int>& gamma_prime);
int betti_f2(GroupPtr G, int k);

}  // namespace q2
