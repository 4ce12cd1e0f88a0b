#pragma once

#include <utility>
#include <vector>

#include "q2/lattices.hpp"

namespace q2 {

// Gamma(A) as the symmetric tensors of A (x) A, basis b_i(x)b_i (in order)
// then b_i(x)b_j + b_j(x)b_i for i < j lexicographically.
struct GammaLattice {
    BasedLattice source;
    BasedLattice lattice;
    std::vector<std::pair<int, int>> pairs;

    int rank() const { return lattice.rank(); }
    int index(int i, int j) const;  // either order
};

GammaLattice gamma(const BasedLattice& A);

// Z^w (x)_{Z pi} X.  On truncated lattices only relations from safe basis
// vectors are imposed.
AbGroup coinvariants(const BasedLattice& X, const Character& w);
// Columns w(g) g x - x over generators g and (safe) basis vectors x.
IntMatrix coinvariant_relations(const BasedLattice& X, const Character& w);
inline AbGroup coinvariants(const GammaLattice& X, const Character& w) { return coinvariants(X.lattice, w); }

// A (x)_Z B with the diagonal action, basis a_i (x) b_j, i major.
BasedLattice tensor(const BasedLattice& A, const BasedLattice& B);

// Gamma(A) + Gamma(A') + A (x) A'  ->  Gamma(A + A').
struct BauesSplit {
    BasedLattice source, target;
    IntMatrix map;
};
BauesSplit baues_split(const BasedLattice& A, const BasedLattice& Ap);

// Maps between Q = Gamma(Z pi)/Z pi (squares dropped, basis g(x)h + h(x)g
// for g < h in ball order) and Gamma(I pi^v).
struct GammaIdeal {
    BasedLattice quotient;
    GammaLattice gamma_ideal;
    IntMatrix theta;  // Q -> Gamma(I pi^v)
    IntMatrix psi;    // Gamma(I pi^v) -> Q
    // Gamma(I pi^v) + Z pi -> Gamma(Z pi): Gamma of the inclusion, and g |-> g(x)g.
    BasedLattice split_source;
    GammaLattice full;
    IntMatrix split;
};
GammaIdeal gamma_ideal(const Character& v, int L = 1);

}  // namespace q2
