#pragma once

#include <string>
#include <vector>

#include "q2/exactla.hpp"
#include "q2/groupring.hpp"

namespace q2 {

// A ZG-module that is free abelian on an enumerated basis.  action[g] is the
// matrix of generator g on coordinate columns: entry (i, j) is the
// coefficient of b_i in g b_j.  On truncated lattices, components leaving
// the ball are dropped, and safe[j] says whether b_j and all generator
// images of it are exact.
struct BasedLattice {
    GroupPtr G;
    std::vector<std::string> labels;
    std::vector<IntMatrix> action;
    bool truncated = false;
    int L = 0;
    std::vector<bool> safe;

    int rank() const { return static_cast<int>(labels.size()); }
    int safe_radius() const { return truncated ? L - 1 : -1; }  // -1: exact
    // Matrix of an arbitrary group element (product of generator matrices).
    IntMatrix element_action(const Word& g) const;
    // Relations and invertibility; exact or restricted to safe columns.
    void validate() const;
};

// Words of syllable length <= L whose Z-exponents are bounded by L, in
// short-lex order; all of G when G is finite.
std::vector<Word> ball(const GroupSpec& G, int L);
bool in_ball(const Word& w, const GroupSpec& G, int L);

BasedLattice regular(GroupPtr G, int L = 1);
BasedLattice sign_module(const Character& v);  // Z^v
BasedLattice aug_ideal(const Character& v, int L = 1);  // basis v(g)g - 1, g != 1
BasedLattice direct_sum(const BasedLattice& A, const BasedLattice& B);
// Lattice from explicit generator matrices over G.
BasedLattice make_lattice(GroupPtr G, std::vector<IntMatrix> action, std::vector<std::string> labels = {});

// A is a lattice over the sub-free-product of pi on `factors`.  Basis:
// pairs (c, b_i) with c a coset representative (no trailing syllable in
// `factors`) of syllable length <= L - 1.
BasedLattice induce(const BasedLattice& A, GroupPtr pi, const std::vector<int>& factors, int L);

// Iso of the free-product splitting: sum over factors f of
// Ind I(G_f)^v -> I(pi)^v, (c, b_h) |-> v(c)(b_ch - b_c).
IntMatrix adding_ideal_map(const Character& v, int L, BasedLattice* source = nullptr);

RingMatrix dual_map(const RingMatrix& M, const Character& w);

// Hom_Z(A, Z) with (g f)(a) = f(g^-1 a).  Untruncated only.
BasedLattice dual_lattice(const BasedLattice& A);
// Z[C_n] / (norm), basis 1, T, ..., T^(n-2).
BasedLattice norm_cokernel(GroupPtr G);

// Phi : A -> B (columns are images of A's basis).  True when Phi is
// unimodular and commutes with every generator on safe columns.
bool is_equivariant(const IntMatrix& Phi, const BasedLattice& A, const BasedLattice& B);
bool is_equivariant_iso(const IntMatrix& Phi, const BasedLattice& A, const BasedLattice& B);

struct Fingerprint2 {
    int a = 0, b = 0, c = 0;  // copies of Z, Z^-, Z[C2]
    bool operator==(const Fingerprint2&) const = default;
    std::string render() const;
};

Fingerprint2 fingerprint2(const BasedLattice& A);

}  // namespace q2
