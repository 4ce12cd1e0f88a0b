#pragma once

#include <string>
#include <vector>

#include "q2/gamma.hpp"
#include "q2/resolutions.hpp"

namespace q2 {

// lambda(e_i, e_j) = M(i, j).
struct SesqForm {
    GroupPtr G;
    Character w;
    RingMatrix M;
    std::vector<std::string> labels;
};

bool hermitian_check(const SesqForm& F);

// H(I pi) restricted to one generator per factor: basis x_1..x_m, phi_1..phi_m
// with x_f = 1 - g_f and phi_f(x_f) = c_f (1 - g_f for cyclic factors, 1 for Z).
SesqForm hyperbolic(GroupPtr G, const Character& w);

// The two forms on Z pi of rank one used by the Gluck-twist models.
SesqForm gluck_form(GroupPtr G, const Character& w, int which);

struct BMapResult {
    AbGroup domain;       // Gamma coinvariants
    IntMatrix matrix;     // Gamma(A) basis -> coefficient vectors of Hermitian matrices
    AbGroup kernel;
    bool truncated = false;
    std::string warning;  // set when pi has an order-2 element with w = -1
};

// Finite pi: rows indexed by (k, l, g), coefficient of g in B(x)(f_k, f_l)
// for the dual basis f_k.
BMapResult b_map(const BasedLattice& A, const Character& w);
// Entry (k, l) of B(x) as a ring element.
RingElt b_entry(const BasedLattice& A, const Character& w, const IntMatrix& x, int k, int l);

// B on Gamma(I pi^v) through theta: generators are classes of g(x)1 + 1(x)g for
// g in the ball modulo g ~ g^-1, evaluated on right multiplications r_h with h
// in the unit ball.  Works for infinite pi.
BMapResult b_map_ideal(const Character& v, const Character& w, int L);

bool has_w_negative_involution(const GroupSpec& G, const Character& w);

struct EvPairing {
    AbGroup h2_cohomology;  // H^2(C; Z pi)
    int hom_rank = 0;       // Z-rank of Hom_{Z pi}(H_2, Z pi)
    IntMatrix matrix;       // cocycle basis -> Hom basis coordinates
    AbGroup kernel, cokernel;
    bool is_iso() const { return kernel.trivial() && cokernel.trivial(); }
};

EvPairing ev_pairing(const ZPiChain& C);

}  // namespace q2
