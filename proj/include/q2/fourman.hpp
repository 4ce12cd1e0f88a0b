#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "q2/lattices.hpp"
#include "q2/resolutions.hpp"

namespace q2 {

// Cellular Z pi-chain complex of a 4-manifold model, ranks C0..C4.
struct ZPiComplex : ZPiChain {
    std::string name;
    std::optional<RingMatrix> form;     // intersection form on the declared H2 basis
    std::optional<RingMatrix> h2basis;  // rows: cycles in C2
    // d o d = 0, shapes, declared basis made of cycles, H0 = Z.
    void validate() const;
};

ZPiComplex builtin(const std::string& name);  // "E" or "F"

std::vector<ZPiComplex> parse_complexes(const std::string& text, const std::string& file = "");
std::string render_complex(const ZPiComplex& C);
// "builtin:E", "path" (single complex) or "path#NAME".
ZPiComplex load_complex(const std::string& ref);

// Integer homology after sending every group element to 1.
AbGroup integral_homology(const ZPiComplex& C, int k);

// H_2(C; Z pi) as a lattice over finite pi; error when it has Z-torsion.
BasedLattice h2_lattice(const ZPiComplex& C);
Fingerprint2 pi2(const ZPiComplex& C);

// One (Z/2)^2 pair per C2 factor.
struct KInvariant {
    std::vector<std::pair<int, int>> parts;
    bool operator==(const KInvariant&) const = default;
    std::string render() const;  // "(1,0)" or "((1,1),(1,0))"
};

KInvariant parse_kinvariant(const std::string& text);

// Coordinates in the declared H2 basis; `lift` selects a different chain-map lift.
KInvariant k_invariant(const ZPiComplex& C, int lift = 0);

struct HyperbolicChange {
    int residue = 0;  // n mod 4
    KInvariant k;
};
// Diagonal parameter n of the declared form n(1 - T).
mpz_class form_parameter(const ZPiComplex& C);
HyperbolicChange hyperbolic_change(const mpz_class& n, const KInvariant& k);

KInvariant connected_sum_k(const std::vector<KInvariant>& parts);
KInvariant swap_factor(const KInvariant& k, int i);
bool k_equivalent(const KInvariant& a, const KInvariant& b);  // up to per-factor swaps

struct PD3Symbol {
    std::string name;
    int b1 = 0, b3 = 1;  // F_2 Betti numbers
    int w = 1;           // orientation character of the manifold on the factor
    int u = 1;           // orientation character of the aspherical PD3 complex
};

// Free product of elementary factors and opaque PD3 symbols.
struct Decomposition {
    GroupPtr G;  // non-PD3 factors, in order
    Character w;
    std::vector<PD3Symbol> pd3;
    std::string render() const;
    bool torsion_free() const;
};

// "C2*Z*PD3(N,b1=3,b3=1,w=-1,u=+1)"; wtext is a character on the elementary factors.
Decomposition parse_decomposition(const std::string& text, const std::string& wtext = "");

struct StablePi2Class {
    int s = 0;                              // free rank after stabilization
    std::string kind;                       // "free", "stably free" or "induced"
    std::vector<std::string> gamma, gamma_prime;
    std::vector<std::string> terms;         // sorted summands after splitting into factors
    std::string shape;                      // e.g. "I(pi) + I(pi)"
    std::string render() const;
};

// fclass: one bit per ZxC2 factor (image of the fundamental class).
StablePi2Class stable_pi2(const Decomposition& D, const std::vector<int>& fclass, int s = 0);

int euler_char(int s, const Decomposition& D);
int solve_s(int chi, const Decomposition& D);

}  // namespace q2
