#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "q2/fourman.hpp"

namespace q2 {

enum class W2Type { INF, ZERO, X2, X2Y2 };
std::string render_w2type(W2Type t);  // "inf", "zero", "x2", "x2y2"

struct FormDescriptor {
    bool restricted = false;  // H(I pi) + lambda with a stably free part
    std::string tag;
    int rank = 0;             // restricted only
    bool operator==(const FormDescriptor&) const = default;
    std::string render() const;
};

struct Manifest {
    std::string name;
    int sigma = 0;
    int ks = 0;
    W2Type w2type = W2Type::INF;
    std::optional<std::pair<int, int>> s;  // empty: n/a
    FormDescriptor form;
    std::optional<KInvariant> kinv;
    std::string render() const;  // file syntax, one section
};

std::vector<Manifest> parse_manifests(const std::string& text, const std::string& file = "");
Manifest load_manifest(const std::string& ref);  // "path#NAME" or single-manifest path

std::vector<std::string> validate(const Manifest& m);

enum class Verdict { HOMEOMORPHIC, NOT_HOMEOMORPHIC, UNDETERMINED };

struct Decision {
    Verdict verdict = Verdict::UNDETERMINED;
    std::string reason;  // empty for HOMEOMORPHIC
    std::string render() const;  // "NOT_HOMEOMORPHIC (condition 3: s differs)"
};

// Orientation-preserving homeomorphism over D-infinity.  unbased: also
// allow the automorphism exchanging the two C2 factors (reported as
// UNDETERMINED when it is the only way s could agree).
Decision decide_dinfty(const Manifest& a, const Manifest& b, bool unbased = false);

int stable_class_count(W2Type t);

// Upper bound on s-cobordism classes; G must be torsion-free.
mpz_class scob_bound(const Decomposition& D, bool smooth, bool orientable);

struct StructureSet {
    AbGroup group;        // H_2(C; F_2) after sending pi to 1
    bool asserted = false;  // the identification is only claimed for D-infinity
};
StructureSet structure_set_size(const ZPiComplex& C);

struct Constants {
    int L4_rank = 3;  // L_4(Z D-infinity) = Z^3
    int L5_rank = 0;  // L_5(Z D-infinity) = 0
    std::string render() const;
};
Constants constants();

}  // namespace q2
