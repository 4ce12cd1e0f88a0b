// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>

#include "q2/classify.hpp"
#include "q2/forms.hpp"
#include "q2/fourman.hpp"
#include "q2/gamma.hpp"
#include "random_lattice.hpp"

using namespace q2;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> notes;
    void operator()(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c(false, std::string("exception: ") + e.what());
    }
    std::cout << fmt::format("{} {:>2} {}", c.ok ? "PASS" : "FAIL", id, title);
    if (!c.ok) std::cout << "  [" << fmt::format("{}", fmt::join(c.notes, "; ")) << "]";
    std::cout << "\n";
    if (!c.ok) ++failures;
}

Manifest manifest(const std::string& text) { return parse_manifests(text, "acceptance")[0]; }

mpz_class trace(const IntMatrix& M) {
    mpz_class t = 0;
    for (int i = 0; i < M.rows(); ++i) t += M(i, i);
    return t;
}

}  // namespace

int main() {
    criterion(1, "E/F chain models: d o d = 0 and integral homology Z, Z/2, Z/2, 0, Z", [](Check& c) {
        const AbGroup expect[] = {AbGroup(1, {}), AbGroup(0, {2}), AbGroup(0, {2}), AbGroup(), AbGroup(1, {})};
        for (const char* n : {"E", "F"}) {
            auto C = builtin(n);
            for (int k = 1; k < 4; ++k) c((C.d[k] * C.d[k - 1]).is_zero(), fmt::format("{}: d{} d{} != 0", n, k + 1, k));
            for (int k = 0; k <= 4; ++k)
                c(integral_homology(C, k) == expect[k], fmt::format("{}: H{} = {}", n, k, integral_homology(C, k).render()));
        }
    });

    criterion(2, "pi_2 fingerprints: pi2(E) = pi2(F) = Z- + Z-", [](Check& c) {
        for (const char* n : {"E", "F"}) {
            auto C = builtin(n);
            c(pi2(C) == Fingerprint2{0, 2, 0}, fmt::format("{}: {}", n, pi2(C).render()));
            // rank 2 and trace -2 force two sign summands
            auto L = h2_lattice(C);
            c(L.rank() == 2 && trace(L.action[0]) == -2, fmt::format("{}: rank/trace oracle", n));
        }
    });

    criterion(3, "k-invariants: k_E = (1,1) residue 2, k_F = (1,0) residue 0, lifts agree", [](Check& c) {
        struct Want { const char* name; int n; const char* k; int residue; };
        for (auto w : {Want{"E", -2, "(1,1)", 2}, Want{"F", -4, "(1,0)", 0}}) {
            auto C = builtin(w.name);
            auto raw = k_invariant(C, 0);
            for (int lift = 1; lift <= 3; ++lift) c(k_invariant(C, lift) == raw, fmt::format("{}: lift {} disagrees", w.name, lift));
            c(form_parameter(C) == w.n, fmt::format("{}: n = {}", w.name, form_parameter(C).get_str()));
            auto H = hyperbolic_change(form_parameter(C), raw);
            c(H.k.render() == w.k, fmt::format("{}: k = {}", w.name, H.k.render()));
            c(H.residue == w.residue, fmt::format("{}: residue {}", w.name, H.residue));
        }
    });

    criterion(4, "twisted homology: H4(ZxC2; Z^w) = Z/2, H2(ZxC2; Z^v') = Z/2, H2(C_n; Z) = 0", [](Check& c) {
        auto H = parse_group("ZxC2");
        for (const char* w : {"t=+1,T=+1", "t=-1,T=+1"}) {
            auto A = homology_twisted(H, parse_character(w, H), 4, 6);
            c(A == AbGroup(0, {2}), fmt::format("H4 with {} = {}", w, A.render()));
        }
        auto A = homology_twisted(H, parse_character("t=+1,T=-1", H), 2, 5);
        c(A == AbGroup(0, {2}), "H2 with v' = " + A.render());
        for (int n = 2; n <= 6; ++n) {
            auto G = parse_group(fmt::format("C{}", n));
            auto B = homology_twisted(G, Character::trivial(G), 2, 5);
            c(B.trivial(), fmt::format("H2(C{}) = {}", n, B.render()));
        }
    });

    criterion(5, "Gamma: Z (x) Gamma(Z- + Z) = Z^2 + Z/2; theta/psi exact for C2..C4, safe ball for Dinf", [](Check& c) {
        auto C2 = parse_group("C2");
        auto A = direct_sum(sign_module(Character(C2, {-1})), sign_module(Character::trivial(C2)));
        auto co = coinvariants(gamma(A), Character::trivial(C2));
        c(co == AbGroup(2, {2}), "coinvariants " + co.render());
        for (int n = 2; n <= 4; ++n) {
            auto G = parse_group(fmt::format("C{}", n));
            std::vector<Character> vs{Character::trivial(G)};
            if (n % 2 == 0) vs.push_back(Character(G, {-1}));
            for (const auto& v : vs) {
                auto R = gamma_ideal(v);
                int q = R.quotient.rank();
                std::string tag = fmt::format("C{} v={}", n, v[0]);
                c(abs(determinant(R.theta)) == 1, tag + ": theta not invertible");
                c(R.psi * R.theta == IntMatrix::identity(q), tag + ": psi theta != id");
                c(is_equivariant_iso(R.theta, R.quotient, R.gamma_ideal.lattice), tag + ": theta not equivariant");
                c(is_equivariant_iso(R.split, R.split_source, R.full.lattice), tag + ": split not an iso");
            }
        }
        auto D = parse_group("Dinf");
        for (const char* v : {"a=+1,b=+1", "a=-1,b=+1", "a=-1,b=-1"}) {
            auto R = gamma_ideal(parse_character(v, D), 3);
            IntMatrix P = R.psi * R.theta;
            for (int j = 0; j < P.cols(); ++j)
                if (R.quotient.safe[j]) c(P.column(j) == IntMatrix::identity(P.rows()).column(j), fmt::format("Dinf {}: column {}", v, j));
            c(is_equivariant(R.theta, R.quotient, R.gamma_ideal.lattice), fmt::format("Dinf {}: theta", v));
        }
    });

    criterion(6, "kernel of B equals the torsion of the Gamma coinvariants (C2, C3; 60 random lattices)", [](Check& c) {
        std::mt19937 rng(6);
        int total = 0, agree = 0;
        for (const char* g : {"C2", "C3"}) {
            auto G = parse_group(g);
            auto w = Character::trivial(G);
            for (int t = 0; t < 30; ++t) {
                auto A = testing::random_cyclic_lattice(G, 4, rng);
                auto R = b_map(A, w);
                IntMatrix rel = coinvariant_relations(gamma(A).lattice, w);
                bool ok = R.kernel == AbGroup(0, R.domain.torsion());
                // brute force: p-ranks of the torsion of coker(rel) from ranks over Q and F_p
                for (unsigned long p : {2ul, 3ul, 5ul}) {
                    int pr = 0;
                    for (const auto& q : R.kernel.torsion())
                        if (q % p == 0) ++pr;
                    ok = ok && pr == rank(rel) - rank_mod(rel, p);
                }
                ++total;
                agree += ok;
            }
        }
        c(total >= 50, "too few samples");
        c(agree == total, fmt::format("{}/{} agree", agree, total));
    });

    criterion(7, "Hom(I pi, Z) = I pi for C2..C6 via Z[C_n]/(norm)", [](Check& c) {
        for (int n = 2; n <= 6; ++n) {
            auto G = parse_group(fmt::format("C{}", n));
            auto I = aug_ideal(Character::trivial(G));
            auto N = norm_cokernel(G);
            auto Id = dual_lattice(I);
            auto ws = ball(*G, 1);
            auto idx = [&](int k) {
                Word w = k == 0 ? Word{} : Word{Syllable{0, k, 0}};
                for (size_t i = 1; i < ws.size(); ++i)
                    if (ws[i] == w) return static_cast<int>(i) - 1;
                return -1;
            };
            // coker(norm) -> Hom(I, Z): T^k |-> restriction of the coordinate functional at T^(k+1)
            IntMatrix R(n - 1, n - 1);
            for (int j = 0; j < n - 1; ++j)
                for (int k = 0; k < n - 1; ++k) R(idx(k + 1), j) = (j == k + 1 ? 1 : 0) - (j == 0 ? 1 : 0);
            // coker(norm) -> I, x |-> x (1 - T)
            IntMatrix Phi(n - 1, n - 1);
            for (int k = 0; k < n - 1; ++k) {
                if (k > 0) Phi(idx(k), k) += 1;
                Phi(idx(k + 1), k) -= 1;
            }
            c(is_equivariant_iso(R, N, Id), fmt::format("C{}: coker(norm) -> dual", n));
            c(is_equivariant_iso(Phi, N, I), fmt::format("C{}: coker(norm) -> I", n));
            if (n == 2) c(fingerprint2(Id) == fingerprint2(I), "C2 fingerprints differ");
        }
    });

    criterion(8, "stable pi_2: ZxC2 by fclass, Dinf shape, admissibility", [](Check& c) {
        auto H = parse_decomposition("ZxC2", "");
        c(stable_pi2(H, {1}).kind == "stably free", "fclass 1");
        c(stable_pi2(H, {0}).shape == "I(pi)^v + I(pi)", "fclass 0: " + stable_pi2(H, {0}).shape);
        c(stable_pi2(parse_decomposition("Dinf", ""), {}).shape == "I(pi) + I(pi)", "Dinf shape");
        bool threw = false;
        try {
            stable_pi2(parse_decomposition("Dinf", "a=-1,b=+1"), {});
        } catch (const Error&) {
            threw = true;
        }
        c(threw, "w(a) = -1 accepted");
        threw = false;
        try {
            stable_pi2(parse_decomposition("ZxC2", "t=+1,T=-1"), {0});
        } catch (const Error&) {
            threw = true;
        }
        c(threw, "w(T) = -1 accepted");
    });

    criterion(9, "classifier regressions on the E/F family", [](Check& c) {
        auto fam = [](const char* name, int ks, int s1, int s2) {
            return manifest(fmt::format("[manifest {}]\nsigma = 0\nks = {}\ns = ({},{})\nw2type = x2y2\nform = restricted(H, 0)\n", name, ks, s1, s2));
        };
        std::vector<Manifest> f{fam("EE", 0, 0, 0), fam("sEsE", 0, 1, 1), fam("EsE", 1, 0, 1), fam("sEE", 1, 1, 0)};
        c(decide_dinfty(f[0], f[1]).verdict == Verdict::NOT_HOMEOMORPHIC, "EE vs sEsE");
        c(decide_dinfty(f[3], f[2]).verdict == Verdict::NOT_HOMEOMORPHIC, "sEE vs EsE");
        auto cp = [](const char* name, const char* k) {
            return manifest(fmt::format("[manifest {}]\nsigma = 1\nks = 0\ns = n/a\nw2type = inf\nform = restricted(cp2, 1)\nkinv = {}\n", name, k));
        };
        c(decide_dinfty(cp("EFCP2", "((1,1),(1,0))"), cp("FFCP2", "((1,0),(1,0))")).verdict == Verdict::HOMEOMORPHIC, "EF#CP2 vs FF#CP2");
        // count classes
        std::vector<int> cls(4, -1);
        int classes = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < i && cls[i] < 0; ++j)
                if (decide_dinfty(f[i], f[j]).verdict == Verdict::HOMEOMORPHIC) cls[i] = cls[j];
            if (cls[i] < 0) cls[i] = classes++;
        }
        c(classes == 4 && stable_class_count(W2Type::X2Y2) == 4, fmt::format("{} classes", classes));
        for (const auto& m : f) c(validate(m).empty(), m.name + " rejected");
        auto fake = fam("fake", 0, 0, 0);
        fake.sigma = 8;
        c(!validate(fake).empty(), "counterfeit accepted");
    });

    criterion(10, "bounds and constants: scob 2, L4 = Z^3, L5 = 0, H2(E; F2) = (Z/2)^2", [](Check& c) {
        c(scob_bound(parse_decomposition("PD3(N)", ""), false, true) == 2, "scob bound");
        c(constants().L4_rank == 3 && constants().L5_rank == 0, "L-groups");
        auto S = structure_set_size(builtin("E"));
        c(S.group == AbGroup(0, {2, 2}), "structure set " + S.group.render());
    });

    criterion(11, "Euler formula s = chi + m + r - 2: 1000 random round trips, S1 x S3 gives s = -1", [](Check& c) {
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> small(0, 3), chi(-20, 20);
        int bad = 0;
        for (int t = 0; t < 1000; ++t) {
            int r = small(rng), m = small(rng);
            if (r + m == 0) r = 1;
            std::vector<std::string> parts;
            for (int i = 0; i < r; ++i) parts.push_back("Z");
            for (int i = 0; i < m; ++i) parts.push_back(fmt::format("PD3(P{},b1={})", i, small(rng)));
            std::shuffle(parts.begin(), parts.end(), rng);
            auto D = parse_decomposition(fmt::format("{}", fmt::join(parts, "*")), "");
            int x = chi(rng);
            int s = solve_s(x, D);
            if (s != x + m + r - 2 || euler_char(s, D) != x) ++bad;
        }
        c(bad == 0, fmt::format("{} mismatches", bad));
        c(solve_s(0, parse_decomposition("Z", "")) == -1, "S1 x S3");
    });

    return failures == 0 ? 0 : 1;
}
