#include "q2/lattices.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "q2/resolutions.hpp"

namespace q2 {

namespace {

std::vector<Syllable> factor_syllables(const GroupSpec& G, int f, int L) {
    const Factor& fac = G.factors[f];
    std::vector<Syllable> out;
    switch (fac.kind) {
        case FactorKind::Cyclic:
            for (int k = 1; k < fac.n; ++k) out.push_back({f, k, 0});
            break;
        case FactorKind::Infinite:
            for (int k = 1; k <= L; ++k) out.push_back({f, k, 0}), out.push_back({f, -k, 0});
            break;
        case FactorKind::ZxC2:
            for (int k = -L; k <= L; ++k)
                for (int e = 0; e < 2; ++e)
                    if (k != 0 || e != 0) out.push_back({f, k, e});
            break;
    }
    return out;
}

std::map<Word, int, WordLess> index_map(const std::vector<Word>& ws) {
    std::map<Word, int, WordLess> m;
    for (size_t i = 0; i < ws.size(); ++i) m[ws[i]] = static_cast<int>(i);
    return m;
}

std::vector<std::string> default_labels(int r) {
    std::vector<std::string> l;
    for (int i = 0; i < r; ++i) l.push_back(fmt::format("e{}", i));
    return l;
}

// Generators and their inverses, as words.
std::vector<Word> generator_words_pm(const GroupSpec& G) {
    std::vector<Word> out;
    for (int g = 0; g < G.num_generators(); ++g) {
        out.push_back(G.generator_word(g));
        out.push_back(word_inv(G.generator_word(g), G));
    }
    return out;
}

bool in_set(const Word& w, const std::vector<int>& factors) {
    return std::find(factors.begin(), factors.end(), w.back().factor) != factors.end();
}

// Coset representatives of the sub-free-product on `factors`.
std::vector<Word> coset_reps(const GroupSpec& pi, const std::vector<int>& factors, int L) {
    std::vector<Word> reps;
    for (const Word& w : ball(pi, L))
        if (syllable_length(w) <= L - 1 && (w.empty() || !in_set(w, factors))) reps.push_back(w);
    if (pi.finite()) reps = {Word{}};
    return reps;
}

// Split w = c h with h the maximal suffix inside `factors`; h is returned
// re-indexed into the subgroup.
std::pair<Word, Word> split_suffix(const Word& w, const std::vector<int>& factors) {
    size_t cut = w.size();
    while (cut > 0 && in_set(Word{w[cut - 1]}, factors)) --cut;
    Word c(w.begin(), w.begin() + cut), h(w.begin() + cut, w.end());
    for (auto& s : h) s.factor = static_cast<int>(std::find(factors.begin(), factors.end(), s.factor) - factors.begin());
    return {c, h};
}

}  // namespace

std::vector<Word> ball(const GroupSpec& G, int L) {
    if (G.finite()) return elements(G);
    std::vector<Word> all{Word{}}, frontier{Word{}};
    for (int len = 1; len <= L; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier)
            for (int f = 0; f < static_cast<int>(G.factors.size()); ++f) {
                if (!w.empty() && w.back().factor == f) continue;
                for (const auto& s : factor_syllables(G, f, L)) {
                    Word x = w;
                    x.push_back(s);
                    next.push_back(x);
                }
            }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), WordLess{});
    return all;
}

bool in_ball(const Word& w, const GroupSpec& G, int L) {
    if (G.finite()) return true;
    return syllable_length(w) <= L && max_exponent(w, G) <= L;
}

IntMatrix BasedLattice::element_action(const Word& g) const {
    IntMatrix M = IntMatrix::identity(rank());
    std::vector<int> first;
    int base = 0;
    for (const auto& f : G->factors) {
        first.push_back(base);
        base += static_cast<int>(f.names.size());
    }
    for (const auto& s : g) {
        int gi = first[s.factor];
        long k = s.k.get_si();
        M = M * power(action[gi], k);
        if (s.eps) M = M * action[gi + 1];
    }
    return M;
}

void BasedLattice::validate() const {
    int r = rank();
    if (static_cast<int>(action.size()) != G->num_generators()) throw Error("lattice: one matrix per generator required");
    if (static_cast<int>(safe.size()) != r) throw Error("lattice: safe flags missing");
    for (const auto& A : action)
        if (A.rows() != r || A.cols() != r) throw Error("lattice: action matrix has wrong size");
    auto check = [&](const IntMatrix& X, const IntMatrix& Y, const std::string& what) {
        for (int j = 0; j < r; ++j) {
            if (!safe[j]) continue;
            for (int i = 0; i < r; ++i)
                if (X(i, j) != Y(i, j)) throw Error("lattice: relation fails: " + what);
        }
    };
    int g = 0;
    for (const auto& f : G->factors) {
        const IntMatrix& a = action[g];
        if (!truncated && abs(determinant(a)) != 1) throw Error("lattice: generator acts non-invertibly");
        if (f.kind == FactorKind::Cyclic) check(power(a, f.n), IntMatrix::identity(r), f.names[0] + "^n = 1");
        if (f.kind == FactorKind::ZxC2) {
            const IntMatrix& T = action[g + 1];
            if (!truncated && abs(determinant(T)) != 1) throw Error("lattice: generator acts non-invertibly");
            check(T * T, IntMatrix::identity(r), f.names[1] + "^2 = 1");
            check(a * T, T * a, "t T = T t");
        }
        g += static_cast<int>(f.names.size());
    }
}

BasedLattice make_lattice(GroupPtr G, std::vector<IntMatrix> action, std::vector<std::string> labels) {
    BasedLattice A;
    A.G = std::move(G);
    int r = action.empty() ? static_cast<int>(labels.size()) : action[0].rows();
    A.labels = labels.empty() ? default_labels(r) : std::move(labels);
    A.action = std::move(action);
    A.safe.assign(A.rank(), true);
    A.validate();
    return A;
}

BasedLattice regular(GroupPtr G, int L) {
    BasedLattice A;
    A.G = G;
    auto words = ball(*G, L);
    auto idx = index_map(words);
    A.truncated = !G->finite();
    A.L = L;
    int r = static_cast<int>(words.size());
    for (const auto& w : words) {
        A.labels.push_back(render_word(w, *G));
        A.safe.push_back(!A.truncated || in_ball(w, *G, L - 1));
    }
    for (int g = 0; g < G->num_generators(); ++g) {
        IntMatrix M(r, r);
        Word s = G->generator_word(g);
        for (int j = 0; j < r; ++j) {
            auto it = idx.find(word_mul(s, words[j], *G));
            if (it != idx.end()) M(it->second, j) = 1;
        }
        A.action.push_back(M);
    }
    A.validate();
    return A;
}

BasedLattice sign_module(const Character& v) {
    std::vector<IntMatrix> act;
    for (int g = 0; g < v.group()->num_generators(); ++g) act.push_back(IntMatrix{{v[g]}});
    return make_lattice(v.group(), act, {v.is_trivial() ? "1" : "1^v"});
}

BasedLattice aug_ideal(const Character& v, int L) {
    const GroupPtr& G = v.group();
    BasedLattice A;
    A.G = G;
    auto words = ball(*G, L);
    words.erase(words.begin());  // identity first in short-lex
    auto idx = index_map(words);
    A.truncated = !G->finite();
    A.L = L;
    int r = static_cast<int>(words.size());
    for (const auto& w : words) {
        std::string sgn = v.eval(w) > 0 ? "" : "-";
        A.labels.push_back(sgn + render_word(w, *G) + " - 1");
        A.safe.push_back(!A.truncated || in_ball(w, *G, L - 1));
    }
    for (int g = 0; g < G->num_generators(); ++g) {
        IntMatrix M(r, r);
        Word s = G->generator_word(g);
        int vs = v.eval(s);
        int is = idx.at(s);
        for (int j = 0; j < r; ++j) {
            // s (v(x)x - 1) = v(s) b_{sx} - v(s) b_s
            Word sx = word_mul(s, words[j], *G);
            if (!sx.empty()) {
                auto it = idx.find(sx);
                if (it != idx.end()) M(it->second, j) += vs;
            }
            M(is, j) -= vs;
        }
        A.action.push_back(M);
    }
    A.validate();
    return A;
}

BasedLattice direct_sum(const BasedLattice& A, const BasedLattice& B) {
    if (!(*A.G == *B.G)) throw Error("direct_sum: lattices over different groups");
    BasedLattice S;
    S.G = A.G;
    S.labels = A.labels;
    S.labels.insert(S.labels.end(), B.labels.begin(), B.labels.end());
    for (size_t g = 0; g < A.action.size(); ++g) S.action.push_back(block_diag(A.action[g], B.action[g]));
    S.truncated = A.truncated || B.truncated;
    S.L = A.truncated && B.truncated ? std::min(A.L, B.L) : (A.truncated ? A.L : B.L);
    S.safe = A.safe;
    S.safe.insert(S.safe.end(), B.safe.begin(), B.safe.end());
    return S;
}

BasedLattice induce(const BasedLattice& A, GroupPtr pi, const std::vector<int>& factors, int L) {
    GroupPtr H = sub_group(*pi, factors);
    if (!(*H == *A.G)) throw Error("induce: lattice is not over the chosen sub-free-product");
    auto reps = coset_reps(*pi, factors, L);
    auto ridx = index_map(reps);
    int ra = A.rank();
    int r = static_cast<int>(reps.size()) * ra;
    BasedLattice I;
    I.G = pi;
    I.L = L;
    I.truncated = A.truncated || factors.size() != pi->factors.size();
    for (const auto& c : reps)
        for (int i = 0; i < ra; ++i) {
            I.labels.push_back(c.empty() ? A.labels[i] : render_word(c, *pi) + "(x)" + A.labels[i]);
            bool ok = A.safe[i];
            for (const auto& s : generator_words_pm(*pi))
                if (!ridx.count(split_suffix(word_mul(s, c, *pi), factors).first)) ok = false;
            I.safe.push_back(ok);
        }
    for (int g = 0; g < pi->num_generators(); ++g) {
        IntMatrix M(r, r);
        Word s = pi->generator_word(g);
        for (size_t ci = 0; ci < reps.size(); ++ci) {
            auto [c2, h] = split_suffix(word_mul(s, reps[ci], *pi), factors);
            auto it = ridx.find(c2);
            if (it == ridx.end()) continue;
            IntMatrix Hm = A.element_action(h);
            for (int i = 0; i < ra; ++i)
                for (int k = 0; k < ra; ++k) M(it->second * ra + k, static_cast<int>(ci) * ra + i) = Hm(k, i);
        }
        I.action.push_back(M);
    }
    I.validate();
    return I;
}

IntMatrix adding_ideal_map(const Character& v, int L, BasedLattice* source) {
    const GroupPtr& pi = v.group();
    BasedLattice target = aug_ideal(v, L);
    auto twords = ball(*pi, L);
    twords.erase(twords.begin());
    auto tidx = index_map(twords);
    BasedLattice src;
    bool first = true;
    std::vector<std::vector<std::pair<int, int>>> entries;
    for (int f = 0; f < static_cast<int>(pi->factors.size()); ++f) {
        Character vf = restrict_character(v, {f});
        BasedLattice If = aug_ideal(vf, L);
        BasedLattice Ind = induce(If, pi, {f}, L);
        src = first ? Ind : direct_sum(src, Ind);
        first = false;
        auto hwords = ball(*vf.group(), L);
        hwords.erase(hwords.begin());
        for (const auto& c : coset_reps(*pi, {f}, L))
            for (const auto& h0 : hwords) {
                Word h = h0;
                for (auto& s : h) s.factor = f;
                std::vector<std::pair<int, int>> col;
                int vc = v.eval(c);
                Word ch = word_mul(c, h, *pi);
                auto it = tidx.find(ch);
                if (it == tidx.end()) throw Error("adding_ideal_map: image leaves the ball");
                col.emplace_back(it->second, vc);
                if (!c.empty()) col.emplace_back(tidx.at(c), -vc);
                entries.push_back(col);
            }
    }
    IntMatrix Phi(target.rank(), static_cast<int>(entries.size()));
    for (size_t j = 0; j < entries.size(); ++j)
        for (auto [i, x] : entries[j]) Phi(i, static_cast<int>(j)) += x;
    if (source) *source = src;
    return Phi;
}

RingMatrix dual_map(const RingMatrix& M, const Character& w) { return conj_transpose(M, w); }

BasedLattice dual_lattice(const BasedLattice& A) {
    if (A.truncated) throw Error("dual_lattice: truncated lattice");
    std::vector<IntMatrix> act;
    for (const auto& m : A.action) act.push_back(unimodular_inverse(m).transpose());
    std::vector<std::string> labels;
    for (const auto& l : A.labels) labels.push_back("(" + l + ")*");
    return make_lattice(A.G, act, labels);
}

BasedLattice norm_cokernel(GroupPtr G) {
    if (G->factors.size() != 1 || G->factors[0].kind != FactorKind::Cyclic)
        throw Error("norm_cokernel: group must be cyclic");
    int n = G->factors[0].n;
    IntMatrix T(n - 1, n - 1);
    for (int k = 0; k < n - 2; ++k) T(k + 1, k) = 1;
    for (int i = 0; i < n - 1; ++i) T(i, n - 2) = -1;
    std::vector<std::string> labels;
    for (int k = 0; k < n - 1; ++k) labels.push_back(k == 0 ? "[1]" : fmt::format("[T^{}]", k));
    return make_lattice(G, {T}, labels);
}

bool is_equivariant(const IntMatrix& Phi, const BasedLattice& A, const BasedLattice& B) {
    if (Phi.rows() != B.rank() || Phi.cols() != A.rank()) return false;
    for (size_t g = 0; g < A.action.size(); ++g) {
        IntMatrix X = Phi * A.action[g], Y = B.action[g] * Phi;
        for (int j = 0; j < A.rank(); ++j) {
            if (!A.safe[j]) continue;
            bool inside = true;
            for (int i = 0; i < B.rank(); ++i)
                if (Phi(i, j) != 0 && !B.safe[i]) inside = false;
            if (!inside) continue;
            for (int i = 0; i < B.rank(); ++i)
                if (X(i, j) != Y(i, j)) return false;
        }
    }
    return true;
}

bool is_equivariant_iso(const IntMatrix& Phi, const BasedLattice& A, const BasedLattice& B) {
    if (Phi.rows() != Phi.cols()) return false;
    if (abs(determinant(Phi)) != 1) return false;
    return is_equivariant(Phi, A, B);
}

std::string Fingerprint2::render() const {
    std::vector<std::string> parts;
    auto term = [&](int m, const char* name) {
        if (m == 1) parts.push_back(name);
        if (m > 1) parts.push_back(fmt::format("{}^{}", name, m));
    };
    term(a, "Z");
    term(b, "Z-");
    term(c, "Z[C2]");
    if (parts.empty()) return "0";
    return fmt::format("{}", fmt::join(parts, " + "));
}

Fingerprint2 fingerprint2(const BasedLattice& A) {
    const GroupSpec& G = *A.G;
    if (G.factors.size() != 1 || G.factors[0].kind != FactorKind::Cyclic || G.factors[0].n != 2)
        throw Error("fingerprint2: lattice must be over Z[C2]");
    if (A.truncated) throw Error("fingerprint2: truncated lattice");
    int r = A.rank();
    IntMatrix I = IntMatrix::identity(r);
    IntMatrix Tm = A.action[0] - I, Tp = A.action[0] + I;
    int k1 = r - rank(Tm), k2 = r - rank(Tp);
    Subquotient h = subquotient(Tm, Tp);
    if (h.free_rank() != 0) throw Error("fingerprint2: internal error (Tate group has free part)");
    for (const auto& d : h.torsion)
        if (d != 2) throw Error("fingerprint2: internal error (Tate group not elementary)");
    Fingerprint2 f;
    f.a = static_cast<int>(h.torsion.size());
    f.c = k1 - f.a;
    f.b = k2 - f.c;
    if (f.b < 0 || f.c < 0 || r != f.a + f.b + 2 * f.c) throw Error("fingerprint2: inconsistent invariant system");
    return f;
}

}  // namespace q2
