#include "q2/forms.hpp"

#include <fmt/format.h>

#include <map>

namespace q2 {

namespace {

AbGroup as_group(const Subquotient& s) { return AbGroup(s.free_rank(), s.torsion); }

std::map<Word, int, WordLess> element_index(const std::vector<Word>& elems) {
    std::map<Word, int, WordLess> m;
    for (size_t i = 0; i < elems.size(); ++i) m[elems[i]] = static_cast<int>(i);
    return m;
}

// ker M / im R, after checking that R lies in ker M.
AbGroup kernel_on_quotient(const IntMatrix& M, const IntMatrix& R) {
    if (R.cols() > 0 && !(M * R).is_zero()) throw Error("internal error: map does not factor through the quotient");
    return as_group(subquotient(M, R));
}

}  // namespace

bool hermitian_check(const SesqForm& F) {
    if (F.M.rows != F.M.cols) return false;
    return conj_transpose(F.M, F.w) == F.M;
}

SesqForm hyperbolic(GroupPtr G, const Character& w) {
    int m = static_cast<int>(G->factors.size());
    SesqForm F;
    F.G = G;
    F.w = w;
    F.M = RingMatrix(G, 2 * m, 2 * m);
    RingElt one(G, 1);
    int gen = 0;
    for (int f = 0; f < m; ++f) {
        const Factor& fac = G->factors[f];
        if (fac.kind == FactorKind::ZxC2) throw Error("hyperbolic: Z x C2 factors are not supported");
        RingElt c = fac.kind == FactorKind::Cyclic ? one - RingElt::generator(G, gen) : one;
        F.M(f, m + f) = c;
        F.M(m + f, f) = involute(c, w);
        gen += static_cast<int>(fac.names.size());
    }
    for (int f = 0; f < m; ++f) F.labels.push_back("x_" + G->factors[f].names[0]);
    for (int f = 0; f < m; ++f) F.labels.push_back("phi_" + G->factors[f].names[0]);
    return F;
}

SesqForm gluck_form(GroupPtr G, const Character& w, int which) {
    if (which != 0 && which != 1) throw Error("gluck_form: index must be 0 or 1");
    SesqForm F;
    F.G = G;
    F.w = w;
    F.M = RingMatrix(G, 1, 1);
    if (which == 1) F.M(0, 0) = RingElt(G, 1);
    F.labels = {"e"};
    return F;
}

bool has_w_negative_involution(const GroupSpec& G, const Character& w) {
    int gen = 0;
    for (const auto& f : G.factors) {
        if (f.kind == FactorKind::Cyclic && f.n % 2 == 0 && (f.n / 2) % 2 == 1 && w[gen] == -1) return true;
        if (f.kind == FactorKind::ZxC2 && w[gen + 1] == -1) return true;
        gen += static_cast<int>(f.names.size());
    }
    return false;
}

namespace {

struct DualData {
    std::vector<Word> elems;
    std::vector<std::vector<RingElt>> f;  // f[k][i] = f_k(b_i)
};

DualData dual_values(const BasedLattice& A) {
    const GroupPtr& G = A.G;
    DualData D;
    D.elems = elements(*G);
    int r = A.rank();
    D.f.assign(r, std::vector<RingElt>(r, RingElt(G)));
    for (const auto& g : D.elems) {
        IntMatrix m = A.element_action(word_inv(g, *G));
        for (int k = 0; k < r; ++k)
            for (int i = 0; i < r; ++i)
                if (m(k, i) != 0) D.f[k][i].add_term(g, m(k, i));
    }
    return D;
}

RingElt b_value(const DualData& D, const Character& w, int i, int j, int k, int l) {
    RingElt v = involute(D.f[k][i], w) * D.f[l][j];
    if (i != j) v += involute(D.f[k][j], w) * D.f[l][i];
    return v;
}

}  // namespace

BMapResult b_map(const BasedLattice& A, const Character& w) {
    const GroupPtr& G = A.G;
    if (!G->finite() || A.truncated) throw Error("b_map: finite group and exact lattice required");
    BMapResult R;
    if (has_w_negative_involution(*G, w)) R.warning = "pi has an element of order 2 with w = -1";
    GammaLattice X = gamma(A);
    DualData D = dual_values(A);
    auto idx = element_index(D.elems);
    int r = A.rank(), n = static_cast<int>(D.elems.size());
    R.matrix = IntMatrix(r * r * n, X.rank());
    for (int c = 0; c < X.rank(); ++c) {
        auto [i, j] = X.pairs[c];
        for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l) {
                RingElt val = b_value(D, w, i, j, k, l);
                for (const auto& [g, a] : val.terms()) R.matrix((k * r + l) * n + idx.at(g), c) = a;
            }
    }
    IntMatrix rel = coinvariant_relations(X.lattice, w);
    R.domain = cokernel(rel);
    R.kernel = kernel_on_quotient(R.matrix, rel);
    return R;
}

RingElt b_entry(const BasedLattice& A, const Character& w, const IntMatrix& x, int k, int l) {
    GammaLattice X = gamma(A);
    DualData D = dual_values(A);
    RingElt out(A.G);
    for (int c = 0; c < X.rank(); ++c) {
        if (x(c, 0) == 0) continue;
        auto [i, j] = X.pairs[c];
        out += b_value(D, w, i, j, k, l) * x(c, 0);
    }
    return out;
}

BMapResult b_map_ideal(const Character& v, const Character& w, int L) {
    const GroupPtr& G = v.group();
    BMapResult R;
    R.truncated = !G->finite();
    if (has_w_negative_involution(*G, w)) R.warning = "pi has an element of order 2 with w = -1";
    std::vector<Word> reps;
    for (const auto& x : ball(*G, L)) {
        if (x.empty()) continue;
        if (!word_less(word_inv(x, *G), x)) reps.push_back(x);
    }
    auto test = ball(*G, 1);
    RingElt one(G, 1);
    std::map<std::string, std::vector<std::pair<int, mpz_class>>> rows;
    for (size_t c = 0; c < reps.size(); ++c) {
        const Word& x = reps[c];
        RingElt b = RingElt::word(G, x, v.eval(x)) - one;
        for (size_t h = 0; h < test.size(); ++h)
            for (size_t k = 0; k < test.size(); ++k) {
                RingElt val = involute(b * RingElt::word(G, test[h]), w) * (b * RingElt::word(G, test[k])) * mpz_class(-v.eval(x));
                for (const auto& [g, a] : val.terms()) rows[fmt::format("{},{},{}", h, k, render_word(g, *G))].emplace_back(static_cast<int>(c), a);
            }
    }
    R.matrix = IntMatrix(static_cast<int>(rows.size()), static_cast<int>(reps.size()));
    int ri = 0;
    for (const auto& [key, entries] : rows) {
        for (const auto& [c, a] : entries) R.matrix(ri, c) += a;
        ++ri;
    }
    // x = x^-1 with w(x) = -1 gives 2 e_x = 0 in the coinvariants
    IntMatrix rel(static_cast<int>(reps.size()), 0);
    for (size_t c = 0; c < reps.size(); ++c)
        if (word_inv(reps[c], *G) == reps[c] && w.eval(reps[c]) == -1) {
            IntMatrix col(static_cast<int>(reps.size()), 1);
            col(static_cast<int>(c), 0) = 2;
            rel = rel.hcat(col);
        }
    R.domain = cokernel(rel);
    R.kernel = kernel_on_quotient(R.matrix, rel);
    return R;
}

EvPairing ev_pairing(const ZPiChain& C) {
    const GroupPtr& G = C.G;
    if (!G->finite()) throw Error("ev_pairing: only finite fundamental groups are supported");
    auto elems = elements(*G);
    int n = static_cast<int>(elems.size());
    auto rank_at = [&](int k) { return k <= C.top() ? C.ranks[k] : 0; };
    int r1 = rank_at(1), r2 = rank_at(2), r3 = rank_at(3);
    auto Lm = [&](const RingElt& x) { return left_mult(x, elems); };
    auto put = [&](IntMatrix& M, int bi, int bj, const IntMatrix& B) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) M(bi * n + a, bj * n + b) = B(a, b);
    };

    // cochains phi in Hom(C_2, Z pi) are the values phi(e_i)
    IntMatrix Zc(r3 * n, r2 * n), Bc(r2 * n, r1 * n);
    for (int l = 0; l < r3; ++l)
        for (int i = 0; i < r2; ++i) put(Zc, l, i, Lm(C.d[2](l, i)));
    for (int i = 0; i < r2; ++i)
        for (int j = 0; j < r1; ++j) put(Bc, i, j, Lm(C.d[1](i, j)));
    EvPairing E;
    E.h2_cohomology = as_group(subquotient(Zc, Bc));
    IntMatrix cocycles = kernel_basis(Zc);

    // H_2 over Z, with its Z pi action in a basis of the free part
    Expanded X = expand(C);
    IntMatrix d3 = r3 > 0 ? X.C.d[2] : IntMatrix(r2 * n, 0);
    Subquotient H = subquotient(X.C.d[1], d3);
    int h = H.free_rank();
    std::vector<IntMatrix> rhoH;
    for (int s = 0; s < G->num_generators(); ++s) {
        IntMatrix Ls = Lm(RingElt::generator(G, s)), A(r2 * n, r2 * n), M(h, h);
        for (int i = 0; i < r2; ++i) put(A, i, i, Ls);
        for (int j = 0; j < h; ++j) {
            IntMatrix p = H.project(A * H.free_basis.column(j));
            for (int m = 0; m < h; ++m) M(m, j) = p(m, 0);
        }
        rhoH.push_back(M);
    }

    // Hom_{Z pi}(H_2, Z pi) inside Hom_Z(H_2, Z pi) = Z^(h n)
    IntMatrix Con(G->num_generators() * h * n, h * n);
    for (int s = 0; s < G->num_generators(); ++s) {
        IntMatrix Ls = Lm(RingElt::generator(G, s));
        for (int j = 0; j < h; ++j) {
            int row = (s * h + j) * n;
            for (int m = 0; m < h; ++m)
                for (int g = 0; g < n; ++g) Con(row + g, m * n + g) += rhoH[s](m, j);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) Con(row + a, j * n + b) -= Ls(a, b);
        }
    }
    IntMatrix homB = kernel_basis(Con);
    E.hom_rank = homB.cols();

    // ev(phi)(y_j) = sum over (i, g) of y_j[(i, g)] g phi_i
    IntMatrix Ev(h * n, r2 * n);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < r2; ++i)
            for (int g = 0; g < n; ++g) {
                const mpz_class& y = H.free_basis(i * n + g, j);
                if (y == 0) continue;
                IntMatrix Lg = left_mult(RingElt::word(G, elems[g]), elems);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) Ev(j * n + a, i * n + b) += y * Lg(a, b);
            }
    IntMatrix img = Ev * cocycles;
    E.matrix = IntMatrix(E.hom_rank, cocycles.cols());
    for (int c = 0; c < cocycles.cols(); ++c) {
        auto sol = solve(homB, img.column(c));
        if (!sol) throw Error("internal error: evaluation is not Z pi-linear");
        for (int m = 0; m < E.hom_rank; ++m) E.matrix(m, c) = (*sol)(m, 0);
    }
    IntMatrix bco(cocycles.cols(), Bc.cols());
    for (int c = 0; c < Bc.cols(); ++c) {
        auto sol = solve(cocycles, Bc.column(c));
        if (!sol) throw Error("internal error: coboundary is not a cocycle");
        for (int m = 0; m < cocycles.cols(); ++m) bco(m, c) = (*sol)(m, 0);
    }
    E.kernel = kernel_on_quotient(E.matrix, bco);
    E.cokernel = cokernel(E.matrix);
    return E;
}

}  // namespace q2
