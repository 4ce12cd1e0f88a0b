#include "q2/resolutions.hpp"

#include <fmt/format.h>

#include <map>

#include "lexer.hpp"

namespace q2 {

void ZPiChain::validate() const {
    if (d.size() + 1 != ranks.size()) throw Error("chain complex: need one differential per positive degree");
    for (size_t k = 0; k < d.size(); ++k) {
        if (d[k].rows != ranks[k + 1] || d[k].cols != ranks[k])
            throw Error(fmt::format("chain complex: d{} is {}x{}, expected {}x{}", k + 1, d[k].rows, d[k].cols,
                                    ranks[k + 1], ranks[k]));
        if (k + 1 < d.size() && !(d[k + 1] * d[k]).is_zero())
            throw Error(fmt::format("chain complex: d{} * d{} != 0", k + 2, k + 1));
    }
}

GroupPtr sub_group(const GroupSpec& G, const std::vector<int>& factors) {
    GroupSpec H;
    for (int f : factors) {
        if (f < 0 || f >= static_cast<int>(G.factors.size())) throw Error("sub_group: factor index out of range");
        H.factors.push_back(G.factors[f]);
    }
    return make_group(H);
}

Character restrict_character(const Character& v, const std::vector<int>& factors) {
    const GroupSpec& G = *v.group();
    GroupPtr H = sub_group(G, factors);
    std::vector<int> vals;
    for (int f : factors)
        for (const auto& n : G.factors[f].names) vals.push_back(v[G.generator_index(n)]);
    return Character(H, vals);
}

RingElt push_forward(const RingElt& x, GroupPtr G, const std::vector<int>& factor_map) {
    RingElt r(G);
    for (const auto& [w, c] : x.terms()) {
        Word u = w;
        for (auto& s : u) s.factor = factor_map.at(s.factor);
        r.add_term(u, c);
    }
    return r;
}

namespace {

// Resolution of a single-factor group, over that group.
Resolution factor_resolution(GroupPtr H, int N) {
    const Factor& f = H->factors.at(0);
    Resolution R;
    R.G = H;
    auto one = RingElt(H, 1);
    auto g0 = RingElt::generator(H, 0);
    auto cyclic_d = [&](int k) {
        // 1 - T in odd degrees, the norm element in even degrees
        if (k % 2) return one - g0;
        RingElt norm(H);
        Word w;
        for (int i = 0; i < f.n; ++i) {
            norm.add_term(w, 1);
            w = word_mul(w, H->generator_word(0), *H);
        }
        return norm;
    };
    switch (f.kind) {
        case FactorKind::Cyclic:
            R.ranks.assign(N + 1, 1);
            for (int k = 1; k <= N; ++k) {
                RingMatrix m(H, 1, 1);
                m(0, 0) = cyclic_d(k);
                R.d.push_back(m);
            }
            break;
        case FactorKind::Infinite:
            R.ranks.assign(N + 1, 0);
            R.ranks[0] = 1;
            if (N >= 1) R.ranks[1] = 1;
            for (int k = 1; k <= N; ++k) {
                RingMatrix m(H, R.ranks[k], R.ranks[k - 1]);
                if (k == 1) m(0, 0) = one - g0;
                R.d.push_back(m);
            }
            break;
        case FactorKind::ZxC2: {
            // P = resolution of C2 in T, Q = (1 - t); basis of degree k is
            // (P_k x Q_0, P_{k-1} x Q_1).
            RingElt t = g0, T = RingElt::generator(H, 1);
            auto P = [&](int k) { return k % 2 ? one - T : one + T; };
            R.ranks.assign(N + 1, 2);
            R.ranks[0] = 1;
            for (int k = 1; k <= N; ++k) {
                RingMatrix m(H, 2, R.ranks[k - 1]);
                if (k == 1) {
                    m(0, 0) = P(1);
                    m(1, 0) = one - t;
                } else {
                    m(0, 0) = P(k);
                    m(1, 0) = (k % 2 ? one - t : t - one);  // (-1)^(k-1) (1 - t)
                    m(1, 1) = P(k - 1);
                }
                R.d.push_back(m);
            }
            break;
        }
    }
    return R;
}

}  // namespace

Resolution std_resolution(GroupPtr G, int N) {
    if (N < 1) throw Error("resolution depth must be at least 1");
    Resolution R;
    R.G = G;
    std::vector<Resolution> parts;
    for (size_t i = 0; i < G->factors.size(); ++i) parts.push_back(factor_resolution(sub_group(*G, {int(i)}), N));
    R.ranks.assign(N + 1, 0);
    R.ranks[0] = 1;
    for (int k = 1; k <= N; ++k)
        for (const auto& p : parts) R.ranks[k] += p.ranks[k];
    for (int k = 1; k <= N; ++k) {
        RingMatrix m(G, R.ranks[k], R.ranks[k - 1]);
        int r0 = 0, c0 = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
            const RingMatrix& pd = parts[i].d[k - 1];
            std::vector<int> fmap{static_cast<int>(i)};
            for (int a = 0; a < pd.rows; ++a)
                for (int b = 0; b < pd.cols; ++b) m(r0 + a, (k == 1 ? 0 : c0) + b) = push_forward(pd(a, b), G, fmap);
            r0 += pd.rows;
            c0 += pd.cols;
        }
        R.d.push_back(m);
    }
    R.validate();
    return R;
}

FreeWord parse_free_word(const std::string& text, const GroupSpec& G) {
    using detail::Tok;
    detail::TokenStream ts(detail::lex(text, "*^-"));
    FreeWord w;
    if (ts.peek().kind == Tok::Int && ts.peek().text == "1") {
        ts.next();
        if (ts.peek().kind != Tok::End) ts.fail("trailing input");
        return w;
    }
    do {
        if (ts.peek().kind != Tok::Ident) ts.fail("expected generator name");
        auto tok = ts.next();
        int g = G.generator_index(tok.text);
        if (g < 0) throw ParseError("unknown generator", tok.line, tok.col, tok.text);
        long e = 1;
        if (ts.accept("^")) {
            bool neg = ts.accept("-");
            if (ts.peek().kind != Tok::Int) ts.fail("expected integer exponent");
            e = std::stol(ts.next().text);
            if (neg) e = -e;
        }
        if (e != 0) w.emplace_back(g, e);
    } while (ts.accept("*"));
    if (ts.peek().kind != Tok::End) ts.fail("unexpected token in word");
    return w;
}

RingElt fox_derivative(const FreeWord& w, int gen, GroupPtr G) {
    if (gen < 0 || gen >= G->num_generators()) throw Error("fox_derivative: unknown generator");
    RingElt r(G);
    Word prefix;
    for (const auto& [g, e] : w) {
        Word x = G->generator_word(g);
        Word xi = word_inv(x, *G);
        if (g == gen) {
            // d(x^e)/dx = 1 + x + ... + x^(e-1), or -(x^-1 + ... + x^e) for e < 0
            Word p = prefix;
            if (e > 0) {
                for (long i = 0; i < e; ++i) {
                    r.add_term(p, 1);
                    p = word_mul(p, x, *G);
                }
            } else {
                for (long i = 0; i < -e; ++i) {
                    p = word_mul(p, xi, *G);
                    r.add_term(p, -1);
                }
            }
        }
        for (long i = 0; i < std::labs(e); ++i) prefix = word_mul(prefix, e > 0 ? x : xi, *G);
    }
    return r;
}

FoxComplex fox_complex(GroupPtr G, const std::vector<FreeWord>& relators) {
    FoxComplex F;
    F.G = G;
    F.relators = relators;
    int n = G->num_generators();
    F.d1 = RingMatrix(G, n, 1);
    for (int g = 0; g < n; ++g) F.d1(g, 0) = RingElt::generator(G, g) - RingElt(G, 1);
    F.d2 = RingMatrix(G, static_cast<int>(relators.size()), n);
    for (size_t i = 0; i < relators.size(); ++i)
        for (int g = 0; g < n; ++g) F.d2(static_cast<int>(i), g) = fox_derivative(relators[i], g, G);
    if (!(F.d2 * F.d1).is_zero()) throw Error("Fox complex: a relator is not trivial in the group");
    return F;
}

IntComplex reduce(const ZPiChain& C, const Character& v) {
    IntComplex R;
    R.dims = C.ranks;
    for (const auto& m : C.d) {
        IntMatrix x(m.cols, m.rows);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) x(j, i) = augment(omega(m(i, j), v));
        R.d.push_back(x);
    }
    return R;
}

namespace {

std::map<Word, int, WordLess> index_of(const std::vector<Word>& elems) {
    std::map<Word, int, WordLess> idx;
    for (size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<int>(i);
    return idx;
}

}  // namespace

IntMatrix right_mult(const RingElt& x, const std::vector<Word>& elems) {
    auto idx = index_of(elems);
    int n = static_cast<int>(elems.size());
    IntMatrix M(n, n);
    for (int g = 0; g < n; ++g)
        for (const auto& [w, c] : x.terms()) M(idx.at(word_mul(elems[g], w, *x.group())), g) += c;
    return M;
}

IntMatrix left_mult(const RingElt& x, const std::vector<Word>& elems) {
    auto idx = index_of(elems);
    int n = static_cast<int>(elems.size());
    IntMatrix M(n, n);
    for (int g = 0; g < n; ++g)
        for (const auto& [w, c] : x.terms()) M(idx.at(word_mul(w, elems[g], *x.group())), g) += c;
    return M;
}

Expanded expand(const ZPiChain& C) {
    Expanded E;
    E.elems = elements(*C.G);
    int n = static_cast<int>(E.elems.size());
    for (int r : C.ranks) E.C.dims.push_back(r * n);
    for (const auto& m : C.d) {
        IntMatrix x(m.cols * n, m.rows * n);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) {
                IntMatrix R = right_mult(m(i, j), E.elems);
                for (int h = 0; h < n; ++h)
                    for (int g = 0; g < n; ++g) x(j * n + h, i * n + g) = R(h, g);
            }
        E.C.d.push_back(x);
    }
    if (C.G->num_generators() > 0) {
        IntMatrix L = left_mult(RingElt::generator(C.G, 0), E.elems);
        for (int r : C.ranks) {
            IntMatrix A(r * n, r * n);
            for (int i = 0; i < r; ++i)
                for (int h = 0; h < n; ++h)
                    for (int g = 0; g < n; ++g) A(i * n + h, i * n + g) = L(h, g);
            E.act.push_back(A);
        }
    }
    return E;
}

AbGroup homology_twisted(GroupPtr G, const Character& v, int k, int N) {
    if (k < 0) throw Error("negative homology degree");
    Resolution R = std_resolution(G, std::max(N, k + 1));
    return homology_at(reduce(R, v), k);
}

AbGroup tor1_aug_ideal(GroupPtr G, const Character& vbar, const std::vector<int>& gamma_prime) {
    GroupPtr H = sub_group(*G, gamma_prime);
    Character v = restrict_character(vbar, gamma_prime);
    if (H->trivial()) return AbGroup();
    // The tail P_{>=1}, shifted down one degree, resolves I(Gamma').
    Resolution R = std_resolution(H, 3);
    IntComplex full = reduce(R, v);
    IntComplex tail;
    tail.dims.assign(full.dims.begin() + 1, full.dims.end());
    tail.d.assign(full.d.begin() + 1, full.d.end());
    return homology_at(tail, 1);
}

int betti_f2(GroupPtr G, int k) {
    if (k < 0) throw Error("negative homology degree");
    Resolution R = std_resolution(G, k + 1);
    IntComplex C = reduce(R, Character::trivial(G));
    int in = k >= 1 ? rank_mod(C.d[k - 1], 2) : 0;
    int out = rank_mod(C.d[k], 2);
    return C.dims[k] - in - out;
}

}  // namespace q2
