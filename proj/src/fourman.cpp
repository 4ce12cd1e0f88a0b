#include "q2/fourman.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <map>

#include "lexer.hpp"
#include "sections.hpp"

namespace q2 {

void ZPiComplex::validate() const {
    if (ranks.size() != 5) throw Error("complex: ranks C0..C4 required");
    ZPiChain::validate();
    if (!(homology_at(reduce(*this, Character::trivial(G)), 0) == AbGroup(1, {})))
        throw Error("complex: H0 with integer coefficients is not Z");
    if (h2basis) {
        if (h2basis->cols != ranks[2]) throw Error("complex: h2basis rows must have length rank C2");
        RingMatrix b = *h2basis * d[1];
        if (!b.is_zero()) throw Error("complex: h2basis vectors are not cycles");
    }
    if (form) {
        int h = h2basis ? h2basis->rows : form->rows;
        if (form->rows != h || form->cols != h) throw Error("complex: form must be square on the declared basis");
    }
}

ZPiComplex builtin(const std::string& name) {
    if (name != "E" && name != "F") throw Error("unknown built-in complex '" + name + "' (expected E or F)");
    auto G = parse_group("C2");
    ZPiComplex C;
    C.name = name;
    C.G = G;
    C.ranks = {1, 1, 2, 1, 1};
    C.d = {parse_ring_matrix("[[T - 1]]", G), parse_ring_matrix("[[T + 1], [0]]", G),
           parse_ring_matrix("[[0, T + 1]]", G), parse_ring_matrix("[[T - 1]]", G)};
    int n = name == "E" ? -2 : -4;
    C.form = parse_ring_matrix(fmt::format("[[{}{:+d}*T, 1 - T], [1 - T, 0]]", n, -n), G);
    C.h2basis = parse_ring_matrix("[[1 - T, 0], [0, 1]]", G);
    C.validate();
    return C;
}

namespace {

int parse_rank(const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a nonnegative integer", 1, 1, v);
    return std::stoi(v);
}

}  // namespace

std::vector<ZPiComplex> parse_complexes(const std::string& text, const std::string& file) {
    using detail::with_location;
    std::vector<ZPiComplex> out;
    for (const auto& sec : detail::read_sections(text, file)) {
        if (sec.kind != "complex") continue;
        auto need = [&](const std::string& key) -> const detail::Entry& {
            const detail::Entry* e = sec.find(key);
            if (!e) throw ParseError("missing key '" + key + "'", sec.line, 1, sec.name).located(file, 1, 1);
            return *e;
        };
        for (const auto& e : sec.entries) {
            static const std::vector<std::string> known{"group", "C0", "C1", "C2", "C3", "C4", "d1", "d2", "d3", "d4", "form", "h2basis"};
            if (std::find(known.begin(), known.end(), e.key) == known.end())
                throw ParseError("unknown key", e.line, 1, e.key).located(file, 1, 1);
        }
        ZPiComplex C;
        C.name = sec.name;
        const auto& ge = need("group");
        C.G = with_location(ge, file, [](const std::string& v) { return parse_group(v); });
        for (int k = 0; k <= 4; ++k) C.ranks.push_back(with_location(need(fmt::format("C{}", k)), file, parse_rank));
        for (int k = 1; k <= 4; ++k) {
            const auto& e = need(fmt::format("d{}", k));
            C.d.push_back(with_location(e, file, [&](const std::string& v) {
                return parse_ring_matrix(v, C.G, C.ranks[k], C.ranks[k - 1]);
            }));
        }
        if (const auto* e = sec.find("h2basis"))
            C.h2basis = with_location(*e, file, [&](const std::string& v) { return parse_ring_matrix(v, C.G, -1, C.ranks[2]); });
        if (const auto* e = sec.find("form"))
            C.form = with_location(*e, file, [&](const std::string& v) { return parse_ring_matrix(v, C.G); });
        try {
            C.validate();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& err) {
            throw ParseError(err.what(), sec.line, 1, sec.name).located(file, 1, 1);
        }
        out.push_back(std::move(C));
    }
    return out;
}

std::string render_complex(const ZPiComplex& C) {
    std::string s = fmt::format("[complex {}]\ngroup = {}\n", C.name, C.G->render());
    for (int k = 0; k <= 4; ++k) s += fmt::format("C{} = {}\n", k, C.ranks[k]);
    for (int k = 1; k <= 4; ++k) s += fmt::format("d{} = {}\n", k, C.d[k - 1].render());
    if (C.form) s += "form = " + C.form->render() + "\n";
    if (C.h2basis) s += "h2basis = " + C.h2basis->render() + "\n";
    return s;
}

ZPiComplex load_complex(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin(ref.substr(8));
    auto [path, name] = detail::split_ref(ref);
    if (!std::filesystem::exists(path) && std::filesystem::exists(ref)) {
        path = ref;
        name.clear();
    }
    auto all = parse_complexes(detail::read_file(path), path);
    if (name.empty()) {
        if (all.size() != 1) throw Error(fmt::format("{}: expected exactly one complex, found {}; use FILE#NAME", path, all.size()));
        return all[0];
    }
    for (auto& c : all)
        if (c.name == name) return c;
    throw Error(fmt::format("{}: no complex named '{}'", path, name));
}

AbGroup integral_homology(const ZPiComplex& C, int k) {
    return homology_at(reduce(C, Character::trivial(C.G)), k);
}

namespace {

struct H2Data {
    Expanded X;
    Subquotient S;
    IntMatrix basis;  // ambient columns: the basis in use
    IntMatrix P;      // free coordinates of that basis (unimodular)
    std::vector<IntMatrix> left;  // left action of each generator on expanded C2
};

IntMatrix expand_row(const RingMatrix& M, int row, const std::vector<Word>& elems) {
    int n = static_cast<int>(elems.size());
    IntMatrix v(M.cols * n, 1);
    for (int j = 0; j < M.cols; ++j)
        for (int g = 0; g < n; ++g) v(j * n + g, 0) = M(row, j).coeff(elems[g]);
    return v;
}

H2Data h2_data(const ZPiComplex& C) {
    if (!C.G->finite()) throw Error("pi_2: only finite fundamental groups are supported");
    H2Data D;
    D.X = expand(C);
    D.S = subquotient(D.X.C.d[1], D.X.C.d[2]);
    if (!D.S.torsion.empty()) throw Error("pi_2: H_2(C; Z pi) has Z-torsion, not a lattice");
    int n = static_cast<int>(D.X.elems.size()), r2 = C.ranks[2], h = D.S.free_rank();
    for (int s = 0; s < C.G->num_generators(); ++s) {
        IntMatrix L = left_mult(RingElt::generator(C.G, s), D.X.elems), A(r2 * n, r2 * n);
        for (int i = 0; i < r2; ++i)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) A(i * n + a, i * n + b) = L(a, b);
        D.left.push_back(A);
    }
    if (C.h2basis) {
        if (C.h2basis->rows != h) throw Error(fmt::format("h2basis has {} vectors but H_2 has Z-rank {}", C.h2basis->rows, h));
        D.basis = IntMatrix(r2 * n, 0);
        for (int i = 0; i < h; ++i) D.basis = D.basis.hcat(expand_row(*C.h2basis, i, D.X.elems));
        D.P = IntMatrix(h, 0);
        for (int i = 0; i < h; ++i) D.P = D.P.hcat(D.S.project(D.basis.column(i)));
        if (h > 0 && abs(determinant(D.P)) != 1) throw Error("h2basis does not give a Z-basis of H_2");
    } else {
        D.basis = D.S.free_basis;
        D.P = IntMatrix::identity(h);
    }
    return D;
}

// Coordinates of a cycle in the basis in use.
IntMatrix coords(const H2Data& D, const IntMatrix& z) {
    return unimodular_inverse(D.P) * D.S.project(z);
}

}  // namespace

BasedLattice h2_lattice(const ZPiComplex& C) {
    H2Data D = h2_data(C);
    int h = D.S.free_rank();
    std::vector<IntMatrix> act;
    for (const auto& A : D.left) {
        IntMatrix M(h, h);
        for (int j = 0; j < h; ++j) {
            IntMatrix c = coords(D, A * D.basis.column(j));
            for (int i = 0; i < h; ++i) M(i, j) = c(i, 0);
        }
        act.push_back(M);
    }
    std::vector<std::string> labels;
    for (int i = 0; i < h; ++i) labels.push_back(fmt::format("u{}", i + 1));
    return make_lattice(C.G, act, labels);
}

Fingerprint2 pi2(const ZPiComplex& C) { return fingerprint2(h2_lattice(C)); }

std::string KInvariant::render() const {
    std::vector<std::string> p;
    for (auto [a, b] : parts) p.push_back(fmt::format("({},{})", a, b));
    if (p.size() == 1) return p[0];
    return fmt::format("({})", fmt::join(p, ","));
}

KInvariant parse_kinvariant(const std::string& text) {
    using detail::Tok;
    detail::TokenStream ts(detail::lex(text, "(),"));
    KInvariant k;
    auto bit = [&]() {
        if (ts.peek().kind != Tok::Int || (ts.peek().text != "0" && ts.peek().text != "1")) ts.fail("expected 0 or 1");
        return ts.next().text == "1" ? 1 : 0;
    };
    auto pair = [&]() {
        ts.expect("(");
        int a = bit();
        ts.expect(",");
        int b = bit();
        ts.expect(")");
        k.parts.emplace_back(a, b);
    };
    ts.expect("(");
    if (ts.at("(")) {
        pair();
        while (ts.accept(",")) pair();
        ts.expect(")");
    } else if (!ts.at(")")) {
        int a = bit();
        ts.expect(",");
        int b = bit();
        ts.expect(")");
        k.parts.emplace_back(a, b);
    } else {
        ts.expect(")");
    }
    if (ts.peek().kind != Tok::End) ts.fail("trailing input");
    return k;
}

KInvariant k_invariant(const ZPiComplex& C, int lift) {
    const GroupSpec& G = *C.G;
    if (G.factors.size() != 1 || G.factors[0].kind != FactorKind::Cyclic || G.factors[0].n != 2)
        throw Error("k_invariant: the fundamental group must be C2");
    if (C.ranks[0] != 1) throw Error("k_invariant: C0 must have rank 1");
    H2Data D = h2_data(C);
    int h = D.S.free_rank();
    KInvariant k;
    if (h == 0) return k;
    if (h != 2) throw Error("k_invariant: pi_2 must have rank 2 over Z");
    for (int j = 0; j < h; ++j)
        if (!(coords(D, D.left[0] * D.basis.column(j)) == IntMatrix(h, 1) - coords(D, D.basis.column(j))))
            throw Error("k_invariant: T must act by -1 on the declared H2 basis");

    Expanded P = expand(std_resolution(C.G, 4));
    const auto& elems = D.X.elems;
    int n = static_cast<int>(elems.size());
    int one = static_cast<int>(std::find(elems.begin(), elems.end(), Word{}) - elems.begin());
    auto extend = [&](const IntMatrix& x, int rank) {
        // equivariant extension: column g is g . x
        IntMatrix F(x.rows(), n);
        for (int g = 0; g < n; ++g) {
            IntMatrix L = left_mult(RingElt::word(C.G, elems[g]), elems), A(rank * n, rank * n);
            for (int i = 0; i < rank; ++i)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) A(i * n + a, i * n + b) = L(a, b);
            IntMatrix y = A * x;
            for (int i = 0; i < x.rows(); ++i) F(i, g) = y(i, 0);
        }
        return F;
    };
    IntMatrix F = IntMatrix::identity(n);  // f0 on Z pi
    for (int deg = 1; deg <= 2; ++deg) {
        IntMatrix target = F * P.C.d[deg - 1].column(one);
        auto x = solve(D.X.C.d[deg - 1], target);
        if (!x) throw Error("k_invariant: no chain-map lift exists (H_1(C; Z pi) is nonzero?)");
        if (lift) {
            IntMatrix K = kernel_basis(D.X.C.d[deg - 1]);
            for (int c = 0; c < K.cols(); ++c)
                for (int i = 0; i < K.rows(); ++i) (*x)(i, 0) += mpz_class(lift * (c + deg)) * K(i, c);
        }
        F = extend(*x, C.ranks[deg]);
    }
    IntMatrix z = F * P.C.d[2].column(one);
    if (!(D.X.C.d[1] * z).is_zero()) throw Error("internal error: k-invariant representative is not a cycle");
    IntMatrix c = coords(D, z);
    auto mod2 = [](const mpz_class& a) { return mpz_class(abs(a) % 2) == 1 ? 1 : 0; };
    k.parts.emplace_back(mod2(c(0, 0)), mod2(c(1, 0)));
    return k;
}

mpz_class form_parameter(const ZPiComplex& C) {
    if (!C.form || C.form->rows != 2) throw Error("form_parameter: a 2x2 declared form is required");
    const RingElt& a = (*C.form)(0, 0);
    Word T = C.G->generator_word(0);
    mpz_class n = a.coeff(Word{});
    if (a.coeff(T) != -n || a.terms().size() > 2) throw Error("form_parameter: diagonal entry is not of the form n(1 - T)");
    return n;
}

HyperbolicChange hyperbolic_change(const mpz_class& n, const KInvariant& k) {
    if (n % 2 != 0) throw Error("hyperbolic_change: n is odd (universal cover not S2 x S2-like)");
    if (k.parts.size() != 1) throw Error("hyperbolic_change: expected a single (a,b) pair");
    HyperbolicChange H;
    mpz_class r = ((n % 4) + 4) % 4;
    H.residue = static_cast<int>(r.get_si());
    auto [a, b] = k.parts[0];
    // e1 -> e1 - (n/2) e2
    mpz_class half = n / 2;
    mpz_class nb = (mpz_class(a) * half + b) % 2;
    if (nb < 0) nb += 2;
    H.k.parts.emplace_back(a, static_cast<int>(nb.get_si()));
    return H;
}

KInvariant connected_sum_k(const std::vector<KInvariant>& parts) {
    KInvariant k;
    for (const auto& p : parts) k.parts.insert(k.parts.end(), p.parts.begin(), p.parts.end());
    return k;
}

KInvariant swap_factor(const KInvariant& k, int i) {
    if (i < 0 || i >= static_cast<int>(k.parts.size())) throw Error("swap_factor: factor index out of range");
    KInvariant s = k;
    std::swap(s.parts[i].first, s.parts[i].second);
    return s;
}

bool k_equivalent(const KInvariant& a, const KInvariant& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (size_t i = 0; i < a.parts.size(); ++i) {
        auto p = a.parts[i], q = b.parts[i];
        if (p != q && p != std::make_pair(q.second, q.first)) return false;
    }
    return true;
}

std::string Decomposition::render() const {
    std::vector<std::string> parts;
    if (!G->trivial()) parts.push_back(G->render());
    for (const auto& p : pd3)
        parts.push_back(fmt::format("PD3({},b1={},b3={},w={:+d},u={:+d})", p.name, p.b1, p.b3, p.w, p.u));
    if (parts.empty()) return "1";
    return fmt::format("{}", fmt::join(parts, "*"));
}

bool Decomposition::torsion_free() const {
    for (const auto& f : G->factors)
        if (f.kind != FactorKind::Infinite) return false;
    return true;
}

namespace {

PD3Symbol parse_pd3(const std::string& body, int col0) {
    using detail::Tok;
    detail::TokenStream ts(detail::lex(body, "(),=+-"));
    PD3Symbol p;
    try {
        if (ts.peek().kind != Tok::Ident || ts.peek().text != "PD3") ts.fail("expected PD3");
        ts.next();
        ts.expect("(");
        if (ts.peek().kind != Tok::Ident) ts.fail("expected a name for the PD3 factor");
        p.name = ts.next().text;
        while (ts.accept(",")) {
            if (ts.peek().kind != Tok::Ident) ts.fail("expected b1, b3, w or u");
            auto key = ts.next();
            ts.expect("=");
            int sign = 1;
            if (ts.accept("-")) sign = -1;
            else ts.accept("+");
            if (ts.peek().kind != Tok::Int) ts.fail("expected an integer");
            int val = sign * std::stoi(ts.next().text);
            if (key.text == "b1") p.b1 = val;
            else if (key.text == "b3") p.b3 = val;
            else if (key.text == "w" || key.text == "u") {
                if (val != 1 && val != -1) throw ParseError("orientation values must be +1 or -1", key.line, key.col, key.text);
                (key.text == "w" ? p.w : p.u) = val;
            } else {
                throw ParseError("unknown PD3 attribute", key.line, key.col, key.text);
            }
        }
        ts.expect(")");
        if (ts.peek().kind != Tok::End) ts.fail("trailing input");
        if (p.b1 < 0 || p.b3 < 0) throw ParseError("Betti numbers must be nonnegative", 1, 1, p.name);
    } catch (const ParseError& e) {
        throw e.located("", 1, col0);
    }
    return p;
}

}  // namespace

Decomposition parse_decomposition(const std::string& text, const std::string& wtext) {
    std::vector<std::pair<std::string, int>> pieces;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        char c = i < text.size() ? text[i] : '*';
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == '*' && depth == 0) {
            pieces.emplace_back(text.substr(start, i - start), static_cast<int>(start) + 1);
            start = i + 1;
        }
    }
    Decomposition D;
    std::string rest;
    for (auto& [p, col] : pieces) {
        size_t a = p.find_first_not_of(" \t");
        if (a != std::string::npos && p.compare(a, 3, "PD3") == 0) {
            D.pd3.push_back(parse_pd3(p.substr(a), col + static_cast<int>(a)));
        } else {
            if (!rest.empty()) rest += "*";
            rest += p;
        }
    }
    for (size_t i = 0; i < D.pd3.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (D.pd3[i].name == D.pd3[j].name) throw Error("duplicate PD3 factor name '" + D.pd3[i].name + "'");
    bool blank = rest.find_first_not_of(" \t") == std::string::npos;
    D.G = blank ? make_group(GroupSpec{}) : parse_group(rest);
    D.w = wtext.empty() ? Character::trivial(D.G) : parse_character(wtext, D.G);
    return D;
}

std::string StablePi2Class::render() const {
    std::string free = s == 0 ? "" : (s > 0 ? fmt::format("Zpi^{} + ", s) : fmt::format("(after adding {} copies of Zpi) ", -s));
    if (kind != "induced") return free + kind;
    return free + shape;
}

StablePi2Class stable_pi2(const Decomposition& D, const std::vector<int>& fclass, int s) {
    const GroupSpec& G = *D.G;
    int t = 0;
    for (const auto& f : G.factors)
        if (f.kind == FactorKind::ZxC2) ++t;
    if (static_cast<int>(fclass.size()) != t)
        throw Error(fmt::format("fclass needs one bit per ZxC2 factor ({} given, {} expected)", fclass.size(), t));
    // admissibility: w is trivial on elements of finite order
    int gen = 0;
    for (const auto& f : G.factors) {
        bool bad = (f.kind == FactorKind::Cyclic && D.w[gen] == -1) || (f.kind == FactorKind::ZxC2 && D.w[gen + 1] == -1);
        if (bad)
            throw Error(fmt::format("inadmissible orientation character: w must be trivial on every element of finite order (w({}) = -1)",
                                    f.kind == FactorKind::Cyclic ? f.names[0] : f.names[1]));
        gen += static_cast<int>(f.names.size());
    }

    StablePi2Class P;
    P.s = s;
    int k = 0, nfac = static_cast<int>(G.factors.size());
    bool whole_gamma = true, whole_gprime = true, v_trivial = true;
    gen = 0;
    for (int i = 0; i < nfac; ++i) {
        const Factor& f = G.factors[i];
        std::string label = sub_group(G, {i})->render();
        switch (f.kind) {
            case FactorKind::Cyclic:
                P.gamma.push_back(label);
                P.gamma_prime.push_back(label);
                P.terms.push_back("Ind I(" + label + ")");
                P.terms.push_back("Ind I(" + label + ")");
                break;
            case FactorKind::Infinite:
                whole_gamma = whole_gprime = false;
                break;
            case FactorKind::ZxC2:
                if (fclass[k++]) {
                    whole_gamma = whole_gprime = false;
                } else {
                    // v = w v', v' the projection to C2
                    int vt = D.w[gen], vT = -D.w[gen + 1];
                    P.gamma.push_back(label);
                    P.gamma_prime.push_back(label);
                    P.terms.push_back(fmt::format("Ind I({})^({}={:+d},{}={:+d})", label, f.names[0], vt, f.names[1], vT));
                    P.terms.push_back("Ind I(" + label + ")");
                    if (vt != 1 || vT != 1) v_trivial = false;
                }
                break;
        }
        gen += static_cast<int>(f.names.size());
    }
    for (const auto& p : D.pd3) {
        std::string label = "PD3:" + p.name;
        P.gamma.push_back(label);
        whole_gprime = false;
        int v = p.w * p.u;
        if (v != 1) v_trivial = false;
        P.terms.push_back(fmt::format("Ind I({})^({:+d})", label, v));
    }
    std::sort(P.terms.begin(), P.terms.end());
    if (P.gamma.empty()) {
        bool single_z = nfac == 1 && G.factors[0].kind == FactorKind::Infinite && D.pd3.empty();
        P.kind = single_z ? "free" : "stably free";
        P.shape = P.kind;
        return P;
    }
    P.kind = "induced";
    auto join = [](const std::vector<std::string>& v) { return fmt::format("{}", fmt::join(v, "*")); };
    std::string g1 = whole_gamma ? "I(pi)" : "Ind I(" + join(P.gamma) + ")";
    g1 += v_trivial ? "" : "^v";
    std::string g2 = P.gamma_prime.empty() ? "" : (whole_gprime ? "I(pi)" : "Ind I(" + join(P.gamma_prime) + ")");
    P.shape = g2.empty() ? g1 : g1 + " + " + g2;
    return P;
}

int euler_char(int s, const Decomposition& D) {
    if (!D.torsion_free()) throw Error("euler_char: the decomposition must be torsion-free (Z and PD3 factors only)");
    int r = static_cast<int>(D.G->factors.size()), m = static_cast<int>(D.pd3.size());
    int beta1 = r;
    for (const auto& p : D.pd3) beta1 += p.b1;
    int dim = s + beta1;  // F_2 (x) pi_2 for Z pi^s + I pi^v
    return 2 + dim - beta1 - m - r;
}

int solve_s(int chi, const Decomposition& D) {
    if (!D.torsion_free()) throw Error("solve_s: the decomposition must be torsion-free (Z and PD3 factors only)");
    int r = static_cast<int>(D.G->factors.size()), m = static_cast<int>(D.pd3.size());
    return chi + m + r - 2;
}

}  // namespace q2
