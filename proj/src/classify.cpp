#include "q2/classify.hpp"

#include <fmt/format.h>

#include <regex>

#include "sections.hpp"

namespace q2 {

std::string render_w2type(W2Type t) {
    switch (t) {
        case W2Type::INF: return "inf";
        case W2Type::ZERO: return "zero";
        case W2Type::X2: return "x2";
        case W2Type::X2Y2: return "x2y2";
    }
    return "";
}

std::string FormDescriptor::render() const {
    return restricted ? fmt::format("restricted({}, {})", tag, rank) : fmt::format("general({})", tag);
}

std::string Manifest::render() const {
    std::string out = fmt::format("[manifest {}]\nsigma = {}\nks = {}\ns = {}\nw2type = {}\nform = {}\n", name, sigma, ks,
                                  s ? fmt::format("({},{})", s->first, s->second) : "n/a", render_w2type(w2type),
                                  form.render());
    if (kinv) out += "kinv = " + kinv->render() + "\n";
    return out;
}

namespace {

int parse_int(const std::string& v) {
    static const std::regex re(R"(\s*([+-]?\d{1,9})\s*)");
    std::smatch m;
    if (!std::regex_match(v, m, re)) throw ParseError("expected an integer", 1, 1, v);
    return std::stoi(m[1]);
}

int parse_bit(const std::string& v) {
    int b = parse_int(v);
    if (b != 0 && b != 1) throw ParseError("expected 0 or 1", 1, 1, v);
    return b;
}

std::optional<std::pair<int, int>> parse_s(const std::string& v) {
    static const std::regex na(R"(\s*n/a\s*)"), pair(R"(\s*\(\s*([01])\s*,\s*([01])\s*\)\s*)");
    std::smatch m;
    if (std::regex_match(v, na)) return std::nullopt;
    if (!std::regex_match(v, m, pair)) throw ParseError("expected (i,j) with entries 0 or 1, or n/a", 1, 1, v);
    return std::make_pair(std::stoi(m[1]), std::stoi(m[2]));
}

W2Type parse_w2(const std::string& v) {
    static const std::regex re(R"(\s*(inf|zero|x2|x2y2)\s*)");
    std::smatch m;
    if (!std::regex_match(v, m, re)) throw ParseError("expected inf, zero, x2 or x2y2", 1, 1, v);
    std::string t = m[1];
    return t == "inf" ? W2Type::INF : t == "zero" ? W2Type::ZERO : t == "x2" ? W2Type::X2 : W2Type::X2Y2;
}

FormDescriptor parse_form(const std::string& v) {
    static const std::regex r(R"(\s*restricted\(\s*([A-Za-z0-9_.+-]+)\s*,\s*(\d{1,6})\s*\)\s*)"),
        g(R"(\s*general\(\s*([A-Za-z0-9_.+-]+)\s*\)\s*)");
    std::smatch m;
    FormDescriptor f;
    if (std::regex_match(v, m, r)) {
        f.restricted = true;
        f.tag = m[1];
        f.rank = std::stoi(m[2]);
    } else if (std::regex_match(v, m, g)) {
        f.tag = m[1];
    } else {
        throw ParseError("expected restricted(TAG, RANK) or general(TAG)", 1, 1, v);
    }
    return f;
}

}  // namespace

std::vector<Manifest> parse_manifests(const std::string& text, const std::string& file) {
    using detail::with_location;
    std::vector<Manifest> out;
    for (const auto& sec : detail::read_sections(text, file)) {
        if (sec.kind != "manifest") continue;
        for (const auto& e : sec.entries) {
            static const std::vector<std::string> known{"sigma", "ks", "s", "w2type", "form", "kinv"};
            if (std::find(known.begin(), known.end(), e.key) == known.end())
                throw ParseError("unknown key", e.line, 1, e.key).located(file, 1, 1);
        }
        auto need = [&](const std::string& key) -> const detail::Entry& {
            const detail::Entry* e = sec.find(key);
            if (!e) throw ParseError("missing key '" + key + "'", sec.line, 1, sec.name).located(file, 1, 1);
            return *e;
        };
        Manifest m;
        m.name = sec.name;
        m.sigma = with_location(need("sigma"), file, parse_int);
        m.ks = with_location(need("ks"), file, parse_bit);
        m.s = with_location(need("s"), file, parse_s);
        m.w2type = with_location(need("w2type"), file, parse_w2);
        m.form = with_location(need("form"), file, parse_form);
        if (const auto* e = sec.find("kinv")) m.kinv = with_location(*e, file, [](const std::string& v) { return parse_kinvariant(v); });
        out.push_back(std::move(m));
    }
    return out;
}

Manifest load_manifest(const std::string& ref) {
    auto [path, name] = detail::split_ref(ref);
    auto all = parse_manifests(detail::read_file(path), path);
    if (name.empty()) {
        if (all.size() != 1) throw Error(fmt::format("{}: expected exactly one manifest, found {}; use FILE#NAME", path, all.size()));
        return all[0];
    }
    for (auto& m : all)
        if (m.name == name) return m;
    throw Error(fmt::format("{}: no manifest named '{}'", path, name));
}

std::vector<std::string> validate(const Manifest& m) {
    std::vector<std::string> v;
    if (m.w2type == W2Type::INF && m.s) v.push_back("s must be n/a when the universal cover is not spin (w2type = inf)");
    if (m.w2type != W2Type::INF && !m.s) v.push_back("s is required when the universal cover is spin");
    if (m.form.restricted && m.form.rank < 0) v.push_back("stably free rank must be nonnegative");
    if (m.w2type == W2Type::X2Y2) {
        if (m.sigma % 8 != 0) v.push_back(fmt::format("signature {} is not divisible by 8 (w2type = x2y2)", m.sigma));
        else if (m.s) {
            int rhs = (m.s->first + m.s->second + m.sigma / 8) % 2;
            if (rhs < 0) rhs += 2;
            if (m.ks != rhs)
                v.push_back(fmt::format("ks relation fails: ks = {} but s1 + s2 + sigma/8 = {} mod 2", m.ks, rhs));
        }
    }
    return v;
}

std::string Decision::render() const {
    switch (verdict) {
        case Verdict::HOMEOMORPHIC: return "HOMEOMORPHIC";
        case Verdict::NOT_HOMEOMORPHIC: return "NOT_HOMEOMORPHIC (" + reason + ")";
        case Verdict::UNDETERMINED: return "UNDETERMINED (" + reason + ")";
    }
    return "";
}

Decision decide_dinfty(const Manifest& a, const Manifest& b, bool unbased) {
    for (const Manifest* m : {&a, &b}) {
        auto v = validate(*m);
        if (!v.empty()) throw Error(fmt::format("manifest {} is invalid: {}", m->name, fmt::join(v, "; ")));
    }
    auto no = [](std::string r) { return Decision{Verdict::NOT_HOMEOMORPHIC, std::move(r)}; };
    auto unknown = [](std::string r) { return Decision{Verdict::UNDETERMINED, std::move(r)}; };

    if (a.sigma != b.sigma) return no("condition 1: signatures differ");
    if (a.w2type != b.w2type) return no("condition 1: w2-types differ");
    if (a.form.restricted && b.form.restricted && a.form.rank != b.form.rank)
        return no("condition 1: stably free ranks differ");
    if (a.ks != b.ks) return no("condition 2: ks differs");
    if (a.w2type == W2Type::X2Y2 && a.s != b.s) {
        bool swapped = a.s && b.s && a.s->first == b.s->second && a.s->second == b.s->first;
        if (unbased && swapped) return unknown("s agrees only after exchanging the two C2 factors");
        return no("condition 3: s differs");
    }
    if (a.form.restricted != b.form.restricted) return unknown("one form is restricted, the other general; quadratic 2-types not compared");
    if (a.form.tag != b.form.tag) return unknown("form tags differ; quadratic 2-type isomorphism not decided");
    if (a.kinv && b.kinv && a.kinv->parts.size() != b.kinv->parts.size())
        return unknown("k-invariant tuples have different lengths");
    return {Verdict::HOMEOMORPHIC, ""};
}

int stable_class_count(W2Type t) {
    switch (t) {
        case W2Type::X2Y2: return 4;
        case W2Type::X2:
        case W2Type::INF: return 2;
        case W2Type::ZERO: return 1;
    }
    return 0;
}

mpz_class scob_bound(const Decomposition& D, bool smooth, bool orientable) {
    if (!D.torsion_free()) throw Error("scob_bound: the group has torsion");
    int b1 = D.G->trivial() ? 0 : betti_f2(D.G, 1), b3 = D.G->trivial() ? 0 : betti_f2(D.G, 3);
    for (const auto& p : D.pd3) {
        b1 += p.b1;
        b3 += p.b3;
    }
    int e = b3;
    if (smooth) e += b1 + (orientable ? 0 : 1);
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

StructureSet structure_set_size(const ZPiComplex& C) {
    IntComplex R = reduce(C, Character::trivial(C.G));
    int dim = R.dims[2];
    int r2 = R.dims[1] > 0 && dim > 0 ? rank_mod(R.d[1], 2) : 0;
    int r3 = R.dims[3] > 0 && dim > 0 ? rank_mod(R.d[2], 2) : 0;
    StructureSet S;
    S.group = AbGroup(0, std::vector<mpz_class>(dim - r2 - r3, 2));
    const auto& f = C.G->factors;
    S.asserted = f.size() == 2 && f[0].kind == FactorKind::Cyclic && f[0].n == 2 && f[1].kind == FactorKind::Cyclic && f[1].n == 2;
    return S;
}

std::string Constants::render() const {
    return fmt::format("L4(Z[Dinf]) = Z^{}\nL5(Z[Dinf]) = {}\n", L4_rank, L5_rank == 0 ? "0" : fmt::format("Z^{}", L5_rank));
}

Constants constants() { return {}; }

}  // namespace q2
