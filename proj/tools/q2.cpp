#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "q2/classify.hpp"
#include "q2/forms.hpp"
#include "q2/fourman.hpp"
#include "q2/gamma.hpp"

using json = nlohmann::ordered_json;
using namespace q2;

namespace {

// Text lines and the structured report are built side by side.
struct Report {
    std::string command;
    std::vector<std::string> lines;
    json data = json::object();
    int status = 0;

    void line(std::string s) { lines.push_back(std::move(s)); }
    void emit(bool structured) const {
        if (structured) {
            json out = json::object();
            out["version"] = 1;
            out["command"] = command;
            out["status"] = status;
            out["result"] = data;
            std::cout << out.dump(2) << "\n";
        } else {
            for (const auto& l : lines) std::cout << l << "\n";
        }
    }
};

json abgroup_json(const AbGroup& A) {
    json t = json::array();
    for (const auto& q : A.torsion()) t.push_back(q.get_str());
    return {{"rank", A.rank()}, {"torsion", t}, {"text", A.render()}};
}

json kinv_json(const KInvariant& k) {
    json a = json::array();
    for (auto [x, y] : k.parts) a.push_back({x, y});
    return a;
}

Character character_or_trivial(const std::string& text, GroupPtr G) {
    return text.empty() ? Character::trivial(G) : parse_character(text, G);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// SPEC: '+'-separated summands Zpi, Z, Z-, Z(CHAR), I, I(CHAR).
BasedLattice parse_module(const std::string& spec, GroupPtr G, int L) {
    std::vector<std::string> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i <= spec.size(); ++i) {
        char c = i < spec.size() ? spec[i] : '+';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '+' && depth == 0) {
            parts.push_back(trim(spec.substr(start, i - start)));
            start = i + 1;
        }
    }
    std::optional<BasedLattice> M;
    size_t col = 1;
    for (const auto& p : parts) {
        BasedLattice piece;
        auto arg = [&](size_t open) {
            if (p.back() != ')') throw ParseError("missing ')'", 1, static_cast<int>(col + p.size()), p);
            return parse_character(p.substr(open + 1, p.size() - open - 2), G);
        };
        if (p == "Zpi") piece = regular(G, L);
        else if (p == "Z") piece = sign_module(Character::trivial(G));
        else if (p == "Z-") piece = sign_module(Character(G, std::vector<int>(G->num_generators(), -1)));
        else if (p.rfind("Z(", 0) == 0) piece = sign_module(arg(1));
        else if (p == "I") piece = aug_ideal(Character::trivial(G), L);
        else if (p.rfind("I(", 0) == 0) piece = aug_ideal(arg(1), L);
        else throw ParseError("unknown module summand (expected Zpi, Z, Z-, Z(CHAR), I or I(CHAR))", 1, static_cast<int>(col), p);
        M = M ? direct_sum(*M, piece) : piece;
        col += p.size() + 1;
    }
    return *M;
}

struct GroupInput {
    Decomposition D;
    std::vector<int> fclass;
    bool have_fclass = false;
};

// A literal decomposition, or a file of [group NAME] sections with keys
// pi, w, fclass (FILE or FILE#NAME).
GroupInput read_group_input(const std::string& ref, const std::string& wflag) {
    GroupInput in;
    std::string path = ref, name;
    if (auto h = ref.rfind('#'); h != std::string::npos) {
        path = ref.substr(0, h);
        name = ref.substr(h + 1);
    }
    if (!std::filesystem::is_regular_file(path)) {
        in.D = parse_decomposition(ref, wflag);
        return in;
    }
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str(), section;
    int lineno = 0, found = 0;
    std::string pi, w = wflag, fc;
    int pi_line = 0;
    std::istringstream ls(text);
    for (std::string line; std::getline(ls, line);) {
        ++lineno;
        std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.rfind("[group", 0) != 0) throw ParseError("expected [group NAME]", lineno, 1, t).located(path, 1, 1);
            section = trim(t.substr(6, t.size() - 7));
            continue;
        }
        bool active = name.empty() ? true : section == name;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", lineno, 1, t).located(path, 1, 1);
        std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
        if (!active) continue;
        if (key == "pi") {
            pi = val;
            pi_line = lineno;
            ++found;
        } else if (key == "w") {
            if (wflag.empty()) w = val;
        } else if (key == "fclass") {
            fc = val;
        } else {
            throw ParseError("unknown key (expected pi, w or fclass)", lineno, 1, key).located(path, 1, 1);
        }
    }
    if (found != 1) throw Error(fmt::format("{}: expected exactly one group{}", path, name.empty() ? "" : " named " + name));
    try {
        in.D = parse_decomposition(pi, w);
    } catch (const ParseError& e) {
        throw e.located(path, pi_line, 1);
    }
    if (!fc.empty()) {
        in.have_fclass = true;
        for (char c : fc)
            if (c == '0' || c == '1') in.fclass.push_back(c - '0');
    }
    return in;
}

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> b;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '0' || s[i] == '1') b.push_back(s[i] - '0');
        else if (s[i] != ',' && s[i] != ' ') throw ParseError("fclass bits must be 0 or 1", 1, static_cast<int>(i + 1), std::string(1, s[i]));
    }
    return b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic 2-type and classification toolkit for 4-manifold models"};
    app.require_subcommand(1);
    app.fallthrough();
    bool structured = false;
    app.add_flag("--json", structured, "Print the structured report instead of text");

    Report R;
    std::function<void()> run;

    auto* resolve = app.add_subcommand("resolve", "Twisted homology of a group");
    std::string r_group, r_twist;
    int r_depth = 5, r_degree = -1;
    resolve->add_option("GROUP", r_group)->required();
    resolve->add_option("--depth", r_depth, "Resolution length")->check(CLI::Range(2, 64));
    resolve->add_option("--twist", r_twist, "Character, e.g. \"t=-1,T=+1\"");
    resolve->add_option("--degree", r_degree, "Report one degree only")->check(CLI::NonNegativeNumber);
    resolve->callback([&] {
        run = [&] {
            auto G = parse_group(r_group);
            auto v = character_or_trivial(r_twist, G);
            R.data["group"] = G->render();
            R.data["twist"] = r_twist.empty() ? "trivial" : r_twist;
            R.line(fmt::format("group {}  twist {}", G->render(), r_twist.empty() ? "trivial" : r_twist));
            json table = json::object();
            int lo = r_degree >= 0 ? r_degree : 0, hi = r_degree >= 0 ? r_degree : r_depth - 1;
            for (int k = lo; k <= hi; ++k) {
                auto H = homology_twisted(G, v, k, std::max(r_depth, k + 2));
                table[fmt::format("H{}", k)] = abgroup_json(H);
                R.line(fmt::format("H{} = {}", k, H.render()));
            }
            R.data["homology"] = table;
        };
    });

    auto* gam = app.add_subcommand("gamma", "Gamma coinvariants and the kernel of B");
    std::string g_group, g_module, g_w;
    int g_L = 3;
    gam->add_option("GROUP", g_group)->required();
    gam->add_option("--module", g_module, "Summands Zpi, Z, Z-, Z(CHAR), I, I(CHAR) joined by +")->required();
    gam->add_option("-L", g_L, "Truncation radius for infinite groups")->check(CLI::Range(1, 12));
    gam->add_option("--w", g_w, "Orientation character");
    gam->callback([&] {
        run = [&] {
            auto G = parse_group(g_group);
            auto w = character_or_trivial(g_w, G);
            auto A = parse_module(g_module, G, g_L);
            auto GA = gamma(A);
            auto co = coinvariants(GA, w);
            R.data["group"] = G->render();
            R.data["module"] = g_module;
            R.data["rank"] = A.rank();
            R.data["truncated"] = A.truncated;
            R.data["gamma_coinvariants"] = abgroup_json(co);
            R.line(fmt::format("group {}  module {}  rank {}{}", G->render(), g_module, A.rank(), A.truncated ? fmt::format("  (truncated, L = {})", g_L) : ""));
            R.line(fmt::format("Z (x) Gamma = {}", co.render()));
            std::optional<BMapResult> B;
            std::string spec = trim(g_module);
            if (G->finite()) B = b_map(A, w);
            else if (spec == "I" || spec.rfind("I(", 0) == 0) B = b_map_ideal(spec == "I" ? Character::trivial(G) : parse_character(spec.substr(2, spec.size() - 3), G), w, g_L);
            if (B) {
                R.data["b_kernel"] = abgroup_json(B->kernel);
                R.line(fmt::format("ker B = {}", B->kernel.render()));
                R.line(fmt::format("torsion of coinvariants = {}", AbGroup(0, co.torsion()).render()));
                if (!B->warning.empty()) {
                    R.data["warning"] = B->warning;
                    R.line("warning: " + B->warning);
                }
            } else {
                R.data["b_kernel"] = nullptr;
                R.line("ker B: not available for this module over an infinite group");
            }
        };
    });

    auto* kin = app.add_subcommand("kinv", "pi_2 and k-invariant of a complex");
    std::string k_ref;
    kin->add_option("COMPLEXFILE", k_ref, "builtin:E, builtin:F, FILE or FILE#NAME")->required();
    kin->callback([&] {
        run = [&] {
            auto C = load_complex(k_ref);
            auto fp = pi2(C);
            auto raw = k_invariant(C, 0);
            auto alt = k_invariant(C, 1);
            R.data["complex"] = C.name;
            R.data["pi2"] = fp.render();
            R.data["k_raw"] = kinv_json(raw);
            R.data["lifts_agree"] = raw == alt;
            R.line(fmt::format("complex {} over {}", C.name, C.G->render()));
            R.line(fmt::format("pi2 = {}", fp.render()));
            R.line(fmt::format("k (declared basis) = {}", raw.render()));
            R.line(fmt::format("independent lifts agree: {}", raw == alt ? "yes" : "no"));
            if (C.form) {
                auto n = form_parameter(C);
                auto H = hyperbolic_change(n, raw);
                R.data["n"] = n.get_str();
                R.data["k"] = kinv_json(H.k);
                R.data["residue"] = H.residue;
                R.line(fmt::format("n = {}", n.get_str()));
                R.line(fmt::format("k = {}", H.k.render()));
                R.line(fmt::format("residue = {}", H.residue));
            }
            if (raw != alt) R.status = 1;
        };
    });

    auto* p2 = app.add_subcommand("pi2", "Stable class of pi_2 for a free product with PD3 factors");
    std::string p_ref, p_bits, p_w;
    int p_s = 0;
    p2->add_option("GROUPFILE", p_ref, "Decomposition such as \"C2*Z*PD3(M,b1=1)\", FILE or FILE#NAME")->required();
    p2->add_option("--fclass", p_bits, "One bit per ZxC2 factor");
    p2->add_option("--w", p_w, "Orientation character");
    p2->add_option("--free", p_s, "Rank of the free summand");
    p2->callback([&] {
        run = [&] {
            auto in = read_group_input(p_ref, p_w);
            std::vector<int> bits = p2->count("--fclass") ? parse_bits(p_bits) : in.fclass;
            auto P = stable_pi2(in.D, bits, p_s);
            R.data["group"] = in.D.render();
            R.data["kind"] = P.kind;
            R.data["shape"] = P.shape;
            R.data["terms"] = P.terms;
            R.data["render"] = P.render();
            R.line(fmt::format("pi = {}", in.D.render()));
            R.line(fmt::format("pi2 stably = {}", P.render()));
            if (!P.terms.empty()) R.line(fmt::format("summands: {}", fmt::join(P.terms, " + ")));
        };
    });

    auto* eul = app.add_subcommand("euler", "Euler characteristic <-> free rank for torsion-free groups");
    std::string e_group;
    std::optional<int> e_chi, e_s;
    eul->add_option("--group", e_group, "Decomposition with Z and PD3 factors")->required();
    auto* chi_opt = eul->add_option("--chi", e_chi);
    eul->add_option("--s", e_s)->excludes(chi_opt);
    eul->callback([&] {
        run = [&] {
            auto D = parse_decomposition(e_group, "");
            if (!e_chi && !e_s) throw Error("euler: give --chi or --s");
            int s = e_s ? *e_s : solve_s(*e_chi, D);
            int chi = e_chi ? *e_chi : euler_char(s, D);
            R.data["group"] = D.render();
            R.data["chi"] = chi;
            R.data["s"] = s;
            R.line(fmt::format("pi = {}", D.render()));
            R.line(fmt::format("chi = {}", chi));
            R.line(fmt::format("s = {}", s));
        };
    });

    auto* cls = app.add_subcommand("classify", "Decide homeomorphism over D-infinity");
    std::string c1, c2;
    bool unbased = false, strict = false;
    cls->add_option("M1", c1, "FILE#NAME")->required();
    cls->add_option("M2", c2, "FILE#NAME")->required();
    cls->add_flag("--unbased", unbased, "Allow exchanging the two C2 factors");
    cls->add_flag("--strict", strict, "Exit 1 on NOT_HOMEOMORPHIC");
    cls->callback([&] {
        run = [&] {
            auto a = load_manifest(c1), b = load_manifest(c2);
            std::vector<std::string> bad;
            for (const Manifest* m : {&a, &b})
                for (const auto& v : validate(*m)) bad.push_back(m->name + ": " + v);
            R.data["m1"] = a.name;
            R.data["m2"] = b.name;
            if (!bad.empty()) {
                R.data["violations"] = bad;
                for (const auto& v : bad) R.line("violation: " + v);
                R.status = 1;
                return;
            }
            auto d = decide_dinfty(a, b, unbased);
            R.data["decision"] = d.render();
            R.line(d.render());
            if (strict && d.verdict == Verdict::NOT_HOMEOMORPHIC) R.status = 1;
        };
    });

    auto* chk = app.add_subcommand("check", "Validate every manifest in a file");
    std::string ch_file;
    chk->add_option("FILE", ch_file)->required();
    chk->callback([&] {
        run = [&] {
            std::ifstream f(ch_file);
            if (!f) throw Error("cannot open " + ch_file);
            std::stringstream ss;
            ss << f.rdbuf();
            json all = json::object();
            for (const auto& m : parse_manifests(ss.str(), ch_file)) {
                auto v = validate(m);
                all[m.name] = v;
                R.line(fmt::format("{}: {}", m.name, v.empty() ? "ok" : fmt::format("{}", fmt::join(v, "; "))));
                if (!v.empty()) R.status = 1;
            }
            R.data["manifests"] = all;
        };
    });

    auto* bnd = app.add_subcommand("bounds", "s-cobordism class bounds, structure sets and L-group constants");
    std::string b_group, b_complex;
    bnd->add_option("--group", b_group, "Torsion-free decomposition");
    bnd->add_option("--complex", b_complex, "Complex for the structure set");
    bnd->callback([&] {
        run = [&] {
            auto K = constants();
            R.data["L4_rank"] = K.L4_rank;
            R.data["L5_rank"] = K.L5_rank;
            std::istringstream ks(K.render());
            for (std::string l; std::getline(ks, l);) R.line(l);
            if (!b_group.empty()) {
                auto D = parse_decomposition(b_group, "");
                auto top = scob_bound(D, false, true), so = scob_bound(D, true, true), sn = scob_bound(D, true, false);
                R.data["scob"] = {{"topological", top.get_str()}, {"smooth_orientable", so.get_str()}, {"smooth_nonorientable", sn.get_str()}};
                R.line(fmt::format("s-cobordism classes of {}: topological <= {}, smooth orientable <= {}, smooth nonorientable <= {}",
                                   D.render(), top.get_str(), so.get_str(), sn.get_str()));
            }
            if (!b_complex.empty()) {
                auto C = load_complex(b_complex);
                auto S = structure_set_size(C);
                R.data["structure_set"] = abgroup_json(S.group);
                R.data["structure_set_asserted"] = S.asserted;
                R.line(fmt::format("H2({}; F2) = {}{}", C.name, S.group.render(), S.asserted ? "  (structure set)" : "  (structure set identification only for Dinf)"));
            }
        };
    });

    auto* fox = app.add_subcommand("fox", "Fox complex of a presentation");
    std::string f_pres;
    fox->add_option("PRESENTATION", f_pres, "\"GROUP : r1, r2, ...\", e.g. \"Dinf : a^2, b^2\"")->required();
    fox->callback([&] {
        run = [&] {
            auto colon = f_pres.find(':');
            if (colon == std::string::npos) throw ParseError("expected GROUP : relators", 1, static_cast<int>(f_pres.size()), f_pres);
            auto G = parse_group(trim(f_pres.substr(0, colon)));
            std::vector<FreeWord> rels;
            std::vector<std::string> texts;
            size_t start = colon + 1;
            for (size_t i = start; i <= f_pres.size(); ++i) {
                if (i == f_pres.size() || f_pres[i] == ',') {
                    std::string r = trim(f_pres.substr(start, i - start));
                    try {
                        rels.push_back(parse_free_word(r, *G));
                    } catch (const ParseError& e) {
                        throw e.located("", 1, static_cast<int>(start) + 1);
                    }
                    texts.push_back(r);
                    start = i + 1;
                }
            }
            auto F = fox_complex(G, rels);
            bool ok = (F.d2 * F.d1).is_zero();
            R.data["group"] = G->render();
            R.data["relators"] = texts;
            R.data["d1"] = F.d1.render();
            R.data["d2"] = F.d2.render();
            R.data["d2d1_zero"] = ok;
            R.line(fmt::format("group {}", G->render()));
            R.line("d1 = " + F.d1.render());
            R.line("d2 = " + F.d2.render());
            R.line(fmt::format("d2 d1 = 0: {}", ok ? "yes" : "no"));
            if (!ok) R.status = 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    for (auto* sub : app.get_subcommands()) R.command = sub->get_name();
    try {
        run();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    R.emit(structured);
    return R.status;
}
