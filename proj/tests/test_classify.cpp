#include <fmt/format.h>

#include <random>

#include "doctest.h"
#include "q2/classify.hpp"

using namespace q2;

namespace {

std::vector<Manifest> family() {
    auto all = parse_manifests(R"(
[manifest EE]
sigma = 0
ks = 0
s = (0,0)
w2type = x2y2
form = restricted(H, 0)
[manifest sEsE]
sigma = 0
ks = 0
s = (1,1)
w2type = x2y2
form = restricted(H, 0)
[manifest EsE]
sigma = 0
ks = 1
s = (0,1)
w2type = x2y2
form = restricted(H, 0)
[manifest sEE]
sigma = 0
ks = 1
s = (1,0)
w2type = x2y2
form = restricted(H, 0)
)", "family");
    return all;
}

Manifest cp2(const std::string& name, const std::string& kinv) {
    return parse_manifests(fmt::format("[manifest {}]\nsigma = 1\nks = 0\ns = n/a\nw2type = inf\nform = restricted(cp2, 1)\nkinv = {}\n", name, kinv))[0];
}

}  // namespace

TEST_CASE("manifest files") {
    auto f = family();
    REQUIRE(f.size() == 4);
    CHECK(f[1].s == std::make_pair(1, 1));
    for (const auto& m : f) CHECK(parse_manifests(m.render())[0].render() == m.render());
    auto c = cp2("X", "((1,1),(1,0))");
    CHECK_FALSE(c.s);
    CHECK(c.kinv->parts.size() == 2);
    CHECK(parse_manifests(c.render())[0].render() == c.render());
    try {
        parse_manifests("[manifest A]\nsigma = 0\nks = 0\ns = (0,2)\nw2type = x2y2\nform = general(Q)\n", "m.txt");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.file == "m.txt");
        CHECK(e.line == 4);
        CHECK(e.token == "(0,2)");
    }
    CHECK_THROWS_AS(parse_manifests("[manifest A]\nsigma = 0\n"), ParseError);
    CHECK_THROWS_AS(parse_manifests("[manifest A]\nsigma = x\nks = 0\ns = n/a\nw2type = inf\nform = general(Q)\n"), ParseError);
    CHECK_THROWS_AS(parse_manifests("[manifest A]\nsigma = 0\nks = 0\ns = n/a\nw2type = inf\nform = special(Q)\n"), ParseError);
}

TEST_CASE("manifest validation") {
    for (const auto& m : family()) CHECK(validate(m).empty());
    auto fake = family()[0];
    fake.sigma = 8;
    auto v = validate(fake);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("ks relation") != std::string::npos);
    fake.sigma = 4;
    CHECK(validate(fake).size() == 1);
    auto c = cp2("X", "(1,0)");
    CHECK(validate(c).empty());
    c.s = std::make_pair(0, 0);
    CHECK(validate(c).size() == 1);
    // ks relation oracle over all small inputs
    for (int sigma = -16; sigma <= 16; sigma += 8)
        for (int ks = 0; ks < 2; ++ks)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2) {
                    Manifest m = family()[0];
                    m.sigma = sigma;
                    m.ks = ks;
                    m.s = std::make_pair(s1, s2);
                    bool ok = ((s1 + s2 + sigma / 8) % 2 + 2) % 2 == ks;
                    CHECK(validate(m).empty() == ok);
                }
}

TEST_CASE("decision regressions") {
    auto f = family();
    const auto &EE = f[0], &sEsE = f[1], &EsE = f[2], &sEE = f[3];
    CHECK(decide_dinfty(EE, sEsE).render() == "NOT_HOMEOMORPHIC (condition 3: s differs)");
    CHECK(decide_dinfty(sEE, EsE).verdict == Verdict::NOT_HOMEOMORPHIC);
    CHECK(decide_dinfty(sEE, EsE, true).verdict == Verdict::UNDETERMINED);
    CHECK(decide_dinfty(EE, sEsE, true).verdict == Verdict::NOT_HOMEOMORPHIC);
    CHECK(decide_dinfty(EE, EsE).render() == "NOT_HOMEOMORPHIC (condition 2: ks differs)");
    CHECK(decide_dinfty(cp2("EF", "((1,1),(1,0))"), cp2("FF", "((1,0),(1,0))")).verdict == Verdict::HOMEOMORPHIC);
    // exactly the diagonal pairs are homeomorphic
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            auto d = decide_dinfty(f[i], f[j]);
            CHECK((d.verdict == Verdict::HOMEOMORPHIC) == (i == j));
            CHECK(d.render() == decide_dinfty(f[j], f[i]).render());
        }
    auto bad = EE;
    bad.sigma = 8;
    CHECK_THROWS_AS(decide_dinfty(bad, EE), Error);
}

TEST_CASE("decision tree on random manifests") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> bit(0, 1), w(0, 3), tag(0, 2), rk(0, 2);
    const char* tags[] = {"A", "B", "C"};
    auto random_manifest = [&]() {
        Manifest m;
        m.w2type = static_cast<W2Type>(w(rng));
        m.sigma = m.w2type == W2Type::X2Y2 ? 8 * (bit(rng) - bit(rng)) : bit(rng) - bit(rng);
        if (m.w2type != W2Type::INF) m.s = std::make_pair(bit(rng), bit(rng));
        m.ks = bit(rng);
        if (m.w2type == W2Type::X2Y2) m.ks = ((m.s->first + m.s->second + m.sigma / 8) % 2 + 2) % 2;
        m.form.restricted = bit(rng);
        m.form.tag = tags[tag(rng)];
        if (m.form.restricted) m.form.rank = rk(rng);
        return m;
    };
    for (int t = 0; t < 500; ++t) {
        auto a = random_manifest(), b = random_manifest();
        REQUIRE(validate(a).empty());
        REQUIRE(validate(b).empty());
        auto d = decide_dinfty(a, b);
        CHECK(d.render() == decide_dinfty(b, a).render());
        CHECK(decide_dinfty(a, a).verdict == Verdict::HOMEOMORPHIC);
        // never homeomorphic when a complete invariant differs
        if (a.sigma != b.sigma || a.ks != b.ks || a.w2type != b.w2type || (a.w2type == W2Type::X2Y2 && a.s != b.s))
            CHECK(d.verdict == Verdict::NOT_HOMEOMORPHIC);
        if (d.verdict == Verdict::HOMEOMORPHIC) CHECK(a.form == b.form);
        // adding CP2 to a restricted pair with equal ks
        if (a.form.restricted && b.form.restricted && a.ks == b.ks && a.form.tag == b.form.tag && a.form.rank == b.form.rank) {
            Manifest a2 = a, b2 = b;
            for (Manifest* m : {&a2, &b2}) {
                m->w2type = W2Type::INF;
                m->s.reset();
                m->sigma = 1;
                m->form.rank += 1;
            }
            CHECK(decide_dinfty(a2, b2).verdict == Verdict::HOMEOMORPHIC);
        }
    }
}

TEST_CASE("counts, bounds and constants") {
    CHECK(stable_class_count(W2Type::X2Y2) == 4);
    CHECK(stable_class_count(W2Type::X2) == 2);
    CHECK(stable_class_count(W2Type::INF) == 2);
    CHECK(stable_class_count(W2Type::ZERO) == 1);
    CHECK(scob_bound(parse_decomposition("PD3(M)", ""), false, true) == 2);
    CHECK(scob_bound(parse_decomposition("Z", ""), false, true) == 1);
    CHECK(scob_bound(parse_decomposition("Z", ""), true, true) == 2);
    CHECK(scob_bound(parse_decomposition("PD3(M,b1=3)", ""), true, true) == 16);
    CHECK(scob_bound(parse_decomposition("PD3(M,b1=3)", ""), true, false) == 32);
    CHECK(scob_bound(parse_decomposition("Z*PD3(M)", ""), false, true) == 2);
    CHECK_THROWS_AS(scob_bound(parse_decomposition("C2*PD3(M)", ""), false, true), Error);
    CHECK(constants().L4_rank == 3);
    CHECK(constants().L5_rank == 0);
    CHECK(constants().render() == "L4(Z[Dinf]) = Z^3\nL5(Z[Dinf]) = 0\n");
}

TEST_CASE("structure set") {
    auto S = structure_set_size(builtin("E"));
    CHECK(S.group == AbGroup(0, {2, 2}));
    CHECK_FALSE(S.asserted);
    CHECK(structure_set_size(builtin("F")).group == AbGroup(0, {2, 2}));
    // a complex over Dinf with no 2-cells
    auto zero = parse_complexes("[complex Z]\ngroup = Dinf\nC0 = 1\nC1 = 0\nC2 = 0\nC3 = 0\nC4 = 1\n"
                                "d1 = []\nd2 = []\nd3 = []\nd4 = []\n", "mem");
    REQUIRE(zero.size() == 1);
    auto T = structure_set_size(zero[0]);
    CHECK(T.group.trivial());
    CHECK(T.asserted);
}
