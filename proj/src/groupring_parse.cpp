#include <fmt/format.h>

#include <cctype>
#include <regex>
#include <set>

#include "lexer.hpp"
#include "q2/groupring.hpp"

namespace q2 {

namespace detail {

std::vector<Token> lex(const std::string& s, const std::string& punct) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        unsigned char c = s[i];
        if (std::isspace(c)) {
            adv(1);
            continue;
        }
        size_t j = i;
        if (std::isalpha(c) || c == '_') {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), line, col});
        } else if (std::isdigit(c)) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), line, col});
        } else if (punct.find(static_cast<char>(c)) != std::string::npos) {
            j = i + 1;
            out.push_back({Tok::Punct, s.substr(i, 1), line, col});
        } else {
            throw ParseError("unexpected character", line, col, s.substr(i, 1));
        }
        adv(j - i);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

}  // namespace detail

using detail::Tok;
using detail::TokenStream;

namespace {

mpz_class mod(const mpz_class& a, long n) {
    mpz_class r = a % n;
    if (r < 0) r += n;
    return r;
}

}  // namespace

GroupPtr parse_group(const std::string& text) {
    TokenStream ts(detail::lex(text, "*[],"));
    GroupSpec G;
    if (ts.peek().kind == Tok::Int && ts.peek().text == "1") {
        ts.next();
        if (ts.peek().kind != Tok::End) ts.fail("trailing input after trivial group");
        return make_group(G);
    }
    std::vector<bool> named;
    std::regex cyc("C([0-9]+)");
    do {
        if (ts.peek().kind != Tok::Ident) ts.fail("expected a factor (Cn, Z, ZxC2, Dinf)");
        auto tok = ts.next();
        std::smatch m;
        std::vector<Factor> fs;
        if (std::regex_match(tok.text, m, cyc)) {
            int n = std::stoi(m[1]);
            if (n < 2) throw ParseError("cyclic factor needs order >= 2", tok.line, tok.col, tok.text);
            fs.push_back({FactorKind::Cyclic, n, {}});
        } else if (tok.text == "Z") {
            fs.push_back({FactorKind::Infinite, 0, {}});
        } else if (tok.text == "ZxC2") {
            fs.push_back({FactorKind::ZxC2, 0, {}});
        } else if (tok.text == "Dinf") {
            fs.push_back({FactorKind::Cyclic, 2, {}});
            fs.push_back({FactorKind::Cyclic, 2, {}});
        } else {
            throw ParseError("unknown factor", tok.line, tok.col, tok.text);
        }
        bool has_names = false;
        if (ts.accept("[")) {
            std::vector<std::string> names;
            do {
                if (ts.peek().kind != Tok::Ident) ts.fail("expected generator name");
                names.push_back(ts.next().text);
            } while (ts.accept(","));
            ts.expect("]");
            size_t want = 0;
            for (auto& f : fs) want += f.kind == FactorKind::ZxC2 ? 2 : 1;
            if (names.size() != want)
                throw ParseError(fmt::format("factor needs {} generator name(s)", want), tok.line, tok.col, tok.text);
            size_t k = 0;
            for (auto& f : fs)
                for (size_t r = 0; r < (f.kind == FactorKind::ZxC2 ? 2u : 1u); ++r) f.names.push_back(names[k++]);
            has_names = true;
        }
        for (auto& f : fs) {
            G.factors.push_back(f);
            named.push_back(has_names);
        }
    } while (ts.accept("*"));
    if (ts.peek().kind != Tok::End) ts.fail("unexpected token in group");

    std::set<std::string> used;
    for (auto& f : G.factors)
        for (auto& n : f.names) used.insert(n);
    auto fresh = [&](std::string base) {
        std::string n = base;
        for (int i = 2; used.count(n); ++i) n = base + std::to_string(i);
        used.insert(n);
        return n;
    };
    bool single = G.factors.size() == 1;
    char letter = 'a';
    int zx = 0;
    for (size_t i = 0; i < G.factors.size(); ++i) {
        auto& f = G.factors[i];
        if (f.kind == FactorKind::ZxC2) ++zx;
        if (named[i]) continue;
        if (f.kind == FactorKind::ZxC2) {
            std::string suffix = single ? "" : std::to_string(zx);
            f.names = {fresh("t" + suffix), fresh("T" + suffix)};
        } else if (single) {
            f.names = {fresh(f.kind == FactorKind::Cyclic ? "T" : "t")};
        } else {
            std::string n;
            do n = std::string(1, letter++);
            while (used.count(n) || n == "t" || n == "T");
            used.insert(n);
            f.names = {n};
        }
    }
    try {
        return make_group(G);
    } catch (const Error& e) {
        throw ParseError(e.what(), 1, 1, text);
    }
}

Character parse_character(const std::string& text, GroupPtr G) {
    std::vector<int> v(G->num_generators(), 1);
    TokenStream ts(detail::lex(text, "=,+-"));
    if (ts.peek().kind == Tok::End) return Character(G, v);
    do {
        if (ts.peek().kind != Tok::Ident) ts.fail("expected generator name");
        auto name = ts.next();
        int g = G->generator_index(name.text);
        if (g < 0) throw ParseError("unknown generator", name.line, name.col, name.text);
        ts.expect("=");
        int sign = 1;
        if (ts.accept("-"))
            sign = -1;
        else
            ts.accept("+");
        if (ts.peek().kind != Tok::Int || ts.peek().text != "1") ts.fail("character value must be +1 or -1");
        ts.next();
        v[g] = sign;
    } while (ts.accept(","));
    if (ts.peek().kind != Tok::End) ts.fail("unexpected token in character");
    try {
        return Character(G, v);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), 1, 1, text);
    }
}

namespace {

Word parse_word(TokenStream& ts, const GroupSpec& G) {
    Word w;
    do {
        auto tok = ts.peek();
        if (tok.kind == Tok::Int) {
            if (tok.text != "1") ts.fail("only 1 may appear as a factor of a word");
            ts.next();
            continue;
        }
        if (tok.kind != Tok::Ident) ts.fail("expected generator name");
        ts.next();
        int g = G.generator_index(tok.text);
        if (g < 0) throw ParseError("unknown generator", tok.line, tok.col, tok.text);
        mpz_class k = 1;
        if (ts.accept("^")) {
            bool neg = ts.accept("-");
            if (ts.peek().kind != Tok::Int) ts.fail("expected integer exponent");
            k = mpz_class(ts.next().text);
            if (neg) k = -k;
        }
        auto [f, r] = G.generator(g);
        const auto& fac = G.factors[f];
        Syllable s{f, k, 0};
        if (fac.kind == FactorKind::Cyclic) {
            s.k = mod(k, fac.n);
        } else if (fac.kind == FactorKind::ZxC2 && r == 1) {
            s.k = 0;
            s.eps = mod(k, 2) == 1 ? 1 : 0;
        }
        if (s.k != 0 || s.eps != 0) w = word_mul(w, Word{s}, G);
    } while (ts.accept("*"));
    return w;
}

}  // namespace

RingElt parse_ring_elt(const std::string& text, GroupPtr G) {
    TokenStream ts(detail::lex(text, "+-*^"));
    RingElt x(G);
    if (ts.peek().kind == Tok::End) ts.fail("empty ring element");
    bool first = true;
    while (ts.peek().kind != Tok::End) {
        int sign = 1;
        if (ts.accept("-"))
            sign = -1;
        else if (!ts.accept("+") && !first)
            ts.fail("expected '+' or '-'");
        first = false;
        mpz_class c = 1;
        Word w;
        if (ts.peek().kind == Tok::Int) {
            c = mpz_class(ts.next().text);
            if (ts.accept("*")) w = parse_word(ts, *G);
        } else {
            w = parse_word(ts, *G);
        }
        x.add_term(w, sign * c);
    }
    return x;
}

RingMatrix parse_ring_matrix(const std::string& text, GroupPtr G, int rows, int cols) {
    size_t i = 0;
    int line = 1, col = 1;
    auto adv = [&]() {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    auto skip = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) adv();
    };
    auto fail = [&](const std::string& msg) {
        throw ParseError(msg, line, col, i < text.size() ? text.substr(i, 1) : "end of input");
    };
    auto expect = [&](char c) {
        skip();
        if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'");
        adv();
    };

    std::vector<std::vector<RingElt>> data;
    expect('[');
    skip();
    if (i < text.size() && text[i] == ']') {
        adv();
    } else {
        while (true) {
            expect('[');
            std::vector<RingElt> row;
            skip();
            bool empty_row = i < text.size() && text[i] == ']';
            if (empty_row) adv();
            while (!empty_row) {
                skip();
                int l0 = line, c0 = col;
                size_t start = i;
                while (i < text.size() && text[i] != ',' && text[i] != ']' && text[i] != '[') adv();
                if (i >= text.size()) fail("unterminated matrix row");
                if (text[i] == '[') fail("unexpected '['");
                try {
                    row.push_back(parse_ring_elt(text.substr(start, i - start), G));
                } catch (const ParseError& e) {
                    throw e.located("", l0, c0);
                }
                if (text[i] == ',') {
                    adv();
                    continue;
                }
                adv();
                break;
            }
            if (!data.empty() && row.size() != data[0].size()) fail("ragged matrix rows");
            data.push_back(std::move(row));
            skip();
            if (i < text.size() && text[i] == ',') {
                adv();
                continue;
            }
            expect(']');
            break;
        }
    }
    skip();
    if (i != text.size()) fail("trailing input after matrix");

    int r = static_cast<int>(data.size());
    int c = r ? static_cast<int>(data[0].size()) : 0;
    if (r == 0) {
        r = rows < 0 ? 0 : rows;
        c = cols < 0 ? 0 : cols;
        if (r * c != 0) throw ParseError(fmt::format("empty matrix but expected {}x{}", rows, cols), 1, 1, text);
    }
    if ((rows >= 0 && r != rows) || (cols >= 0 && c != cols))
        throw ParseError(fmt::format("matrix is {}x{} but expected {}x{}", r, c, rows, cols), 1, 1, "[");
    RingMatrix M(G, r, c);
    for (int a = 0; a < static_cast<int>(data.size()); ++a)
        for (int b = 0; b < c; ++b) M(a, b) = data[a][b];
    return M;
}

}  // namespace q2
