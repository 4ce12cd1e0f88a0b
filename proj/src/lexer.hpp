#pragma once

#include <string>
#include <vector>

#include "q2/error.hpp"

namespace q2::detail {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

// Identifiers, unsigned integers and single-character punctuation.
std::vector<Token> lex(const std::string& s, const std::string& punct);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> t) : t_(std::move(t)) {}
    const Token& peek() const { return t_[i_]; }
    Token next() { return t_[i_ == t_.size() - 1 ? i_ : i_++]; }
    bool at(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
    bool accept(const char* p) {
        if (!at(p)) return false;
        ++i_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& k = peek();
        throw ParseError(msg, k.line, k.col, k.kind == Tok::End ? "end of input" : k.text);
    }
    void expect(const char* p) {
        if (!accept(p)) fail(std::string("expected '") + p + "'");
    }

private:
    std::vector<Token> t_;
    size_t i_ = 0;
};

}  // namespace q2::detail
