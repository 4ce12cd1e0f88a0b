#include "q2/error.hpp"

#include <fmt/format.h>

namespace q2 {

static std::string compose(const std::string& file, int line, int col, const std::string& msg,
                           const std::string& tok) {
    std::string where = file.empty() ? fmt::format("{}:{}", line, col)
                                     : fmt::format("{}:{}:{}", file, line, col);
    if (tok.empty()) return fmt::format("{}: {}", where, msg);
    return fmt::format("{}: {} (at '{}')", where, msg, tok);
}

ParseError::ParseError(std::string msg, int line_, int col_, std::string tok)
    : Error(msg), line(line_), column(col_), token(std::move(tok)) {
    what_msg = compose(file, line, column, msg, token);
}

// (line0, col0) is where the parsed fragment starts inside the enclosing text.
ParseError ParseError::located(const std::string& f, int line0, int col0) const {
    int l = line0 + line - 1;
    int c = line == 1 ? col0 + column - 1 : column;
    ParseError e(runtime_error::what(), l, c, token);
    e.file = f.empty() ? file : f;
    e.what_msg = compose(e.file, l, c, runtime_error::what(), token);
    return e;
}

}  // namespace q2
