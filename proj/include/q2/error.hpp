#pragma once

#include <stdexcept>
#include <string>

namespace q2 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries a 1-based position; file is filled in by whoever knows it.
struct ParseError : Error {
    std::string file;
    int line = 0;
    int column = 0;
    std::string token;
    std::string what_msg;

    ParseError(std::string msg, int line_, int col_, std::string tok);
    const char* what() const noexcept override { return what_msg.c_str(); }
    ParseError located(const std::string& f, int line_offset, int col_offset) const;
};

}  // namespace q2
