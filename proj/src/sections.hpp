#pragma once

#include <functional>
#include <string>
#include <vector>

#include "q2/error.hpp"

namespace q2::detail {

// Line-based "[kind NAME]" / "key = value" files.  '#' starts a comment.
struct Entry {
    std::string key, value;
    int line = 0, value_col = 0;
};

struct Section {
    std::string kind, name;
    int line = 0;
    std::vector<Entry> entries;
    const Entry* find(const std::string& key) const;
};

std::vector<Section> read_sections(const std::string& text, const std::string& file);

// Runs f(value) and re-anchors any ParseError at the entry's position.
template <class F>
auto with_location(const Entry& e, const std::string& file, F&& f) -> decltype(f(e.value)) {
    try {
        return f(e.value);
    } catch (const ParseError& err) {
        throw err.located(file, e.line, e.value_col);
    } catch (const Error& err) {
        throw ParseError(err.what(), e.line, e.value_col, e.value).located(file, 1, 1);
    }
}

std::string read_file(const std::string& path);

// "path#NAME" -> (path, NAME); NAME empty when absent.
std::pair<std::string, std::string> split_ref(const std::string& ref);

}  // namespace q2::detail
