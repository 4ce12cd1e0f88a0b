#include "sections.hpp"

#include <fstream>
#include <sstream>

namespace q2::detail {

const Entry* Section::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

namespace {

std::string trim(const std::string& s, size_t* lead = nullptr) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        if (lead) *lead = s.size();
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    if (lead) *lead = a;
    return s.substr(a, b - a + 1);
}

ParseError at(const std::string& file, const std::string& msg, int line, int col, const std::string& tok) {
    ParseError e(msg, line, col, tok);
    return e.located(file, 1, 1);
}

}  // namespace

std::vector<Section> read_sections(const std::string& text, const std::string& file) {
    std::vector<Section> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        size_t lead;
        std::string t = trim(s, &lead);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw at(file, "section header must end with ']'", line, int(lead + t.size()), t);
            std::string body = trim(t.substr(1, t.size() - 2));
            size_t sp = body.find_first_of(" \t");
            if (sp == std::string::npos) throw at(file, "section header needs a kind and a name", line, int(lead + 1), t);
            Section sec;
            sec.kind = body.substr(0, sp);
            sec.name = trim(body.substr(sp));
            sec.line = line;
            for (const auto& o : out)
                if (o.kind == sec.kind && o.name == sec.name)
                    throw at(file, "duplicate section", line, int(lead + 1), sec.name);
            out.push_back(sec);
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos) throw at(file, "expected 'key = value'", line, int(lead + 1), t);
        if (out.empty()) throw at(file, "entry outside of a section", line, int(lead + 1), t);
        Entry e;
        e.key = trim(s.substr(0, eq));
        size_t vlead;
        e.value = trim(s.substr(eq + 1), &vlead);
        e.line = line;
        e.value_col = int(eq + 1 + vlead + 1);
        if (e.key.empty()) throw at(file, "missing key", line, int(lead + 1), "=");
        if (out.back().find(e.key)) throw at(file, "duplicate key", line, int(lead + 1), e.key);
        out.back().entries.push_back(e);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::pair<std::string, std::string> split_ref(const std::string& ref) {
    size_t h = ref.rfind('#');
    if (h == std::string::npos) return {ref, ""};
    return {ref.substr(0, h), ref.substr(h + 1)};
}

}  // namespace q2::detail
