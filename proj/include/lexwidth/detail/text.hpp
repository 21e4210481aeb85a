#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexwidth::detail {

// '#' opens a comment only at the start of a line or when surrounded by
// whitespace, so multi-character letters like "#0" survive in data positions.
inline std::string strip_comment(std::string_view line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] != '#') continue;
        bool at_start =
            line.substr(0, i).find_first_not_of(" \t\r\n") == std::string_view::npos;
        bool ws_before = i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]));
        bool ws_after =
            i + 1 >= line.size() || std::isspace(static_cast<unsigned char>(line[i + 1]));
        if (at_start || (ws_before && ws_after)) return std::string(line.substr(0, i));
    }
    return std::string(line);
}

inline std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        lines.emplace_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

/// "a,b,c" -> {"a","b","c"} with trimming; empty items dropped.
inline std::vector<std::string> split_csv(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        std::string_view item =
            comma == std::string_view::npos ? s.substr(start) : s.substr(start, comma - start);
        std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace lexwidth::detail
