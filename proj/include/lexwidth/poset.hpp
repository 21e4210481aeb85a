#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lexwidth/detail/text.hpp"
#include "lexwidth/errors.hpp"

namespace lexwidth {

/// Index of a letter within its Poset.
using Symbol = int;

/// A finite alphabet with a strict partial order, stored transitively closed.
/// Letters are opaque tokens; no ordering is ever derived from character codes.
class Poset {
public:
    Poset() = default;

    /// Builds the transitive closure of `lt_pairs` over `letters`.
    /// Throws CycleError if the closure would relate a letter to itself,
    /// UnknownLetterError if a pair mentions an undeclared letter.
    static Poset build(const std::vector<std::string>& letters,
                       const std::vector<std::pair<std::string, std::string>>& lt_pairs) {
        Poset p;
        p.letters_ = letters;
        for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
            if (!p.index_.emplace(letters[i], i).second)
                throw ParseError("duplicate letter '" + letters[i] + "'");
        }
        int n = p.size();
        p.lt_.assign(n, std::vector<bool>(n, false));
        for (const auto& [a, b] : lt_pairs) p.lt_[p.index_of(a)][p.index_of(b)] = true;
        // Warshall closure.
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                if (!p.lt_[i][k]) continue;
                for (int j = 0; j < n; ++j)
                    if (p.lt_[k][j]) p.lt_[i][j] = true;
            }
        for (int i = 0; i < n; ++i)
            if (p.lt_[i][i]) throw CycleError("order cycle: " + p.cycle_through(i, lt_pairs));
        return p;
    }

    /// The empty order: all letters mutually incomparable.
    static Poset trivial(const std::vector<std::string>& letters) { return build(letters, {}); }

    /// The linear order following declaration order.
    static Poset total(const std::vector<std::string>& letters) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t i = 0; i + 1 < letters.size(); ++i)
            pairs.emplace_back(letters[i], letters[i + 1]);
        return build(letters, pairs);
    }

    /// Text format:
    ///   letters: a b c
    ///   a < b        # one pair per line, '#' starts a comment
    static Poset parse(const std::string& text) {
        std::vector<std::string> letters;
        std::vector<std::pair<std::string, std::string>> pairs;
        bool saw_letters = false;
        auto lines = detail::split_lines(text);
        for (std::size_t ln = 0; ln < lines.size(); ++ln) {
            std::string line = detail::trim(detail::strip_comment(lines[ln]));
            if (line.empty()) continue;
            auto tokens = detail::split_ws(line);
            if (tokens[0] == "letters:") {
                if (saw_letters) throw ParseError(static_cast<int>(ln + 1), "repeated letters: line");
                letters.assign(tokens.begin() + 1, tokens.end());
                saw_letters = true;
                continue;
            }
            if (tokens.size() != 3 || tokens[1] != "<")
                throw ParseError(static_cast<int>(ln + 1), "expected 'a < b', got '" + line + "'");
            pairs.emplace_back(tokens[0], tokens[2]);
        }
        if (!saw_letters) throw ParseError("missing 'letters:' line");
        return build(letters, pairs);
    }

    std::string format() const {
        std::ostringstream out;
        out << "letters:";
        for (const auto& l : letters_) out << ' ' << l;
        out << '\n';
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (lt_[a][b]) out << letters_[a] << " < " << letters_[b] << '\n';
        return out.str();
    }

    int size() const { return static_cast<int>(letters_.size()); }
    const std::vector<std::string>& letters() const { return letters_; }
    const std::string& name(Symbol a) const { return letters_.at(a); }

    std::optional<Symbol> find(const std::string& letter) const {
        auto it = index_.find(letter);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    Symbol index_of(const std::string& letter) const {
        auto s = find(letter);
        if (!s) throw UnknownLetterError(letter);
        return *s;
    }

    bool contains(const std::string& letter) const { return index_.count(letter) > 0; }

    /// Strict order: a < b.
    bool less(Symbol a, Symbol b) const { return lt_.at(a).at(b); }

    /// a == b, a < b or b < a.
    bool comparable(Symbol a, Symbol b) const { return a == b || less(a, b) || less(b, a); }

    std::vector<std::pair<Symbol, Symbol>> strict_pairs() const {
        std::vector<std::pair<Symbol, Symbol>> out;
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (lt_[a][b]) out.emplace_back(a, b);
        return out;
    }

    bool operator==(const Poset& other) const {
        return letters_ == other.letters_ && lt_ == other.lt_;
    }

private:
    // Reconstructs one offending cycle from the raw pairs, for the diagnostic.
    std::string cycle_through(int start, const std::vector<std::pair<std::string, std::string>>& raw) const {
        int n = size();
        std::vector<std::vector<int>> next(n);
        for (const auto& [a, b] : raw) next[index_of(a)].push_back(index_of(b));
        std::vector<int> parent(n, -1), seen(n, 0);
        std::queue<int> bfs;
        bfs.push(start);
        seen[start] = 1;
        while (!bfs.empty()) {
            int cur = bfs.front();
            bfs.pop();
            for (int nb : next[cur]) {
                if (nb == start) {
                    std::vector<int> chain;
                    for (int at = cur; at != -1; at = parent[at]) chain.push_back(at);
                    std::reverse(chain.begin(), chain.end());  // start .. cur
                    std::string msg = letters_[chain.front()];
                    for (std::size_t t = 1; t < chain.size(); ++t) msg += " < " + letters_[chain[t]];
                    return msg + " < " + letters_[start];
                }
                if (!seen[nb]) {
                    seen[nb] = 1;
                    parent[nb] = cur;
                    bfs.push(nb);
                }
            }
        }
        return letters_[start] + " < " + letters_[start];
    }

    std::vector<std::string> letters_;
    std::map<std::string, Symbol> index_;
    std::vector<std::vector<bool>> lt_;
};

}  // namespace lexwidth
