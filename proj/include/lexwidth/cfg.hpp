#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexwidth/nfa.hpp"
#include "lexwidth/poset.hpp"
#include "lexwidth/word_order.hpp"

namespace lexwidth {

/// One item of a production body: a terminal (Poset symbol) or a nonterminal.
struct CfgSym {
    bool terminal = false;
    int id = 0;
    bool operator==(const CfgSym&) const = default;

    static CfgSym t(int id) { return {true, id}; }
    static CfgSym nt(int id) { return {false, id}; }
};

struct CfgProduction {
    int lhs = 0;
    std::vector<CfgSym> rhs;
    bool operator==(const CfgProduction&) const = default;
};

/// Context-free grammar over a Poset's letters. `empty_language` is set by
/// cfg_trim when the start symbol generates nothing.
struct Cfg {
    std::vector<std::string> nonterminals;
    std::vector<std::string> terminals;  // copied from the alphabet at parse time
    int start = 0;
    std::vector<CfgProduction> productions;
    bool empty_language = false;

    int num_nonterminals() const { return static_cast<int>(nonterminals.size()); }

    int nonterminal_index(const std::string& name) const {
        for (int i = 0; i < num_nonterminals(); ++i)
            if (nonterminals[i] == name) return i;
        throw Error("unknown nonterminal '" + name + "'");
    }

    bool operator==(const Cfg&) const = default;
};

/// Text format ('#' comments, alternatives '|'-separated or on repeat lines,
/// empty right side is the empty word):
///   nonterminals: S T
///   start: S
///   S -> a S b
///   S ->
/// Every body token that is not a declared nonterminal must be a letter of
/// `alphabet`.
inline Cfg cfg_parse(const std::string& text, const Poset& alphabet) {
    Cfg g;
    g.terminals = alphabet.letters();
    std::optional<std::string> start_name;
    std::vector<std::tuple<int, std::string, std::vector<std::string>>> raw_rules;

    auto lines = detail::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = detail::trim(detail::strip_comment(lines[ln]));
        if (line.empty()) continue;
        int lineno = static_cast<int>(ln + 1);
        auto tokens = detail::split_ws(line);
        if (tokens[0] == "nonterminals:") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (std::find(g.nonterminals.begin(), g.nonterminals.end(), tokens[i]) !=
                    g.nonterminals.end())
                    throw ParseError(lineno, "duplicate nonterminal '" + tokens[i] + "'");
                g.nonterminals.push_back(tokens[i]);
            }
            continue;
        }
        if (tokens[0] == "start:") {
            if (tokens.size() != 2) throw ParseError(lineno, "expected one start symbol");
            start_name = tokens[1];
            continue;
        }
        auto arrow = std::find(tokens.begin(), tokens.end(), "->");
        if (arrow == tokens.end() || arrow != tokens.begin() + 1)
            throw ParseError(lineno, "expected 'A -> body', got '" + line + "'");
        std::vector<std::string> body;
        std::vector<std::vector<std::string>> alternatives;
        for (auto it = arrow + 1; it != tokens.end(); ++it) {
            if (*it == "|") {
                alternatives.push_back(body);
                body.clear();
            } else {
                body.push_back(*it);
            }
        }
        alternatives.push_back(body);
        for (auto& alt : alternatives) raw_rules.emplace_back(lineno, tokens[0], alt);
    }

    if (!start_name) throw ParseError("missing 'start:' line");
    g.start = g.nonterminal_index(*start_name);

    for (const auto& [lineno, lhs, body] : raw_rules) {
        CfgProduction prod;
        auto lhs_it = std::find(g.nonterminals.begin(), g.nonterminals.end(), lhs);
        if (lhs_it == g.nonterminals.end())
            throw ParseError(lineno, "undeclared nonterminal '" + lhs + "'");
        prod.lhs = static_cast<int>(lhs_it - g.nonterminals.begin());
        for (const auto& tok : body) {
            auto nt_it = std::find(g.nonterminals.begin(), g.nonterminals.end(), tok);
            if (nt_it != g.nonterminals.end()) {
                prod.rhs.push_back(CfgSym::nt(static_cast<int>(nt_it - g.nonterminals.begin())));
            } else if (auto s = alphabet.find(tok)) {
                prod.rhs.push_back(CfgSym::t(*s));
            } else {
                throw ParseError(lineno, "'" + tok + "' is neither a nonterminal nor a letter");
            }
        }
        g.productions.push_back(std::move(prod));
    }
    return g;
}

inline std::string cfg_format(const Cfg& g) {
    std::ostringstream out;
    out << "nonterminals:";
    for (const auto& nt : g.nonterminals) out << ' ' << nt;
    out << "\nstart: " << g.nonterminals.at(g.start) << '\n';
    for (const auto& prod : g.productions) {
        out << g.nonterminals[prod.lhs] << " ->";
        for (const auto& sym : prod.rhs)
            out << ' ' << (sym.terminal ? g.terminals[sym.id] : g.nonterminals[sym.id]);
        out << '\n';
    }
    return out.str();
}

/// Removes non-generating and then unreachable nonterminals, so that every
/// surviving nonterminal both derives a terminal string and occurs in some
/// sentential form of the start symbol. Language preserved. If the start
/// symbol itself generates nothing the result has `empty_language` set.
inline Cfg cfg_trim(const Cfg& g) {
    int n = g.num_nonterminals();
    std::vector<bool> generating(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& prod : g.productions) {
            if (generating[prod.lhs]) continue;
            bool all = true;
            for (const auto& sym : prod.rhs)
                if (!sym.terminal && !generating[sym.id]) all = false;
            if (all) {
                generating[prod.lhs] = true;
                changed = true;
            }
        }
    }
    if (!generating[g.start]) {
        Cfg out;
        out.nonterminals = {g.nonterminals[g.start]};
        out.terminals = g.terminals;
        out.start = 0;
        out.empty_language = true;
        return out;
    }
    std::vector<bool> reachable(n, false);
    reachable[g.start] = true;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& prod : g.productions) {
            if (!reachable[prod.lhs] || !generating[prod.lhs]) continue;
            bool usable = true;
            for (const auto& s : prod.rhs)
                if (!s.terminal && !generating[s.id]) usable = false;
            if (!usable) continue;
            for (const auto& s : prod.rhs)
                if (!s.terminal && !reachable[s.id]) {
                    reachable[s.id] = true;
                    changed = true;
                }
        }
    }
    std::vector<int> remap(n, -1);
    Cfg out;
    out.terminals = g.terminals;
    for (int i = 0; i < n; ++i)
        if (generating[i] && reachable[i]) {
            remap[i] = static_cast<int>(out.nonterminals.size());
            out.nonterminals.push_back(g.nonterminals[i]);
        }
    out.start = remap[g.start];
    for (const auto& prod : g.productions) {
        if (remap[prod.lhs] == -1) continue;
        bool usable = true;
        for (const auto& s : prod.rhs)
            if (!s.terminal && remap[s.id] == -1) usable = false;
        if (!usable) continue;
        CfgProduction copy;
        copy.lhs = remap[prod.lhs];
        for (const auto& s : prod.rhs)
            copy.rhs.push_back(s.terminal ? s : CfgSym::nt(remap[s.id]));
        out.productions.push_back(std::move(copy));
    }
    return out;
}

/// Exact set of generated words of length n, by bottom-up dynamic programming
/// over (nonterminal, length). Unit and epsilon cycles are handled by
/// iterating each length to a fixpoint.
inline WordSlice cfg_slice(const Cfg& g, int n, int length_cap = 12) {
    if (n < 0 || n > length_cap)
        throw CapExceededError("cfg_slice length " + std::to_string(n) + " exceeds cap " +
                               std::to_string(length_cap));
    WordSlice slice;
    slice.length = n;
    if (g.empty_language) return slice;

    int nts = g.num_nonterminals();
    // table[A][l] = words of length l derivable from A
    std::vector<std::vector<std::set<Word>>> table(nts, std::vector<std::set<Word>>(n + 1));

    // words of length `remaining` derivable from rhs[pos..], appended to acc
    std::function<void(const CfgProduction&, std::size_t, int, Word&, std::set<Word>&)> expand =
        [&](const CfgProduction& prod, std::size_t pos, int remaining, Word& acc,
            std::set<Word>& out) {
            if (pos == prod.rhs.size()) {
                if (remaining == 0) out.insert(acc);
                return;
            }
            const CfgSym& sym = prod.rhs[pos];
            if (sym.terminal) {
                if (remaining < 1) return;
                acc.push_back(sym.id);
                expand(prod, pos + 1, remaining - 1, acc, out);
                acc.pop_back();
                return;
            }
            for (int take = 0; take <= remaining; ++take) {
                for (const Word& piece : table[sym.id][take]) {
                    std::size_t before = acc.size();
                    acc.insert(acc.end(), piece.begin(), piece.end());
                    expand(prod, pos + 1, remaining - take, acc, out);
                    acc.resize(before);
                }
            }
        };

    for (int l = 0; l <= n; ++l) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& prod : g.productions) {
                std::set<Word> found;
                Word acc;
                expand(prod, 0, l, acc, found);
                for (auto& w : found)
                    if (table[prod.lhs][l].insert(w).second) changed = true;
            }
        }
    }
    slice.words = table[g.start][n];
    return slice;
}

/// Canonical shortest terminal yield per nonterminal: minimal length, ties
/// broken by production declaration order. Requires a trimmed grammar.
inline std::vector<Word> cfg_min_yields(const Cfg& g) {
    int n = g.num_nonterminals();
    constexpr int kInf = 1 << 28;
    std::vector<int> len(n, kInf);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& prod : g.productions) {
            long total = 0;
            for (const auto& s : prod.rhs) total += s.terminal ? 1 : len[s.id];
            if (total < len[prod.lhs]) {
                len[prod.lhs] = static_cast<int>(total);
                changed = true;
            }
        }
    }
    std::vector<std::optional<Word>> yield(n);
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& prod : g.productions) {
            if (yield[prod.lhs]) continue;
            long total = 0;
            bool ready = true;
            for (const auto& s : prod.rhs) {
                total += s.terminal ? 1 : len[s.id];
                if (!s.terminal && !yield[s.id]) ready = false;
            }
            if (!ready || total != len[prod.lhs]) continue;
            Word w;
            for (const auto& s : prod.rhs) {
                if (s.terminal)
                    w.push_back(s.id);
                else
                    w.insert(w.end(), yield[s.id]->begin(), yield[s.id]->end());
            }
            yield[prod.lhs] = std::move(w);
            progress = true;
        }
    }
    std::vector<Word> out;
    for (int i = 0; i < n; ++i) {
        if (!yield[i]) throw Error("nonterminal '" + g.nonterminals[i] + "' generates nothing (grammar not trimmed?)");
        out.push_back(*yield[i]);
    }
    return out;
}

}  // namespace lexwidth
