#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexwidth/tree.hpp"

namespace lexwidth {

/// Bottom-up transition rule f(q1,...,qn) -> q.
struct NftaRule {
    int symbol = 0;
    std::vector<int> children;
    int result = 0;
    bool operator==(const NftaRule&) const = default;
};

/// Nondeterministic finite tree automaton (bottom-up).
struct Nfta {
    std::vector<std::string> states;
    std::vector<NftaRule> rules;
    std::vector<int> finals;  // sorted unique
    bool empty_language = false;

    int num_states() const { return static_cast<int>(states.size()); }

    bool is_final(int q) const { return std::binary_search(finals.begin(), finals.end(), q); }

    int state_index(const std::string& name) const {
        for (int i = 0; i < num_states(); ++i)
            if (states[i] == name) return i;
        throw UnknownStateError(name);
    }

    bool operator==(const Nfta&) const = default;
};

struct ParsedNfta {
    RankedAlphabet alphabet;
    Nfta automaton;
};

/// Text format ('#' comments):
///   arity: f 2
///   final: q
///   rule: f(q1,q2) -> q
///   rule: a() -> q
/// Symbols must be letters of `order`; states are declared by first mention
/// (final lines first, then rules in order).
inline ParsedNfta nfta_parse(const std::string& text, const Poset& order) {
    std::vector<std::pair<std::string, int>> arity_decls;
    std::vector<std::string> final_names;
    struct RawRule {
        int lineno;
        std::string symbol;
        std::vector<std::string> children;
        std::string result;
    };
    std::vector<RawRule> raw_rules;

    auto lines = detail::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = detail::trim(detail::strip_comment(lines[ln]));
        if (line.empty()) continue;
        int lineno = static_cast<int>(ln + 1);
        auto tokens = detail::split_ws(line);
        if (tokens[0] == "arity:") {
            if (tokens.size() != 3) throw ParseError(lineno, "expected 'arity: f N'");
            try {
                arity_decls.emplace_back(tokens[1], std::stoi(tokens[2]));
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad arity '" + tokens[2] + "'");
            }
        } else if (tokens[0] == "final:") {
            final_names.insert(final_names.end(), tokens.begin() + 1, tokens.end());
        } else if (tokens[0] == "rule:") {
            // rule: f(q1,q2) -> q   (whitespace inside the tuple is tolerated)
            std::string rest = detail::trim(line.substr(5));
            auto arrow = rest.find("->");
            if (arrow == std::string::npos) throw ParseError(lineno, "missing '->'");
            std::string lhs = detail::trim(rest.substr(0, arrow));
            std::string result = detail::trim(rest.substr(arrow + 2));
            auto open = lhs.find('(');
            if (open == std::string::npos || lhs.back() != ')')
                throw ParseError(lineno, "expected 'f(q1,...,qn)'");
            RawRule r;
            r.lineno = lineno;
            r.symbol = detail::trim(lhs.substr(0, open));
            r.result = result;
            for (const auto& part :
                 detail::split_csv(lhs.substr(open + 1, lhs.size() - open - 2)))
                r.children.push_back(part);
            if (r.symbol.empty() || r.result.empty() || r.result.find(' ') != std::string::npos)
                throw ParseError(lineno, "malformed rule");
            raw_rules.push_back(std::move(r));
        } else {
            throw ParseError(lineno, "expected arity:/final:/rule: line");
        }
    }

    ParsedNfta out;
    out.alphabet = RankedAlphabet::over(order, arity_decls);

    std::map<std::string, int> state_index;
    auto intern_state = [&](const std::string& name) {
        auto [it, fresh] =
            state_index.emplace(name, static_cast<int>(out.automaton.states.size()));
        if (fresh) out.automaton.states.push_back(name);
        return it->second;
    };
    for (const auto& f : final_names) out.automaton.finals.push_back(intern_state(f));
    std::sort(out.automaton.finals.begin(), out.automaton.finals.end());
    out.automaton.finals.erase(
        std::unique(out.automaton.finals.begin(), out.automaton.finals.end()),
        out.automaton.finals.end());

    for (const auto& r : raw_rules) {
        NftaRule rule;
        auto sym = order.find(r.symbol);
        if (!sym) throw ParseError(r.lineno, "undeclared symbol '" + r.symbol + "'");
        rule.symbol = *sym;
        if (static_cast<int>(r.children.size()) != out.alphabet.arity(*sym))
            throw ParseError(r.lineno, "arity mismatch for '" + r.symbol + "'");
        for (const auto& c : r.children) rule.children.push_back(intern_state(c));
        rule.result = intern_state(r.result);
        out.automaton.rules.push_back(std::move(rule));
    }
    return out;
}

inline std::string nfta_format(const Nfta& a, const RankedAlphabet& ra) {
    std::ostringstream out;
    for (int s = 0; s < ra.order.size(); ++s)
        if (ra.arities[s] >= 0) out << "arity: " << ra.order.name(s) << ' ' << ra.arities[s] << '\n';
    out << "final:";
    for (int f : a.finals) out << ' ' << a.states[f];
    out << '\n';
    for (const auto& r : a.rules) {
        out << "rule: " << ra.order.name(r.symbol) << '(';
        for (std::size_t i = 0; i < r.children.size(); ++i) {
            if (i) out << ',';
            out << a.states[r.children[i]];
        }
        out << ") -> " << a.states[r.result] << '\n';
    }
    return out.str();
}

/// States of the root under all runs: holes evaluate to `hole_state`.
inline std::set<int> run_states(const Nfta& a, const Tree& t, int hole_state = -1) {
    if (t.symbol < 0) {
        if (hole_state < 0) throw Error("tree has a hole but no hole state was given");
        return {hole_state};
    }
    std::vector<std::set<int>> child_states;
    child_states.reserve(t.children.size());
    for (const auto& c : t.children) child_states.push_back(run_states(a, c, hole_state));
    std::set<int> out;
    for (const auto& r : a.rules) {
        if (r.symbol != t.symbol) continue;
        bool ok = true;
        for (std::size_t i = 0; i < r.children.size() && ok; ++i)
            if (!child_states[i].count(r.children[i])) ok = false;
        if (ok) out.insert(r.result);
    }
    return out;
}

inline bool nfta_accepts(const Nfta& a, const Tree& t) {
    auto states = run_states(a, t);
    for (int f : a.finals)
        if (states.count(f)) return true;
    return false;
}

/// Minimal-height ground inhabitant per state (ties by symbol declaration
/// order, then rule order); nullopt for uninhabited states.
inline std::vector<std::optional<Tree>> canonical_inhabitants(const Nfta& a) {
    int n = a.num_states();
    constexpr int kInf = 1 << 28;
    std::vector<int> height(n, kInf);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.rules) {
            int h = 0;
            for (int c : r.children) h = std::max(h, height[c]);
            if (h >= kInf) continue;
            if (h + 1 < height[r.result]) {
                height[r.result] = h + 1;
                changed = true;
            }
        }
    }
    std::vector<int> order(a.rules.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return a.rules[x].symbol < a.rules[y].symbol;
    });
    std::vector<std::optional<Tree>> tree(n);
    bool progress = true;
    while (progress) {
        progress = false;
        for (int idx : order) {
            const auto& r = a.rules[idx];
            if (tree[r.result]) continue;
            int h = 0;
            bool ready = true;
            for (int c : r.children) {
                h = std::max(h, height[c]);
                if (!tree[c]) ready = false;
            }
            if (!ready || h + 1 != height[r.result]) continue;
            Tree t;
            t.symbol = r.symbol;
            for (int c : r.children) t.children.push_back(*tree[c]);
            tree[r.result] = std::move(t);
            progress = true;
        }
    }
    return tree;
}

/// Keeps exactly the states that are inhabited by some ground tree and usable
/// on a path toward a final state; rules mentioning removed states go with
/// them. Tree language preserved. Sets `empty_language` when no final state
/// is inhabited.
inline Nfta nfta_reduce(const Nfta& a) {
    int n = a.num_states();
    std::vector<bool> inhabited(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.rules) {
            if (inhabited[r.result]) continue;
            bool all = true;
            for (int c : r.children)
                if (!inhabited[c]) all = false;
            if (all) {
                inhabited[r.result] = true;
                changed = true;
            }
        }
    }
    std::vector<bool> useful(n, false);
    for (int f : a.finals)
        if (inhabited[f]) useful[f] = true;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.rules) {
            if (!useful[r.result] || !inhabited[r.result]) continue;
            bool all = true;
            for (int c : r.children)
                if (!inhabited[c]) all = false;
            if (!all) continue;
            for (int c : r.children)
                if (!useful[c]) {
                    useful[c] = true;
                    changed = true;
                }
        }
    }
    std::vector<int> remap(n, -1);
    Nfta out;
    for (int q = 0; q < n; ++q)
        if (inhabited[q] && useful[q]) {
            remap[q] = static_cast<int>(out.states.size());
            out.states.push_back(a.states[q]);
        }
    for (int f : a.finals)
        if (remap[f] != -1) out.finals.push_back(remap[f]);
    std::sort(out.finals.begin(), out.finals.end());
    for (const auto& r : a.rules) {
        bool keep = remap[r.result] != -1;
        for (int c : r.children)
            if (remap[c] == -1) keep = false;
        if (!keep) continue;
        NftaRule copy;
        copy.symbol = r.symbol;
        copy.result = remap[r.result];
        for (int c : r.children) copy.children.push_back(remap[c]);
        out.rules.push_back(std::move(copy));
    }
    if (out.finals.empty()) out.empty_language = true;
    return out;
}

/// Exactly the accepted trees of the given height.
inline std::set<Tree> enumerate_trees(const Nfta& a, int height, int height_cap = 5,
                                      std::size_t count_cap = 2'000'000) {
    if (height < 0 || height > height_cap)
        throw CapExceededError("tree height " + std::to_string(height) + " exceeds cap " +
                               std::to_string(height_cap));
    int n = a.num_states();
    // by_height[q][h] = trees of height exactly h evaluating to q
    std::vector<std::vector<std::set<Tree>>> by_height(
        n, std::vector<std::set<Tree>>(height + 1));
    std::size_t total = 0;
    for (int h = 1; h <= height; ++h) {
        for (const auto& r : a.rules) {
            if (r.children.empty()) {
                if (h == 1) {
                    by_height[r.result][1].insert(leaf(r.symbol));
                    ++total;
                }
                continue;
            }
            // every child of height < h, at least one of height h-1
            std::vector<Tree> chosen(r.children.size());
            std::function<void(std::size_t, bool)> pick = [&](std::size_t idx, bool has_top) {
                if (idx == r.children.size()) {
                    if (!has_top) return;
                    Tree t;
                    t.symbol = r.symbol;
                    t.children = chosen;
                    if (by_height[r.result][h].insert(std::move(t)).second) ++total;
                    return;
                }
                bool need_top_here = !has_top && idx + 1 == r.children.size();
                for (int ch = need_top_here ? h - 1 : 1; ch <= h - 1; ++ch) {
                    for (const Tree& sub : by_height[r.children[idx]][ch]) {
                        chosen[idx] = sub;
                        pick(idx + 1, has_top || ch == h - 1);
                    }
                }
                if (total > count_cap) throw CapExceededError("tree enumeration cap exceeded");
            };
            pick(0, false);
        }
        if (total > count_cap) throw CapExceededError("tree enumeration cap exceeded");
    }
    std::set<Tree> out;
    for (int f : a.finals)
        out.insert(by_height[f][height].begin(), by_height[f][height].end());
    return out;
}

}  // namespace lexwidth
