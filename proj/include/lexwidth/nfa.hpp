#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexwidth/poset.hpp"
#include "lexwidth/word_order.hpp"

namespace lexwidth {

/// Nondeterministic finite automaton without epsilon transitions.
/// Letters are indices into `letters` (shared with the Poset the machine was
/// parsed against). `initial == -1` means the machine has no states and
/// accepts nothing.
struct Nfa {
    std::vector<std::string> states;
    std::vector<std::string> letters;
    /// delta[state][letter] -> sorted unique target states.
    std::vector<std::vector<std::vector<int>>> delta;
    int initial = -1;
    std::vector<int> finals;  // sorted unique

    int num_states() const { return static_cast<int>(states.size()); }
    int num_letters() const { return static_cast<int>(letters.size()); }

    bool is_final(int q) const { return std::binary_search(finals.begin(), finals.end(), q); }

    void add_transition(int from, Symbol a, int to) {
        auto& targets = delta.at(from).at(a);
        auto it = std::lower_bound(targets.begin(), targets.end(), to);
        if (it == targets.end() || *it != to) targets.insert(it, to);
    }

    int state_index(const std::string& name) const {
        for (int i = 0; i < num_states(); ++i)
            if (states[i] == name) return i;
        throw UnknownStateError(name);
    }

    bool operator==(const Nfa&) const = default;
};

inline Nfa make_nfa(std::vector<std::string> states, std::vector<std::string> letters,
                    int initial, std::vector<int> finals) {
    Nfa m;
    m.states = std::move(states);
    m.letters = std::move(letters);
    m.delta.assign(m.states.size(), std::vector<std::vector<int>>(m.letters.size()));
    m.initial = initial;
    m.finals = std::move(finals);
    std::sort(m.finals.begin(), m.finals.end());
    m.finals.erase(std::unique(m.finals.begin(), m.finals.end()), m.finals.end());
    return m;
}

/// Text format (whitespace-tolerant, '#' comments):
///   states: q0 q1
///   initial: q0
///   final: q1
///   q0 a q1
/// Letters are resolved against `alphabet`; the machine's letter list is the
/// alphabet's letter list.
inline Nfa nfa_parse(const std::string& text, const Poset& alphabet) {
    std::vector<std::string> states;
    std::map<std::string, int> state_index;
    std::optional<std::pair<std::string, int>> initial_name;
    std::vector<std::pair<std::string, int>> final_names;
    std::vector<std::tuple<int, std::string, std::string, std::string>> transition_lines;

    auto lines = detail::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = detail::trim(detail::strip_comment(lines[ln]));
        if (line.empty()) continue;
        auto tokens = detail::split_ws(line);
        int lineno = static_cast<int>(ln + 1);
        if (tokens[0] == "states:") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (!state_index.emplace(tokens[i], static_cast<int>(states.size())).second)
                    throw ParseError(lineno, "duplicate state '" + tokens[i] + "'");
                states.push_back(tokens[i]);
            }
        } else if (tokens[0] == "initial:") {
            if (tokens.size() > 2) throw ParseError(lineno, "expected one initial state");
            if (tokens.size() == 2) initial_name = {tokens[1], lineno};
        } else if (tokens[0] == "final:") {
            for (std::size_t i = 1; i < tokens.size(); ++i)
                final_names.emplace_back(tokens[i], lineno);
        } else if (tokens.size() == 3) {
            transition_lines.emplace_back(lineno, tokens[0], tokens[1], tokens[2]);
        } else {
            throw ParseError(lineno, "expected 'q a q2', got '" + line + "'");
        }
    }

    auto lookup_state = [&](const std::string& name, int lineno) {
        auto it = state_index.find(name);
        if (it == state_index.end())
            throw ParseError(lineno, "undeclared state '" + name + "'");
        return it->second;
    };

    int initial = -1;
    if (initial_name) initial = lookup_state(initial_name->first, initial_name->second);
    if (initial == -1 && !states.empty()) throw ParseError("missing 'initial:' line");

    std::vector<int> finals;
    for (const auto& [name, lineno] : final_names) finals.push_back(lookup_state(name, lineno));

    Nfa m = make_nfa(states, alphabet.letters(), initial, finals);
    for (const auto& [lineno, from, letter, to] : transition_lines) {
        auto s = alphabet.find(letter);
        if (!s) throw ParseError(lineno, "undeclared letter '" + letter + "'");
        m.add_transition(lookup_state(from, lineno), *s, lookup_state(to, lineno));
    }
    return m;
}

inline std::string nfa_format(const Nfa& m) {
    std::ostringstream out;
    out << "states:";
    for (const auto& s : m.states) out << ' ' << s;
    out << "\ninitial:";
    if (m.initial >= 0) out << ' ' << m.states[m.initial];
    out << "\nfinal:";
    for (int f : m.finals) out << ' ' << m.states[f];
    out << '\n';
    for (int q = 0; q < m.num_states(); ++q)
        for (int a = 0; a < m.num_letters(); ++a)
            for (int t : m.delta[q][a])
                out << m.states[q] << ' ' << m.letters[a] << ' ' << m.states[t] << '\n';
    return out.str();
}

/// Keeps exactly the states reachable from the initial state and co-reachable
/// to a final state. Language preserved; may return a machine with no states.
inline Nfa trim_bireachable(const Nfa& m) {
    int n = m.num_states();
    std::vector<bool> fwd(n, false), bwd(n, false);
    if (m.initial >= 0) {
        std::queue<int> bfs;
        bfs.push(m.initial);
        fwd[m.initial] = true;
        while (!bfs.empty()) {
            int q = bfs.front();
            bfs.pop();
            for (const auto& targets : m.delta[q])
                for (int t : targets)
                    if (!fwd[t]) {
                        fwd[t] = true;
                        bfs.push(t);
                    }
        }
    }
    {
        std::vector<std::vector<int>> rev(n);
        for (int q = 0; q < n; ++q)
            for (const auto& targets : m.delta[q])
                for (int t : targets) rev[t].push_back(q);
        std::queue<int> bfs;
        for (int f : m.finals) {
            bwd[f] = true;
            bfs.push(f);
        }
        while (!bfs.empty()) {
            int q = bfs.front();
            bfs.pop();
            for (int s : rev[q])
                if (!bwd[s]) {
                    bwd[s] = true;
                    bfs.push(s);
                }
        }
    }
    std::vector<int> remap(n, -1);
    std::vector<std::string> kept;
    for (int q = 0; q < n; ++q)
        if (fwd[q] && bwd[q]) {
            remap[q] = static_cast<int>(kept.size());
            kept.push_back(m.states[q]);
        }
    if (m.initial < 0 || remap[m.initial] == -1)
        return make_nfa({}, m.letters, -1, {});
    std::vector<int> finals;
    for (int f : m.finals)
        if (remap[f] != -1) finals.push_back(remap[f]);
    Nfa out = make_nfa(kept, m.letters, remap[m.initial], finals);
    for (int q = 0; q < n; ++q) {
        if (remap[q] == -1) continue;
        for (int a = 0; a < m.num_letters(); ++a)
            for (int t : m.delta[q][a])
                if (remap[t] != -1) out.add_transition(remap[q], a, remap[t]);
    }
    return out;
}

/// Same machine re-rooted at q with {q} final: accepts the words labelling
/// cycles through q (always includes the empty word).
inline Nfa loop_automaton(const Nfa& m, int q) {
    if (q < 0 || q >= m.num_states()) throw UnknownStateError("#" + std::to_string(q));
    Nfa out = m;
    out.initial = q;
    out.finals = {q};
    return out;
}

struct WordSlice {
    int length = 0;
    std::set<Word> words;
};

/// Exactly the accepted words of length n, by layered subset traversal.
inline WordSlice enumerate_slice(const Nfa& m, int n, int length_cap = 16) {
    if (n < 0 || n > length_cap)
        throw CapExceededError("slice length " + std::to_string(n) + " exceeds cap " +
                               std::to_string(length_cap));
    WordSlice slice;
    slice.length = n;
    if (m.initial < 0) return slice;
    std::map<Word, std::vector<bool>> layer;
    std::vector<bool> start(m.num_states(), false);
    start[m.initial] = true;
    layer.emplace(Word{}, start);
    for (int step = 0; step < n; ++step) {
        std::map<Word, std::vector<bool>> next_layer;
        for (const auto& [w, reach] : layer) {
            for (int a = 0; a < m.num_letters(); ++a) {
                std::vector<bool> next(m.num_states(), false);
                bool any = false;
                for (int q = 0; q < m.num_states(); ++q) {
                    if (!reach[q]) continue;
                    for (int t : m.delta[q][a]) {
                        next[t] = true;
                        any = true;
                    }
                }
                if (!any) continue;
                Word w2 = w;
                w2.push_back(a);
                next_layer.emplace(std::move(w2), std::move(next));
            }
        }
        layer = std::move(next_layer);
    }
    for (const auto& [w, reach] : layer)
        for (int f : m.finals)
            if (reach[f]) {
                slice.words.insert(w);
                break;
            }
    return slice;
}

/// Product automaton accepting the intersection; states are reachable pairs.
inline Nfa product_intersect(const Nfa& m1, const Nfa& m2) {
    if (m1.letters != m2.letters)
        throw AlphabetMismatchError("product requires identical alphabets");
    if (m1.initial < 0 || m2.initial < 0) return make_nfa({}, m1.letters, -1, {});
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int a, int b) {
        auto [it, fresh] = index.emplace(std::make_pair(a, b), static_cast<int>(pairs.size()));
        if (fresh) pairs.emplace_back(a, b);
        return it->second;
    };
    intern(m1.initial, m2.initial);
    std::vector<std::vector<std::pair<Symbol, int>>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [q1, q2] = pairs[i];
        edges.emplace_back();
        for (int a = 0; a < m1.num_letters(); ++a)
            for (int t1 : m1.delta[q1][a])
                for (int t2 : m2.delta[q2][a]) edges[i].emplace_back(a, intern(t1, t2));
    }
    std::vector<std::string> names;
    std::vector<int> finals;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [q1, q2] = pairs[i];
        names.push_back("(" + m1.states[q1] + "," + m2.states[q2] + ")");
        if (m1.is_final(q1) && m2.is_final(q2)) finals.push_back(static_cast<int>(i));
    }
    Nfa out = make_nfa(names, m1.letters, 0, finals);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (auto [a, t] : edges[i]) out.add_transition(static_cast<int>(i), a, t);
    return out;
}

/// Shortest accepted word by breadth-first search; ties broken by state and
/// letter declaration order, so witnesses are reproducible.
inline std::optional<Word> shortest_accepted(const Nfa& m) {
    if (m.initial < 0) return std::nullopt;
    if (m.is_final(m.initial)) return Word{};
    std::vector<int> parent(m.num_states(), -1);
    std::vector<Symbol> via(m.num_states(), -1);
    std::vector<bool> seen(m.num_states(), false);
    std::queue<int> bfs;
    bfs.push(m.initial);
    seen[m.initial] = true;
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        for (int a = 0; a < m.num_letters(); ++a)
            for (int t : m.delta[q][a]) {
                if (seen[t]) continue;
                seen[t] = true;
                parent[t] = q;
                via[t] = a;
                if (m.is_final(t)) {
                    Word w;
                    for (int at = t; at != m.initial; at = parent[at]) w.push_back(via[at]);
                    std::reverse(w.begin(), w.end());
                    return w;
                }
                bfs.push(t);
            }
    }
    return std::nullopt;
}

inline bool is_empty(const Nfa& m) { return !shortest_accepted(m).has_value(); }

/// Subset simulation membership test.
inline bool nfa_accepts(const Nfa& m, const Word& w) {
    if (m.initial < 0) return false;
    std::vector<bool> cur(m.num_states(), false);
    cur[m.initial] = true;
    for (Symbol a : w) {
        if (a < 0 || a >= m.num_letters()) throw UnknownLetterError("#" + std::to_string(a));
        std::vector<bool> next(m.num_states(), false);
        bool any = false;
        for (int q = 0; q < m.num_states(); ++q) {
            if (!cur[q]) continue;
            for (int t : m.delta[q][a]) {
                next[t] = true;
                any = true;
            }
        }
        if (!any) return false;
        cur = std::move(next);
    }
    for (int f : m.finals)
        if (cur[f]) return true;
    return false;
}

/// Shortest word leading from the initial state to `target` (not necessarily
/// accepted); same tie-breaking as shortest_accepted.
inline std::optional<Word> shortest_path_to(const Nfa& m, int target) {
    if (m.initial < 0) return std::nullopt;
    Nfa probe = m;
    probe.finals = {target};
    return shortest_accepted(probe);
}

}  // namespace lexwidth
