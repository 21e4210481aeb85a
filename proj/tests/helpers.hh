// Shared fixtures and deterministic random generators for the test suites.
#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "lexwidth/lexwidth.hpp"

namespace th {

using namespace lexwidth;

inline Word w(const Poset& p, const std::string& s) { return parse_word(p, s); }

inline std::set<Word> words(const Poset& p, const std::vector<std::string>& ss) {
    std::set<Word> out;
    for (const auto& s : ss) out.insert(parse_word(p, s));
    return out;
}

/// Every partial order on the given letters, by brute force over pair sets
/// (kept only when already transitively closed and acyclic).
inline std::vector<Poset> all_posets(const std::vector<std::string>& letters) {
    int n = static_cast<int>(letters.size());
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) slots.emplace_back(i, j);
    std::vector<Poset> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((mask >> s) & 1) pairs.emplace_back(letters[slots[s].first], letters[slots[s].second]);
        try {
            Poset p = Poset::build(letters, pairs);
            if (p.strict_pairs().size() == pairs.size()) out.push_back(std::move(p));
        } catch (const CycleError&) {
        }
    }
    return out;
}

/// Random poset: a random subset of the increasing pairs of a random letter
/// permutation, transitively closed (hence always acyclic).
inline Poset random_poset(std::mt19937& rng, int num_letters) {
    static const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
    std::vector<std::string> letters(pool.begin(), pool.begin() + num_letters);
    std::vector<int> perm(num_letters);
    for (int i = 0; i < num_letters; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < num_letters; ++i)
        for (int j = i + 1; j < num_letters; ++j)
            if (rng() % 2) pairs.emplace_back(letters[perm[i]], letters[perm[j]]);
    return Poset::build(letters, pairs);
}

inline Word random_word(std::mt19937& rng, const Poset& p, int max_len) {
    int len = static_cast<int>(rng() % (max_len + 1));
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<Symbol>(rng() % p.size()));
    return w;
}

inline Nfa random_nfa(std::mt19937& rng, const Poset& p, int max_states) {
    int n = 1 + static_cast<int>(rng() % max_states);
    std::vector<std::string> states;
    for (int i = 0; i < n; ++i) states.push_back("q" + std::to_string(i));
    std::vector<int> finals;
    for (int i = 0; i < n; ++i)
        if (rng() % 2) finals.push_back(i);
    Nfa m = make_nfa(states, p.letters(), 0, finals);
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < p.size(); ++a) {
            int fan = static_cast<int>(rng() % 3);  // 0..2 targets
            for (int k = 0; k < fan; ++k) m.add_transition(q, a, static_cast<int>(rng() % n));
        }
    return m;
}

/// Random trimmed grammar over p with small productions; start always
/// generating (a terminal-only production is forced).
inline Cfg random_cfg(std::mt19937& rng, const Poset& p, int max_nonterminals) {
    int n = 1 + static_cast<int>(rng() % max_nonterminals);
    Cfg g;
    g.terminals = p.letters();
    for (int i = 0; i < n; ++i) g.nonterminals.push_back("N" + std::to_string(i));
    g.start = 0;
    auto random_body = [&](bool terminal_only) {
        std::vector<CfgSym> body;
        int len = static_cast<int>(rng() % 4);
        for (int i = 0; i < len; ++i) {
            if (terminal_only || rng() % 3 != 0)
                body.push_back(CfgSym::t(static_cast<int>(rng() % p.size())));
            else
                body.push_back(CfgSym::nt(static_cast<int>(rng() % n)));
        }
        return body;
    };
    for (int a = 0; a < n; ++a) {
        g.productions.push_back({a, random_body(true)});
        int extra = 1 + static_cast<int>(rng() % 2);
        for (int e = 0; e < extra; ++e) g.productions.push_back({a, random_body(false)});
    }
    return cfg_trim(g);
}

struct RandomNfta {
    RankedAlphabet alphabet;
    Nfta automaton;
};

/// Random tree automaton over a constant a, unary g and binary f.
inline RandomNfta random_nfta(std::mt19937& rng, int max_states) {
    Poset order = Poset::trivial({"a", "g", "f"});
    RankedAlphabet ra = RankedAlphabet::over(order, {{"a", 0}, {"g", 1}, {"f", 2}});
    int n = 1 + static_cast<int>(rng() % max_states);
    Nfta a;
    for (int i = 0; i < n; ++i) a.states.push_back("q" + std::to_string(i));
    a.rules.push_back({order.index_of("a"), {}, static_cast<int>(rng() % n)});
    int extra = 2 + static_cast<int>(rng() % 6);
    for (int e = 0; e < extra; ++e) {
        switch (rng() % 4) {
            case 0:
                a.rules.push_back({order.index_of("a"), {}, static_cast<int>(rng() % n)});
                break;
            case 1:
                a.rules.push_back(
                    {order.index_of("g"), {static_cast<int>(rng() % n)}, static_cast<int>(rng() % n)});
                break;
            default:
                a.rules.push_back({order.index_of("f"),
                                   {static_cast<int>(rng() % n), static_cast<int>(rng() % n)},
                                   static_cast<int>(rng() % n)});
        }
    }
    for (int i = 0; i < n; ++i)
        if (rng() % 2) a.finals.push_back(i);
    if (a.finals.empty()) a.finals.push_back(static_cast<int>(rng() % n));
    std::sort(a.finals.begin(), a.finals.end());
    a.finals.erase(std::unique(a.finals.begin(), a.finals.end()), a.finals.end());
    return {ra, a};
}

}  // namespace th
