#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lexwidth/nfa.hpp"
#include "lexwidth/poset.hpp"
#include "lexwidth/word_order.hpp"

namespace lexwidth {

/// The doubled alphabet: base letters keep their indices, each letter a gets
/// a fresh primed copy a' at index a + base_size.
struct PrimedAlphabet {
    int base_size = 0;
    std::vector<std::string> names;  // unprimed block then primed block

    static PrimedAlphabet over(const Poset& p) {
        PrimedAlphabet pa;
        pa.base_size = p.size();
        pa.names = p.letters();
        std::set<std::string> taken(pa.names.begin(), pa.names.end());
        for (const auto& l : p.letters()) {
            std::string primed = l + "'";
            while (taken.count(primed)) primed += "'";
            taken.insert(primed);
            pa.names.push_back(primed);
        }
        return pa;
    }

    Symbol prime(Symbol a) const { return a + base_size; }
    bool is_primed(Symbol x) const { return x >= base_size; }
    Symbol unprime(Symbol x) const { return is_primed(x) ? x - base_size : x; }
};

/// The incomparability detector over the doubled alphabet: it accepts exactly
/// the shuffles of pairs (w1, w2') whose base words agree on a prefix and then
/// first differ at two incomparable letters. States are s0, one state per
/// letter (the letter just read and owed a primed partner), and the accepting
/// sink s1.
inline Nfa build_incomparability_automaton(const Poset& p) {
    PrimedAlphabet pa = PrimedAlphabet::over(p);
    int n = p.size();
    std::vector<std::string> state_names;
    std::set<std::string> taken;
    auto fresh = [&](std::string name) {
        while (taken.count(name)) name += "_";
        taken.insert(name);
        return name;
    };
    state_names.push_back(fresh("s0"));
    for (const auto& l : p.letters()) state_names.push_back(fresh(l));
    state_names.push_back(fresh("s1"));
    const int s0 = 0, s1 = n + 1;
    auto letter_state = [](Symbol a) { return a + 1; };

    Nfa b = make_nfa(state_names, pa.names, s0, {s1});
    for (Symbol a = 0; a < n; ++a) {
        b.add_transition(s0, a, letter_state(a));
        b.add_transition(letter_state(a), pa.prime(a), s0);
        for (Symbol c = 0; c < n; ++c)
            if (!p.comparable(a, c)) b.add_transition(letter_state(a), pa.prime(c), s1);
    }
    for (Symbol x = 0; x < 2 * n; ++x) b.add_transition(s1, x, s1);
    return b;
}

/// The perfect shuffle a1 b1' a2 b2' ... with the longer word's leftovers at
/// the end (w2 on the primed track).
inline Word perfect_shuffle(const PrimedAlphabet& pa, const Word& w1, const Word& w2) {
    Word out;
    std::size_t n = std::max(w1.size(), w2.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i < w1.size()) out.push_back(w1[i]);
        if (i < w2.size()) out.push_back(pa.prime(w2[i]));
    }
    return out;
}

/// Splits a word over the doubled alphabet back into its unprimed and primed
/// (de-primed) tracks.
inline std::pair<Word, Word> deinterleave(const PrimedAlphabet& pa, const Word& shuffle) {
    Word w1, w2;
    for (Symbol x : shuffle) {
        if (pa.is_primed(x))
            w2.push_back(pa.unprime(x));
        else
            w1.push_back(x);
    }
    return {w1, w2};
}

/// Product of two copies of the loop automaton at q (one on the primed track)
/// with the incomparability automaton: unprimed letters advance copy one and
/// b, primed letters advance copy two and b. Accepting state is (q, q, s1),
/// so the language is nonempty iff the loop language at q is not a chain.
inline Nfa interleave_loop_product(const Nfa& m, int q, const Nfa& b) {
    if (q < 0 || q >= m.num_states()) throw UnknownStateError("#" + std::to_string(q));
    int base = static_cast<int>(m.letters.size());
    std::map<std::tuple<int, int, int>, int> index;
    std::vector<std::tuple<int, int, int>> triples;
    auto intern = [&](int i, int j, int k) {
        auto [it, fresh] =
            index.emplace(std::make_tuple(i, j, k), static_cast<int>(triples.size()));
        if (fresh) triples.emplace_back(i, j, k);
        return it->second;
    };
    intern(q, q, b.initial);
    std::vector<std::vector<std::pair<Symbol, int>>> edges;
    for (std::size_t s = 0; s < triples.size(); ++s) {
        auto [i, j, k] = triples[s];
        edges.emplace_back();
        for (Symbol x = 0; x < 2 * base; ++x) {
            for (int kb : b.delta[k][x]) {
                if (x < base) {
                    for (int i2 : m.delta[i][x]) edges[s].emplace_back(x, intern(i2, j, kb));
                } else {
                    for (int j2 : m.delta[j][x - base]) edges[s].emplace_back(x, intern(i, j2, kb));
                }
            }
        }
    }
    std::vector<std::string> names;
    std::vector<int> finals;
    int b_final = b.finals.at(0);
    for (std::size_t s = 0; s < triples.size(); ++s) {
        auto [i, j, k] = triples[s];
        names.push_back("(" + m.states[i] + "," + m.states[j] + "," + b.states[k] + ")");
        if (i == q && j == q && k == b_final) finals.push_back(static_cast<int>(s));
    }
    Nfa out = make_nfa(names, b.letters, 0, finals);
    for (std::size_t s = 0; s < triples.size(); ++s)
        for (auto [x, t] : edges[s]) out.add_transition(static_cast<int>(s), x, t);
    return out;
}

/// Returns an incomparable pair of loop words at q, or nullopt when the loop
/// language at q is a chain. The pair is de-interleaved from the shortest
/// accepted shuffle, so results are deterministic.
inline std::optional<std::pair<Word, Word>> chain_check_state(const Nfa& m, int q,
                                                              const Poset& p) {
    Nfa b = build_incomparability_automaton(p);
    Nfa product = interleave_loop_product(m, q, b);
    auto shuffle = shortest_accepted(product);
    if (!shuffle) return std::nullopt;
    return deinterleave(PrimedAlphabet::over(p), *shuffle);
}

/// Classification outcome for a regular language's antichain growth.
struct Verdict {
    enum class Kind { Polynomial, Exponential };

    struct Witness {
        std::string state;
        Word w1, w2;        // incomparable loop words at `state`
        Word access_in;     // shortest word from the initial state into `state`
        Word access_out;    // shortest word from `state` to a final state
    };

    Kind kind = Kind::Polynomial;
    bool empty_language = false;
    std::optional<Witness> witness;
};

inline const char* to_string(Verdict::Kind k) {
    return k == Verdict::Kind::Polynomial ? "polynomial" : "exponential";
}

/// Decides the polynomial/exponential antichain growth dichotomy: the language
/// grows exponentially iff some bireachable state carries a non-chain loop
/// language. Exponential verdicts come with a machine-checked witness.
inline Verdict classify_nfa(const Nfa& m, const Poset& p) {
    Nfa trimmed = trim_bireachable(m);
    Verdict verdict;
    if (trimmed.num_states() == 0) {
        verdict.empty_language = true;
        return verdict;
    }
    Nfa b = build_incomparability_automaton(p);
    for (int q = 0; q < trimmed.num_states(); ++q) {
        Nfa product = interleave_loop_product(trimmed, q, b);
        auto shuffle = shortest_accepted(product);
        if (!shuffle) continue;
        auto [w1, w2] = deinterleave(PrimedAlphabet::over(p), *shuffle);
        Verdict::Witness wit;
        wit.state = trimmed.states[q];
        wit.w1 = w1;
        wit.w2 = w2;
        wit.access_in = shortest_path_to(trimmed, q).value();
        Nfa from_q = trimmed;
        from_q.initial = q;
        wit.access_out = shortest_accepted(from_q).value();

        // Self-check before reporting.
        if (lex_relate(p, w1, w2) != Relation::Incomparable)
            throw Error("witness pair not incomparable (internal)");
        Nfa loop = loop_automaton(trimmed, q);
        if (!nfa_accepts(loop, w1) || !nfa_accepts(loop, w2))
            throw Error("witness pair not loop-accepted (internal)");
        for (const Word& wi : {w1, w2})
            if (!nfa_accepts(trimmed, concat(concat(wit.access_in, wi), wit.access_out)))
                throw Error("witness word not accepted (internal)");

        verdict.kind = Verdict::Kind::Exponential;
        verdict.witness = wit;
        return verdict;
    }
    return verdict;
}

/// The 2^k equal-length antichain certified by an Exponential verdict; every
/// member is accepted by the classified machine.
inline std::set<Word> exponential_family(const Poset& p, const Verdict& v, int k) {
    if (v.kind != Verdict::Kind::Exponential || !v.witness)
        throw Error("exponential_family requires an Exponential verdict");
    const auto& w = *v.witness;
    return pump_antichain(p, w.w1, w.w2, w.access_in, w.access_out, k);
}

}  // namespace lexwidth
