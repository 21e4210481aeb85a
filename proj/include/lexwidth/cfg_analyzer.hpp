#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexwidth/cfg.hpp"
#include "lexwidth/poset.hpp"
#include "lexwidth/word_order.hpp"

namespace lexwidth {

/// One derivation A =>* left . A . right, recorded with the spine of
/// (production index, body position) steps so it can be replayed.
struct SelfEmbedding {
    int nonterminal = 0;
    Word left;   // w  in  A =>* w A u
    Word right;  // u
    int depth = 0;
    std::vector<std::pair<int, int>> spine;

    bool operator==(const SelfEmbedding&) const = default;
};

namespace detail {

/// Spine walk from `from`: at each step one body nonterminal stays on the
/// spine, every other body symbol contributes its canonical shortest yield.
struct SpinePath {
    Word left, right;
    std::vector<std::pair<int, int>> spine;
    int end_nonterminal = 0;
};

inline void extend_spine_paths(const Cfg& g, const std::vector<Word>& yields,
                               const std::vector<SpinePath>& layer,
                               std::vector<SpinePath>& next) {
    for (const auto& path : layer) {
        for (int pi = 0; pi < static_cast<int>(g.productions.size()); ++pi) {
            const auto& prod = g.productions[pi];
            if (prod.lhs != path.end_nonterminal) continue;
            for (int pos = 0; pos < static_cast<int>(prod.rhs.size()); ++pos) {
                if (prod.rhs[pos].terminal) continue;
                SpinePath ext = path;
                for (int i = 0; i < pos; ++i) {
                    const auto& s = prod.rhs[i];
                    if (s.terminal)
                        ext.left.push_back(s.id);
                    else
                        ext.left.insert(ext.left.end(), yields[s.id].begin(), yields[s.id].end());
                }
                Word right_part;
                for (int i = pos + 1; i < static_cast<int>(prod.rhs.size()); ++i) {
                    const auto& s = prod.rhs[i];
                    if (s.terminal)
                        right_part.push_back(s.id);
                    else
                        right_part.insert(right_part.end(), yields[s.id].begin(),
                                          yields[s.id].end());
                }
                ext.right = concat(right_part, ext.right);
                ext.spine.emplace_back(pi, pos);
                ext.end_nonterminal = prod.rhs[pos].id;
                next.push_back(std::move(ext));
            }
        }
    }
}

}  // namespace detail

/// All self-embeddings of A with spine depth 1..max_depth. Side branches are
/// expanded to their canonical shortest terminal yields, so the collected
/// (left, right) pairs are genuine members of the loop sets. Deduplicated on
/// (left, right), keeping the shallowest derivation.
inline std::vector<SelfEmbedding> enumerate_self_embeddings(const Cfg& g, int a, int max_depth,
                                                            std::size_t cap = 50000) {
    if (g.empty_language) return {};
    if (a < 0 || a >= g.num_nonterminals())
        throw Error("unknown nonterminal #" + std::to_string(a));
    auto yields = cfg_min_yields(g);
    std::vector<SelfEmbedding> out;
    std::set<std::pair<Word, Word>> seen;
    std::vector<detail::SpinePath> layer{{{}, {}, {}, a}};
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<detail::SpinePath> next;
        detail::extend_spine_paths(g, yields, layer, next);
        if (next.size() > cap)
            throw CapExceededError("self-embedding enumeration exceeds cap at depth " +
                                   std::to_string(depth));
        for (const auto& path : next) {
            if (path.end_nonterminal != a) continue;
            if (!seen.emplace(path.left, path.right).second) continue;
            out.push_back({a, path.left, path.right, depth, path.spine});
            if (out.size() > cap) throw CapExceededError("self-embedding result cap exceeded");
        }
        layer = std::move(next);
    }
    return out;
}

/// Re-derives a recorded self-embedding step by step.
inline bool replay_self_embedding(const Cfg& g, const SelfEmbedding& se) {
    if (static_cast<int>(se.spine.size()) != se.depth) return false;
    std::vector<Word> yields = cfg_min_yields(g);
    int cur = se.nonterminal;
    Word left, right;
    for (auto [pi, pos] : se.spine) {
        if (pi < 0 || pi >= static_cast<int>(g.productions.size())) return false;
        const auto& prod = g.productions[pi];
        if (prod.lhs != cur) return false;
        if (pos < 0 || pos >= static_cast<int>(prod.rhs.size()) || prod.rhs[pos].terminal)
            return false;
        for (int i = 0; i < pos; ++i) {
            const auto& s = prod.rhs[i];
            if (s.terminal)
                left.push_back(s.id);
            else
                left.insert(left.end(), yields[s.id].begin(), yields[s.id].end());
        }
        Word right_part;
        for (int i = pos + 1; i < static_cast<int>(prod.rhs.size()); ++i) {
            const auto& s = prod.rhs[i];
            if (s.terminal)
                right_part.push_back(s.id);
            else
                right_part.insert(right_part.end(), yields[s.id].begin(), yields[s.id].end());
        }
        right = concat(right_part, right);
        cur = prod.rhs[pos].id;
    }
    return cur == se.nonterminal && left == se.left && right == se.right;
}

/// Access derivation S =>* u . A . u' with the shortest spine, side branches
/// canonical. Returns (u, u'); requires a trimmed grammar.
inline std::pair<Word, Word> access_derivation(const Cfg& g, int a) {
    if (a == g.start) return {Word{}, Word{}};
    auto yields = cfg_min_yields(g);
    std::vector<detail::SpinePath> layer{{{}, {}, {}, g.start}};
    for (int depth = 1; depth <= g.num_nonterminals(); ++depth) {
        std::vector<detail::SpinePath> next;
        detail::extend_spine_paths(g, yields, layer, next);
        for (const auto& path : next)
            if (path.end_nonterminal == a) return {path.left, path.right};
        layer = std::move(next);
    }
    throw Error("nonterminal '" + g.nonterminals.at(a) + "' unreachable (grammar not trimmed?)");
}

/// Outcome of the bounded chain check on the loop sets of a grammar. The
/// matching decision problem is undecidable, so the negative case only claims
/// "no witness up to the explored depth", never polynomial growth.
struct CfgVerdict {
    enum class Kind { ExponentialWitness, NoWitnessUpTo };
    enum class Source {
        LeftPair,            // incomparable pair among left parts of A's embeddings
        RightPairFixedLeft,  // incomparable right parts sharing one left part
    };

    struct Witness {
        std::string nonterminal;
        Source source = Source::LeftPair;
        Word w1, w2;         // the incomparable pair
        Word fixed_left;     // shared left part (RightPairFixedLeft only)
        Word tail1, tail2;   // right parts paired with w1/w2 (LeftPair only)
        Word access_left, access_right;  // S =>* access_left . A . access_right
        Word terminal_yield;             // A =>* terminal_yield
        SelfEmbedding embedding1, embedding2;
    };

    Kind kind = Kind::NoWitnessUpTo;
    int depth = 0;
    bool empty_language = false;
    std::optional<Witness> witness;
};

inline const char* to_string(CfgVerdict::Kind k) {
    return k == CfgVerdict::Kind::ExponentialWitness ? "exponential-witness" : "no-witness-up-to";
}

/// Scans every nonterminal's bounded embedding sample: first for an
/// incomparable pair of left parts, then for an incomparable pair of right
/// parts sharing a left part. Sound for the exponential direction;
/// inconclusive otherwise.
inline CfgVerdict classify_cfg_bounded(const Cfg& g_in, const Poset& p, int max_depth,
                                       std::size_t cap = 50000) {
    Cfg g = cfg_trim(g_in);
    CfgVerdict verdict;
    verdict.depth = max_depth;
    if (g.empty_language) {
        verdict.empty_language = true;
        return verdict;
    }

    std::vector<std::vector<SelfEmbedding>> samples(g.num_nonterminals());
    for (int a = 0; a < g.num_nonterminals(); ++a)
        samples[a] = enumerate_self_embeddings(g, a, max_depth, cap);

    auto finish = [&](int a, CfgVerdict::Source source, const SelfEmbedding& e1,
                      const SelfEmbedding& e2) {
        CfgVerdict::Witness wit;
        wit.nonterminal = g.nonterminals[a];
        wit.source = source;
        if (source == CfgVerdict::Source::LeftPair) {
            wit.w1 = e1.left;
            wit.w2 = e2.left;
            wit.tail1 = e1.right;
            wit.tail2 = e2.right;
        } else {
            wit.fixed_left = e1.left;
            wit.w1 = e1.right;
            wit.w2 = e2.right;
        }
        auto [u, u2] = access_derivation(g, a);
        wit.access_left = u;
        wit.access_right = u2;
        wit.terminal_yield = cfg_min_yields(g)[a];
        wit.embedding1 = e1;
        wit.embedding2 = e2;
        if (!replay_self_embedding(g, e1) || !replay_self_embedding(g, e2))
            throw Error("witness embedding failed to replay (internal)");
        verdict.kind = CfgVerdict::Kind::ExponentialWitness;
        verdict.witness = std::move(wit);
        return verdict;
    };

    for (int a = 0; a < g.num_nonterminals(); ++a) {
        const auto& sample = samples[a];
        for (std::size_t i = 0; i < sample.size(); ++i)
            for (std::size_t j = i + 1; j < sample.size(); ++j)
                if (lex_relate(p, sample[i].left, sample[j].left) == Relation::Incomparable)
                    return finish(a, CfgVerdict::Source::LeftPair, sample[i], sample[j]);
    }
    for (int a = 0; a < g.num_nonterminals(); ++a) {
        std::map<Word, std::vector<const SelfEmbedding*>> by_left;
        for (const auto& se : samples[a]) by_left[se.left].push_back(&se);
        for (const auto& [left, group] : by_left) {
            for (std::size_t i = 0; i < group.size(); ++i)
                for (std::size_t j = i + 1; j < group.size(); ++j)
                    if (lex_relate(p, group[i]->right, group[j]->right) == Relation::Incomparable)
                        return finish(a, CfgVerdict::Source::RightPairFixedLeft, *group[i],
                                      *group[j]);
        }
    }
    return verdict;
}

/// Default exploration depth used by the command line front end.
inline int default_cfg_depth(const Cfg& g) { return 2 * std::max(1, g.num_nonterminals()) + 2; }

/// The 2^k equal-length antichain certified by an ExponentialWitness verdict.
/// Every member is derivable: each block consumes two embedding applications,
/// whose right parts are appended in reverse application order.
inline std::set<Word> cfg_exponential_family(const CfgVerdict& v, int k) {
    if (v.kind != CfgVerdict::Kind::ExponentialWitness || !v.witness)
        throw Error("cfg_exponential_family requires an ExponentialWitness verdict");
    if (k < 0 || k > 20) throw CapExceededError("cfg_exponential_family: k out of range");
    const auto& w = *v.witness;
    std::set<Word> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        // choices[i] = true selects the (w2, w1) order for block i
        Word middle, tails;
        for (int i = 0; i < k; ++i) {
            bool swap = (mask >> i) & 1;
            const Word *first, *second, *first_tail, *second_tail;
            if (v.witness->source == CfgVerdict::Source::LeftPair) {
                first = swap ? &w.w2 : &w.w1;
                second = swap ? &w.w1 : &w.w2;
                first_tail = swap ? &w.tail2 : &w.tail1;
                second_tail = swap ? &w.tail1 : &w.tail2;
            } else {
                first = &w.fixed_left;
                second = &w.fixed_left;
                first_tail = swap ? &w.w2 : &w.w1;
                second_tail = swap ? &w.w1 : &w.w2;
            }
            middle.insert(middle.end(), first->begin(), first->end());
            middle.insert(middle.end(), second->begin(), second->end());
            // reverse application order: the inner (second) tail comes first
            Word block_tail = concat(*second_tail, *first_tail);
            tails = concat(block_tail, tails);
        }
        Word word = w.access_left;
        word = concat(word, middle);
        word = concat(word, w.terminal_yield);
        word = concat(word, tails);
        word = concat(word, w.access_right);
        out.insert(std::move(word));
    }
    return out;
}

namespace detail {

inline std::string fresh_name(std::string base, const std::set<std::string>& taken) {
    while (taken.count(base)) base += "_";
    return base;
}

}  // namespace detail

/// Builds a grammar for L(g1).#0 | L(g2).#1 together with an order making it
/// a chain exactly when the two languages are disjoint: the base letters get
/// the declaration-order linear order, both fresh letters sit above all of
/// them, and the fresh letters are mutually incomparable.
inline std::pair<Cfg, Poset> reduce_intersection_to_chain(const Cfg& g1, const Cfg& g2,
                                                          const std::vector<std::string>& letters) {
    std::set<std::string> taken(letters.begin(), letters.end());
    std::string zero = detail::fresh_name("#0", taken);
    taken.insert(zero);
    std::string one = detail::fresh_name("#1", taken);

    std::vector<std::string> all_letters = letters;
    all_letters.push_back(zero);
    all_letters.push_back(one);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
        pairs.emplace_back(letters[i], letters[i + 1]);
    for (const auto& l : letters) {
        pairs.emplace_back(l, zero);
        pairs.emplace_back(l, one);
    }
    Poset order = Poset::build(all_letters, pairs);

    for (const Cfg* g : {&g1, &g2})
        for (const auto& prod : g->productions)
            for (const auto& s : prod.rhs)
                if (s.terminal &&
                    std::find(letters.begin(), letters.end(), g->terminals.at(s.id)) ==
                        letters.end())
                    throw UnknownLetterError(g->terminals.at(s.id));

    Cfg out;
    out.terminals = all_letters;
    std::set<std::string> nt_taken;
    auto import = [&](const Cfg& g, std::vector<int>& remap) {
        remap.resize(g.num_nonterminals());
        for (int i = 0; i < g.num_nonterminals(); ++i) {
            std::string name = detail::fresh_name(g.nonterminals[i], nt_taken);
            nt_taken.insert(name);
            remap[i] = static_cast<int>(out.nonterminals.size());
            out.nonterminals.push_back(name);
        }
        for (const auto& prod : g.productions) {
            CfgProduction copy;
            copy.lhs = remap[prod.lhs];
            for (const auto& s : prod.rhs) {
                if (s.terminal)
                    copy.rhs.push_back(CfgSym::t(order.index_of(g.terminals.at(s.id))));
                else
                    copy.rhs.push_back(CfgSym::nt(remap[s.id]));
            }
            out.productions.push_back(std::move(copy));
        }
    };
    std::vector<int> remap1, remap2;
    import(g1, remap1);
    import(g2, remap2);

    std::string start_name = detail::fresh_name("S~", nt_taken);
    int start = static_cast<int>(out.nonterminals.size());
    out.nonterminals.push_back(start_name);
    out.start = start;
    out.productions.push_back(
        {start, {CfgSym::nt(remap1[g1.start]), CfgSym::t(order.index_of(zero))}});
    out.productions.push_back(
        {start, {CfgSym::nt(remap2[g2.start]), CfgSym::t(order.index_of(one))}});
    return {out, order};
}

/// Builds a grammar for (L(g).#0)* with #0 above every existing letter; the
/// result has exponential antichain growth exactly when L(g) is not a chain.
inline std::pair<Cfg, Poset> reduce_chain_to_expantichain(const Cfg& g, const Poset& p) {
    std::set<std::string> taken(p.letters().begin(), p.letters().end());
    std::string zero = detail::fresh_name("#0", taken);

    std::vector<std::string> all_letters = p.letters();
    all_letters.push_back(zero);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto [a, b] : p.strict_pairs()) pairs.emplace_back(p.name(a), p.name(b));
    for (const auto& l : p.letters()) pairs.emplace_back(l, zero);
    Poset order = Poset::build(all_letters, pairs);

    Cfg out;
    out.terminals = all_letters;
    std::set<std::string> nt_taken;
    std::vector<int> remap(g.num_nonterminals());
    for (int i = 0; i < g.num_nonterminals(); ++i) {
        std::string name = detail::fresh_name(g.nonterminals[i], nt_taken);
        nt_taken.insert(name);
        remap[i] = i;
        out.nonterminals.push_back(name);
    }
    for (const auto& prod : g.productions) {
        CfgProduction copy;
        copy.lhs = remap[prod.lhs];
        for (const auto& s : prod.rhs) {
            if (s.terminal)
                copy.rhs.push_back(CfgSym::t(order.index_of(g.terminals.at(s.id))));
            else
                copy.rhs.push_back(CfgSym::nt(remap[s.id]));
        }
        out.productions.push_back(std::move(copy));
    }
    std::string star_name = detail::fresh_name("S~", nt_taken);
    int star = static_cast<int>(out.nonterminals.size());
    out.nonterminals.push_back(star_name);
    out.start = star;
    if (!g.empty_language)
        out.productions.push_back(
            {star, {CfgSym::nt(remap[g.start]), CfgSym::t(order.index_of(zero)), CfgSym::nt(star)}});
    out.productions.push_back({star, {}});
    return {out, order};
}

}  // namespace lexwidth
