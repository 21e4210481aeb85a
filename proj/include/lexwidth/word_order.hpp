#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lexwidth/poset.hpp"

namespace lexwidth {

/// A finite word over a Poset's letters; empty vector is the empty word.
using Word = std::vector<Symbol>;

enum class Relation {
    Equal,
    Forward,       // first word below the second
    Backward,      // second word below the first
    Incomparable,
};

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "equal";
        case Relation::Forward: return "forward";
        case Relation::Backward: return "backward";
        default: return "incomparable";
    }
}

namespace detail {
inline void check_word(const Poset& p, const Word& w) {
    for (Symbol s : w)
        if (s < 0 || s >= p.size()) throw UnknownLetterError("#" + std::to_string(s));
}
}  // namespace detail

/// The lexicographic partial order on words: the empty word lies below every
/// word; otherwise words compare by their first letters, recursing on equality.
/// Two words are incomparable exactly when, at the first differing position,
/// neither word has ended and the letters there are incomparable.
inline Relation lex_relate(const Poset& p, const Word& w1, const Word& w2) {
    detail::check_word(p, w1);
    detail::check_word(p, w2);
    std::size_t n = std::min(w1.size(), w2.size());
    for (std::size_t i = 0; i < n; ++i) {
        Symbol a = w1[i], b = w2[i];
        if (a == b) continue;
        if (p.less(a, b)) return Relation::Forward;
        if (p.less(b, a)) return Relation::Backward;
        return Relation::Incomparable;
    }
    if (w1.size() == w2.size()) return Relation::Equal;
    return w1.size() < w2.size() ? Relation::Forward : Relation::Backward;
}

inline bool comparable(const Poset& p, const Word& w1, const Word& w2) {
    return lex_relate(p, w1, w2) != Relation::Incomparable;
}

/// Prefix order on words (not the lexicographic order).
inline bool is_prefix(const Word& w1, const Word& w2) {
    if (w1.size() > w2.size()) return false;
    return std::equal(w1.begin(), w1.end(), w2.begin());
}

/// True iff all distinct members are pairwise incomparable.
inline bool is_antichain(const Poset& p, const std::set<Word>& ws) {
    for (auto i = ws.begin(); i != ws.end(); ++i)
        for (auto j = std::next(i); j != ws.end(); ++j)
            if (lex_relate(p, *i, *j) != Relation::Incomparable) return false;
    return true;
}

/// True iff every pair is either a prefix pair or incomparable.
inline bool is_quasiantichain(const Poset& p, const std::set<Word>& ws) {
    for (auto i = ws.begin(); i != ws.end(); ++i)
        for (auto j = std::next(i); j != ws.end(); ++j) {
            if (is_prefix(*i, *j) || is_prefix(*j, *i)) continue;
            if (lex_relate(p, *i, *j) != Relation::Incomparable) return false;
        }
    return true;
}

/// True iff all pairs are comparable. Empty and singleton sets are chains.
inline bool is_chain(const Poset& p, const std::set<Word>& ws) {
    for (auto i = ws.begin(); i != ws.end(); ++i)
        for (auto j = std::next(i); j != ws.end(); ++j)
            if (lex_relate(p, *i, *j) == Relation::Incomparable) return false;
    return true;
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// From an incomparable pair (w1, w2) builds the 2^k antichain
///   { prefix . u1 ... uk . suffix : ui in {w1w2, w2w1} }.
/// The two blocks have equal length and are incomparable, so all members have
/// equal length and are pairwise incomparable.
inline std::set<Word> pump_antichain(const Poset& p, const Word& w1, const Word& w2,
                                     const Word& prefix, const Word& suffix, int k) {
    if (lex_relate(p, w1, w2) != Relation::Incomparable)
        throw NotIncomparableError("pump_antichain requires an incomparable pair");
    if (k < 0 || k > 24) throw CapExceededError("pump_antichain: k out of range");
    Word x = concat(w1, w2), y = concat(w2, w1);
    std::set<Word> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Word w = prefix;
        for (int i = 0; i < k; ++i) {
            const Word& block = (mask >> i) & 1 ? y : x;
            w.insert(w.end(), block.begin(), block.end());
        }
        w.insert(w.end(), suffix.begin(), suffix.end());
        out.insert(std::move(w));
    }
    return out;
}

/// Parses a word literal: whitespace-separated letter tokens, or one letter
/// per character when the string has no whitespace and each character names a
/// letter. The empty string is the empty word.
inline Word parse_word(const Poset& p, const std::string& text) {
    Word w;
    if (text.find_first_of(" \t") != std::string::npos) {
        for (const auto& tok : detail::split_ws(text)) w.push_back(p.index_of(tok));
        return w;
    }
    if (text.empty()) return w;
    if (p.contains(text) && text.size() > 1) return {p.index_of(text)};
    for (char c : text) w.push_back(p.index_of(std::string(1, c)));
    return w;
}

inline std::string format_word(const Poset& p, const Word& w) {
    bool single_char = true;
    for (const auto& l : p.letters())
        if (l.size() != 1) single_char = false;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single_char) out += ' ';
        out += p.name(w[i]);
    }
    return out;
}

}  // namespace lexwidth
