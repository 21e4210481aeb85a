#pragma once

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lexwidth/poset.hpp"
#include "lexwidth/word_order.hpp"

namespace lexwidth {

/// Hole markers for contexts; ordinary symbols are Poset indices (>= 0).
inline constexpr int kHole1 = -1;
inline constexpr int kHole2 = -2;

/// Ranked ordered tree. Holes are leaves with negative symbols; a tree without
/// holes is a ground term.
struct Tree {
    int symbol = 0;
    std::vector<Tree> children;

    bool operator==(const Tree& other) const {
        return symbol == other.symbol && children == other.children;
    }
    bool operator<(const Tree& other) const {  // structural, for ordered containers
        if (symbol != other.symbol) return symbol < other.symbol;
        return std::lexicographical_compare(children.begin(), children.end(),
                                            other.children.begin(), other.children.end());
    }
};

inline Tree leaf(int symbol) { return Tree{symbol, {}}; }
inline Tree node(int symbol, std::vector<Tree> children) { return Tree{symbol, std::move(children)}; }
inline Tree hole1() { return leaf(kHole1); }
inline Tree hole2() { return leaf(kHole2); }

/// Function symbols with fixed arities, partially ordered by a Poset on the
/// symbol names. Arity -1 marks a letter that may not appear in trees.
struct RankedAlphabet {
    Poset order;
    std::vector<int> arities;

    int arity(Symbol s) const {
        int a = arities.at(s);
        if (a < 0) throw Error("symbol '" + order.name(s) + "' has no declared arity");
        return a;
    }

    static RankedAlphabet over(const Poset& order, const std::vector<std::pair<std::string, int>>& decls) {
        RankedAlphabet ra;
        ra.order = order;
        ra.arities.assign(order.size(), -1);
        for (const auto& [name, arity] : decls) {
            Symbol s = order.index_of(name);
            if (ra.arities[s] >= 0 && ra.arities[s] != arity)
                throw ParseError("conflicting arity for '" + name + "'");
            if (arity < 0) throw ParseError("negative arity for '" + name + "'");
            ra.arities[s] = arity;
        }
        return ra;
    }
};

/// Height with h(hole) = 0, h(constant) = 1, h(f(...)) = 1 + max child height.
inline int tree_height(const Tree& t) {
    if (t.symbol < 0) return 0;
    int h = 0;
    for (const auto& c : t.children) h = std::max(h, tree_height(c));
    return 1 + h;
}

inline int count_holes(const Tree& t, int hole) {
    if (t.symbol == hole) return 1;
    int n = 0;
    for (const auto& c : t.children) n += count_holes(c, hole);
    return n;
}

inline bool is_ground(const Tree& t) {
    if (t.symbol < 0) return false;
    for (const auto& c : t.children)
        if (!is_ground(c)) return false;
    return true;
}

/// Linear unary/binary context check: each named hole occurs exactly once.
inline bool is_unary_context(const Tree& t) {
    return count_holes(t, kHole1) == 1 && count_holes(t, kHole2) == 0;
}
inline bool is_binary_context(const Tree& t) {
    return count_holes(t, kHole1) == 1 && count_holes(t, kHole2) == 1;
}

/// Substitutes s1 for x1 and s2 for x2.
inline Tree substitute(const Tree& ctx, const Tree& s1, const Tree& s2) {
    if (ctx.symbol == kHole1) return s1;
    if (ctx.symbol == kHole2) return s2;
    Tree out;
    out.symbol = ctx.symbol;
    out.children.reserve(ctx.children.size());
    for (const auto& c : ctx.children) out.children.push_back(substitute(c, s1, s2));
    return out;
}

inline Tree substitute(const Tree& ctx, const Tree& s1) { return substitute(ctx, s1, hole2()); }

namespace detail {

// t1 related-below t2 in the lexicographic tree order. Holes act as a bottom
// element: below every proper symbol, distinct holes unrelated.
inline bool tree_below(const RankedAlphabet& ra, const Tree& t1, const Tree& t2) {
    if (t1.symbol == t2.symbol) {
        if (t1.children.size() != t2.children.size()) return false;
        for (std::size_t i = 0; i < t1.children.size(); ++i)
            if (!tree_below(ra, t1.children[i], t2.children[i])) return false;
        return true;
    }
    if (t1.symbol < 0) return t2.symbol >= 0;
    if (t2.symbol < 0) return false;
    return ra.order.less(t1.symbol, t2.symbol);
}

}  // namespace detail

/// The lexicographic partial order on trees: roots compare by the symbol
/// order; on equal roots every child pair must relate the same way.
inline Relation tree_relate(const RankedAlphabet& ra, const Tree& t1, const Tree& t2) {
    if (t1 == t2) return Relation::Equal;
    if (detail::tree_below(ra, t1, t2)) return Relation::Forward;
    if (detail::tree_below(ra, t2, t1)) return Relation::Backward;
    return Relation::Incomparable;
}

inline bool tree_comparable(const RankedAlphabet& ra, const Tree& t1, const Tree& t2) {
    return tree_relate(ra, t1, t2) != Relation::Incomparable;
}

inline bool is_tree_antichain(const RankedAlphabet& ra, const std::vector<Tree>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            if (tree_relate(ra, ts[i], ts[j]) != Relation::Incomparable) return false;
    return true;
}

/// Tree literal format: `f(a(),f(a(),a()))`; constants may drop the parens;
/// `x1`/`x2` denote context holes.
inline Tree tree_parse(const std::string& text, const RankedAlphabet& ra) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<Tree()> parse_term = [&]() -> Tree {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ',' &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (name.empty()) throw ParseError("expected a symbol at offset " + std::to_string(pos));
        skip_ws();
        if (name == "x1" && !ra.order.contains(name)) return hole1();
        if (name == "x2" && !ra.order.contains(name)) return hole2();
        Tree t;
        t.symbol = ra.order.index_of(name);
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            skip_ws();
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
            } else {
                while (true) {
                    t.children.push_back(parse_term());
                    skip_ws();
                    if (pos < text.size() && text[pos] == ',') {
                        ++pos;
                        continue;
                    }
                    if (pos < text.size() && text[pos] == ')') {
                        ++pos;
                        break;
                    }
                    throw ParseError("expected ',' or ')' at offset " + std::to_string(pos));
                }
            }
        }
        if (static_cast<int>(t.children.size()) != ra.arity(t.symbol))
            throw ParseError("arity mismatch for '" + name + "'");
        return t;
    };
    Tree t = parse_term();
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing input at offset " + std::to_string(pos));
    return t;
}

inline std::string tree_format(const Tree& t, const RankedAlphabet& ra) {
    if (t.symbol == kHole1) return "x1";
    if (t.symbol == kHole2) return "x2";
    std::string out = ra.order.name(t.symbol) + "(";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ',';
        out += tree_format(t.children[i], ra);
    }
    return out + ")";
}

/// Encodes a word as a monadic tree over an alphabet that provides every
/// letter at arity one plus a bottom constant: the first letter becomes the
/// root and the constant sits at the bottom.
inline Tree word_to_tree(const Word& w, Symbol bottom) {
    Tree t = leaf(bottom);
    for (auto it = w.rbegin(); it != w.rend(); ++it) t = node(*it, {t});
    return t;
}

}  // namespace lexwidth
