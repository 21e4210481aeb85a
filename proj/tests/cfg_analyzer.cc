#include <catch2/catch.hpp>

#include "helpers.hh"

using namespace lexwidth;

namespace {

// S -> a S 0 | a S 1 | b 0 | b 1 over {a,b,0,1} with a<b
struct DoublingGrammar {
    Poset order = Poset::build({"a", "b", "0", "1"}, {{"a", "b"}});
    Cfg grammar = cfg_parse(
        "nonterminals: S\nstart: S\nS -> a S 0 | a S 1\nS -> b 0\nS -> b 1\n", order);
};

bool member(const Cfg& g, const Word& word, int cap = 12) {
    return cfg_slice(g, static_cast<int>(word.size()), cap).words.count(word) > 0;
}

}  // namespace

TEST_CASE("cfg parse, trim and empty detection", "[cfg_analyzer]") {
    Poset p = Poset::build({"a", "b"}, {{"a", "b"}});
    Cfg g = cfg_parse("nonterminals: S\nstart: S\nS -> a S b\nS ->\n", p);
    CHECK(g.num_nonterminals() == 1);
    CHECK(g.productions.size() == 2);
    CHECK(g.productions[1].rhs.empty());

    Cfg untrimmed = cfg_parse(
        "nonterminals: S T U\nstart: S\nS -> a\nS -> T\nT -> T b\nU -> a\n", p);
    Cfg t = cfg_trim(untrimmed);
    CHECK(t.num_nonterminals() == 1);  // T never terminates, U unreachable
    CHECK_FALSE(t.empty_language);

    Cfg hopeless = cfg_trim(cfg_parse("nonterminals: S\nstart: S\nS -> a S\n", p));
    CHECK(hopeless.empty_language);

    CHECK_THROWS_AS(cfg_parse("nonterminals: S\nstart: S\nS -> z\n", p), ParseError);
    CHECK_THROWS_AS(cfg_parse("nonterminals: S\nS -> a\n", p), ParseError);

    Cfg again = cfg_parse(cfg_format(t), p);
    CHECK(again == t);
}

TEST_CASE("trim preserves the language", "[cfg_analyzer]") {
    std::mt19937 rng(11002);
    for (int round = 0; round < 60; ++round) {
        Poset p = th::random_poset(rng, 2);
        Cfg g = th::random_cfg(rng, p, 3);  // already trimmed by the helper
        if (g.empty_language) continue;
        // grafting junk does not change slices after a fresh trim
        Cfg padded = g;
        padded.nonterminals.push_back("Zombie");
        padded.productions.push_back(
            {padded.num_nonterminals() - 1, {CfgSym::nt(padded.num_nonterminals() - 1)}});
        Cfg again = cfg_trim(padded);
        for (int n = 0; n <= 5; ++n)
            REQUIRE(cfg_slice(again, n).words == cfg_slice(g, n).words);
    }
}

TEST_CASE("cfg slices", "[cfg_analyzer]") {
    Poset p = Poset::build({"a", "b"}, {{"a", "b"}});
    Cfg nested = cfg_parse("nonterminals: S\nstart: S\nS -> a S b\nS ->\n", p);
    CHECK(cfg_slice(nested, 4).words == th::words(p, {"aabb"}));
    CHECK(cfg_slice(nested, 3).words.empty());
    CHECK(cfg_slice(nested, 0).words == std::set<Word>{Word{}});

    DoublingGrammar fx;
    CHECK(cfg_slice(fx.grammar, 4).words ==
          th::words(fx.order, {"ab00", "ab01", "ab10", "ab11"}));

    Cfg no_eps = cfg_parse("nonterminals: S\nstart: S\nS -> a\n", p);
    CHECK(cfg_slice(no_eps, 0).words.empty());

    CHECK_THROWS_AS(cfg_slice(nested, 13), CapExceededError);
}

TEST_CASE("self-embedding enumeration", "[cfg_analyzer]") {
    Poset p = Poset::build({"a", "b"}, {{"a", "b"}});
    Cfg nested = cfg_parse("nonterminals: S\nstart: S\nS -> a S b\nS ->\n", p);
    auto embeddings = enumerate_self_embeddings(nested, 0, 2);
    REQUIRE(embeddings.size() == 2);
    CHECK(embeddings[0].left == th::w(p, "a"));
    CHECK(embeddings[0].right == th::w(p, "b"));
    CHECK(embeddings[0].depth == 1);
    CHECK(embeddings[1].left == th::w(p, "aa"));
    CHECK(embeddings[1].right == th::w(p, "bb"));
    CHECK(embeddings[1].depth == 2);

    DoublingGrammar fx;
    auto level1 = enumerate_self_embeddings(fx.grammar, 0, 1);
    REQUIRE(level1.size() == 2);
    CHECK(level1[0].left == th::w(fx.order, "a"));
    CHECK(level1[0].right == th::w(fx.order, "0"));
    CHECK(level1[1].right == th::w(fx.order, "1"));

    Cfg linear = cfg_parse("nonterminals: S T\nstart: S\nS -> a T\nT -> b\n", p);
    CHECK(enumerate_self_embeddings(cfg_trim(linear), 0, 4).empty());
}

TEST_CASE("self-embeddings replay", "[cfg_analyzer]") {
    DoublingGrammar fx;
    Cfg g = cfg_trim(fx.grammar);
    for (const auto& se : enumerate_self_embeddings(g, 0, 3)) {
        REQUIRE(replay_self_embedding(g, se));
        SelfEmbedding corrupted = se;
        corrupted.left.push_back(0);
        CHECK_FALSE(replay_self_embedding(g, corrupted));
    }
}

TEST_CASE("bounded classifier on the fixtures", "[cfg_analyzer]") {
    DoublingGrammar fx;
    CfgVerdict v = classify_cfg_bounded(fx.grammar, fx.order, 4);
    REQUIRE(v.kind == CfgVerdict::Kind::ExponentialWitness);
    CHECK(v.witness->nonterminal == "S");
    CHECK(v.witness->source == CfgVerdict::Source::RightPairFixedLeft);
    CHECK(v.witness->fixed_left == th::w(fx.order, "a"));
    CHECK(v.witness->w1 == th::w(fx.order, "0"));
    CHECK(v.witness->w2 == th::w(fx.order, "1"));

    Poset p = Poset::build({"a", "b"}, {{"a", "b"}});
    Cfg nested = cfg_parse("nonterminals: S\nstart: S\nS -> a S b\nS ->\n", p);
    CfgVerdict balanced = classify_cfg_bounded(nested, p, 6);
    CHECK(balanced.kind == CfgVerdict::Kind::NoWitnessUpTo);
    CHECK(balanced.depth == 6);

    Poset digits = Poset::trivial({"0", "1"});
    Cfg palindromish =
        cfg_parse("nonterminals: S\nstart: S\nS -> 0 S 0\nS -> 1 S 1\nS ->\n", digits);
    CfgVerdict mirror = classify_cfg_bounded(palindromish, digits, 3);
    REQUIRE(mirror.kind == CfgVerdict::Kind::ExponentialWitness);
    CHECK(mirror.witness->source == CfgVerdict::Source::LeftPair);
    CHECK(mirror.witness->w1 == th::w(digits, "0"));
    CHECK(mirror.witness->w2 == th::w(digits, "1"));

    Cfg empty = cfg_parse("nonterminals: S\nstart: S\nS -> 0 S\n", digits);
    CfgVerdict nothing = classify_cfg_bounded(empty, digits, 3);
    CHECK(nothing.kind == CfgVerdict::Kind::NoWitnessUpTo);
    CHECK(nothing.empty_language);
}

TEST_CASE("witnesses persist as the depth grows", "[cfg_analyzer]") {
    std::mt19937 rng(11001);
    for (int round = 0; round < 60; ++round) {
        Poset p = th::random_poset(rng, 3);
        Cfg g = th::random_cfg(rng, p, 3);
        if (g.empty_language) continue;
        CfgVerdict shallow = classify_cfg_bounded(g, p, 2);
        CfgVerdict deep = classify_cfg_bounded(g, p, 3);
        if (shallow.kind == CfgVerdict::Kind::ExponentialWitness)
            REQUIRE(deep.kind == CfgVerdict::Kind::ExponentialWitness);
        if (deep.kind == CfgVerdict::Kind::NoWitnessUpTo)
            REQUIRE(shallow.kind == CfgVerdict::Kind::NoWitnessUpTo);
    }
}

TEST_CASE("witness families are derivable antichains", "[cfg_analyzer]") {
    DoublingGrammar fx;
    Cfg g = cfg_trim(fx.grammar);
    CfgVerdict v = classify_cfg_bounded(g, fx.order, 4);
    REQUIRE(v.kind == CfgVerdict::Kind::ExponentialWitness);
    for (int i = 1; i <= 3; ++i) {
        auto fam = cfg_exponential_family(v, i);
        REQUIRE(fam.size() == (std::size_t{1} << i));
        REQUIRE(is_antichain(fx.order, fam));
        std::size_t len = fam.begin()->size();
        for (const auto& word : fam) {
            REQUIRE(word.size() == len);
            if (len <= 12) REQUIRE(member(g, word));
        }
    }

    Poset digits = Poset::trivial({"0", "1"});
    Cfg palindromish =
        cfg_parse("nonterminals: S\nstart: S\nS -> 0 S 0\nS -> 1 S 1\nS ->\n", digits);
    Cfg trimmed = cfg_trim(palindromish);
    CfgVerdict mirror = classify_cfg_bounded(trimmed, digits, 3);
    for (int i = 1; i <= 3; ++i) {
        auto fam = cfg_exponential_family(mirror, i);
        REQUIRE(fam.size() == (std::size_t{1} << i));
        REQUIRE(is_antichain(digits, fam));
        for (const auto& word : fam)
            if (word.size() <= 12) REQUIRE(member(trimmed, word));
    }
}

TEST_CASE("intersection-to-chain reduction", "[cfg_analyzer]") {
    Poset p = Poset::trivial({"a", "b"});
    Cfg just_a = cfg_parse("nonterminals: S\nstart: S\nS -> a\n", p);
    Cfg just_b = cfg_parse("nonterminals: S\nstart: S\nS -> b\n", p);
    Cfg ab_or_a = cfg_parse("nonterminals: S\nstart: S\nS -> a b\nS -> a\n", p);

    auto [overlap, order1] = reduce_intersection_to_chain(just_a, just_a, {"a", "b"});
    std::set<Word> words1;
    for (int n = 0; n <= 3; ++n) {
        auto slice = cfg_slice(overlap, n).words;
        words1.insert(slice.begin(), slice.end());
    }
    CHECK(words1.size() == 2);  // a#0 and a#1
    CHECK_FALSE(is_chain(order1, words1));

    auto [disjoint, order2] = reduce_intersection_to_chain(just_a, just_b, {"a", "b"});
    std::set<Word> words2;
    for (int n = 0; n <= 3; ++n) {
        auto slice = cfg_slice(disjoint, n).words;
        words2.insert(slice.begin(), slice.end());
    }
    CHECK(is_chain(order2, words2));

    auto [mixed, order3] = reduce_intersection_to_chain(ab_or_a, just_a, {"a", "b"});
    std::set<Word> words3;
    for (int n = 0; n <= 4; ++n) {
        auto slice = cfg_slice(mixed, n).words;
        words3.insert(slice.begin(), slice.end());
    }
    CHECK_FALSE(is_chain(order3, words3));
}

TEST_CASE("chain-to-expantichain reduction", "[cfg_analyzer]") {
    Poset p = Poset::trivial({"a", "b"});
    Cfg just_a = cfg_parse("nonterminals: S\nstart: S\nS -> a\n", p);
    auto [starred, order] = reduce_chain_to_expantichain(just_a, Poset::trivial({"a"}));
    std::set<Word> all;
    for (int n = 0; n <= 8; ++n) {
        auto slice = cfg_slice(starred, n).words;
        all.insert(slice.begin(), slice.end());
    }
    CHECK(is_chain(order, all));  // (a#0)* is a prefix-free chain star

    Cfg two = cfg_parse("nonterminals: S\nstart: S\nS -> a\nS -> b\n", p);
    auto [wide, order2] = reduce_chain_to_expantichain(two, p);
    for (int k = 1; k <= 3; ++k) {
        auto slice = cfg_slice(wide, 2 * k).words;
        auto [width, witness] = max_antichain(order2, slice);
        CHECK(width == (1 << k));
    }

    Poset digits = Poset::trivial({"0", "1"});
    Cfg empty = cfg_trim(cfg_parse("nonterminals: S\nstart: S\nS -> 0 S\n", digits));
    auto [eps_only, order3] = reduce_chain_to_expantichain(empty, digits);
    CHECK(cfg_slice(eps_only, 0).words == std::set<Word>{Word{}});
    for (int n = 1; n <= 4; ++n) CHECK(cfg_slice(eps_only, n).words.empty());
}

TEST_CASE("fresh reduction letters are renamed on clashes", "[cfg_analyzer]") {
    Poset clash = Poset::trivial({"#0", "x"});
    Cfg g = cfg_parse("nonterminals: S\nstart: S\nS -> x\n", clash);
    auto [reduced, order] = reduce_chain_to_expantichain(g, clash);
    CHECK(order.size() == 3);
    CHECK(order.contains("#0_"));
}
