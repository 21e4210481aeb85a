#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "lexwidth/nfa.hpp"
#include "lexwidth/poset.hpp"
#include "lexwidth/regular_classifier.hpp"
#include "lexwidth/width_oracle.hpp"

namespace lexwidth {

enum class Party { Alice, Bob };

/// A communication specification: transcripts of the regular language `spec`
/// over the disjoint union of the two parties' message alphabets. The ordered
/// party's letters carry the declaration-order linear order; every other pair
/// of letters is incomparable.
struct ChannelSpec {
    Nfa spec;
    std::vector<std::string> alice_letters;
    std::vector<std::string> bob_letters;
    Party ordered_party = Party::Bob;
};

/// The order under which consistent transcript sets and quasiantichains
/// coincide: a linear order on the chosen party's letters, everything else
/// mutually incomparable.
inline Poset build_infoflow_order(const std::vector<std::string>& alice,
                                  const std::vector<std::string>& bob, Party ordered_party) {
    std::set<std::string> alice_set(alice.begin(), alice.end());
    for (const auto& b : bob)
        if (alice_set.count(b)) throw ParseError("letter '" + b + "' declared for both parties");
    std::vector<std::string> letters = alice;
    letters.insert(letters.end(), bob.begin(), bob.end());
    const auto& chain = ordered_party == Party::Alice ? alice : bob;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) pairs.emplace_back(chain[i], chain[i + 1]);
    return Poset::build(letters, pairs);
}

/// Safety classification of a channel specification with its leakage profile.
struct FlowReport {
    enum class Kind { Safe, Dangerous };

    struct LeakRow {
        int n = 0;
        std::size_t slice_size = 0;
        int width = 0;
        double bits = 0.0;  // log2(width); 0 when the slice is empty
    };

    Kind verdict = Kind::Safe;
    Verdict underlying;
    std::vector<LeakRow> leakage;
    std::set<Word> witness_transcripts;  // Dangerous only: a replayable 2^3 antichain
};

inline const char* to_string(FlowReport::Kind k) {
    return k == FlowReport::Kind::Safe ? "safe" : "dangerous";
}

/// Classifies the spec under the information-flow order: Dangerous exactly
/// when the transcript language has exponential antichain growth, in which
/// case the channel leaks linearly many bits; Safe means polylogarithmic
/// leakage. Dangerous reports carry a concrete transcript antichain.
inline FlowReport analyze_spec(const ChannelSpec& cs, int leak_max_len = 8, int slice_cap = 16) {
    Poset order = build_infoflow_order(cs.alice_letters, cs.bob_letters, cs.ordered_party);
    if (cs.spec.letters != order.letters())
        throw AlphabetMismatchError("spec alphabet must be the two parties' letters in order");
    FlowReport report;
    report.underlying = classify_nfa(cs.spec, order);
    report.verdict = report.underlying.kind == Verdict::Kind::Exponential
                         ? FlowReport::Kind::Dangerous
                         : FlowReport::Kind::Safe;
    for (int n = 0; n <= leak_max_len; ++n) {
        auto slice = enumerate_slice(cs.spec, n, slice_cap);
        auto [width, witness] = max_antichain(order, slice.words);
        FlowReport::LeakRow row;
        row.n = n;
        row.slice_size = slice.words.size();
        row.width = width;
        row.bits = width > 0 ? std::log2(double(width)) : 0.0;
        report.leakage.push_back(row);
    }
    if (report.verdict == FlowReport::Kind::Dangerous)
        report.witness_transcripts = exponential_family(order, report.underlying, 3);
    return report;
}

/// Bits a consistent transcript set of length n can carry: log2 of the
/// slice's maximum antichain (equal-length slices have no prefix pairs, so
/// quasiantichains and antichains coincide there).
inline double consistent_set_width(const ChannelSpec& cs, int n, int slice_cap = 16) {
    Poset order = build_infoflow_order(cs.alice_letters, cs.bob_letters, cs.ordered_party);
    if (cs.spec.letters != order.letters())
        throw AlphabetMismatchError("spec alphabet must be the two parties' letters in order");
    auto slice = enumerate_slice(cs.spec, n, slice_cap);
    auto [width, witness] = max_antichain(order, slice.words);
    return width > 0 ? std::log2(double(width)) : 0.0;
}

}  // namespace lexwidth
