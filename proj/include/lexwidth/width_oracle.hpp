#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "lexwidth/nfa.hpp"
#include "lexwidth/word_order.hpp"

namespace lexwidth {

namespace detail {

/// Hopcroft-Karp maximum matching on a bipartite graph given as adjacency
/// lists from left vertices to right vertices.
class BipartiteMatcher {
public:
    explicit BipartiteMatcher(std::vector<std::vector<int>> adj, int n_right)
        : adj_(std::move(adj)), n_left_(static_cast<int>(adj_.size())), n_right_(n_right) {}

    int solve() {
        match_l_.assign(n_left_, -1);
        match_r_.assign(n_right_, -1);
        int matching = 0;
        while (bfs_layers()) {
            for (int u = 0; u < n_left_; ++u)
                if (match_l_[u] == -1 && try_augment(u)) ++matching;
        }
        return matching;
    }

    const std::vector<int>& match_left() const { return match_l_; }
    const std::vector<int>& match_right() const { return match_r_; }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs_layers() {
        dist_.assign(n_left_, kInf);
        std::queue<int> bfs;
        for (int u = 0; u < n_left_; ++u)
            if (match_l_[u] == -1) {
                dist_[u] = 0;
                bfs.push(u);
            }
        bool reachable_free = false;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int v : adj_[u]) {
                int w = match_r_[v];
                if (w == -1) {
                    reachable_free = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    bfs.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool try_augment(int u) {
        for (int v : adj_[u]) {
            int w = match_r_[v];
            if (w == -1 || (dist_[w] == dist_[u] + 1 && try_augment(w))) {
                match_l_[u] = v;
                match_r_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    std::vector<std::vector<int>> adj_;
    int n_left_, n_right_;
    std::vector<int> match_l_, match_r_, dist_;
};

}  // namespace detail

struct MaxAntichainResult {
    int width = 0;
    std::vector<int> members;  // indices into the input ordering
};

/// Exact maximum antichain of n elements under the strict partial order
/// `less` (which must be transitive). Dilworth via minimum chain cover:
/// the comparability DAG is split into a bipartite graph, a maximum matching
/// gives a minimum chain partition of size n - |matching|, and the vertices
/// left uncovered by a Koenig vertex cover form a maximum antichain.
template <class LessFn>
MaxAntichainResult max_antichain_indices(int n, LessFn&& less) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && less(i, j)) adj[i].push_back(j);

    detail::BipartiteMatcher matcher(adj, n);
    int matching = matcher.solve();
    const auto& match_l = matcher.match_left();
    const auto& match_r = matcher.match_right();

    // Koenig: alternating reachability from unmatched left vertices.
    std::vector<bool> z_left(n, false), z_right(n, false);
    std::queue<int> bfs;
    for (int u = 0; u < n; ++u)
        if (match_l[u] == -1) {
            z_left[u] = true;
            bfs.push(u);
        }
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : adj[u]) {
            if (z_right[v]) continue;
            z_right[v] = true;
            int w = match_r[v];
            if (w != -1 && !z_left[w]) {
                z_left[w] = true;
                bfs.push(w);
            }
        }
    }

    MaxAntichainResult result;
    result.width = n - matching;
    // An element is in the antichain iff neither of its two bipartite copies
    // is in the vertex cover (left not in Z, or right in Z).
    for (int i = 0; i < n; ++i)
        if (z_left[i] && !z_right[i]) result.members.push_back(i);

    if (static_cast<int>(result.members.size()) != result.width)
        throw Error("antichain extraction lost elements (internal)");
    for (std::size_t a = 0; a < result.members.size(); ++a)
        for (std::size_t b = a + 1; b < result.members.size(); ++b) {
            int i = result.members[a], j = result.members[b];
            if (less(i, j) || less(j, i))
                throw Error("antichain extraction produced comparable pair (internal)");
        }
    return result;
}

/// Exact maximum antichain of a finite word set; returns size and one witness.
inline std::pair<int, std::set<Word>> max_antichain(const Poset& p, const std::set<Word>& ws,
                                                    std::size_t cap = 4096) {
    if (ws.size() > cap)
        throw CapExceededError("max_antichain: " + std::to_string(ws.size()) +
                               " words exceed cap " + std::to_string(cap));
    std::vector<const Word*> words;
    words.reserve(ws.size());
    for (const auto& w : ws) words.push_back(&w);
    auto result = max_antichain_indices(static_cast<int>(words.size()), [&](int i, int j) {
        return lex_relate(p, *words[i], *words[j]) == Relation::Forward;
    });
    std::set<Word> witness;
    for (int i : result.members) witness.insert(*words[i]);
    return {result.width, witness};
}

/// Exhaustive-subset width, for cross-checking the matching-based oracle.
inline int max_antichain_bruteforce(const Poset& p, const std::set<Word>& ws) {
    if (ws.size() > 15) throw CapExceededError("max_antichain_bruteforce: more than 15 words");
    std::vector<const Word*> words;
    for (const auto& w : ws) words.push_back(&w);
    int n = static_cast<int>(words.size());
    std::vector<std::uint32_t> comp(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && lex_relate(p, *words[i], *words[j]) != Relation::Incomparable)
                comp[i] |= std::uint32_t{1} << j;
    int best = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        bool independent = true;
        for (int i = 0; i < n && independent; ++i)
            if ((mask >> i) & 1)
                if (comp[i] & mask) independent = false;
        if (independent) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

/// Per-length exact widths of a machine's language, with witnesses and the
/// empirical growth exponent max_n log2(width(n)) / n.
struct WidthProfile {
    struct Row {
        int n = 0;
        std::size_t slice_size = 0;
        int width = 0;
        std::set<Word> witness;
    };
    std::vector<Row> rows;
    double eps_hat = 0.0;
};

inline WidthProfile width_profile(const Nfa& m, const Poset& p, int n_max, int slice_cap = 16,
                                  std::size_t width_cap = 4096) {
    WidthProfile profile;
    for (int n = 0; n <= n_max; ++n) {
        auto slice = enumerate_slice(m, n, slice_cap);
        auto [width, witness] = max_antichain(p, slice.words, width_cap);
        profile.rows.push_back({n, slice.words.size(), width, std::move(witness)});
        if (n >= 1 && width >= 1)
            profile.eps_hat = std::max(profile.eps_hat, std::log2(double(width)) / n);
    }
    return profile;
}

}  // namespace lexwidth
