#pragma once

// Brute-force oracles, deliberately independent of the library's counting
// path: a dense mutable mini-graph, unpruned injection enumeration, and a
// full-permutation canonical form.  Expected values frozen in the tests were
// computed with these.

#include "achlio/dynamic_graph.hpp"
#include "achlio/pattern.hpp"
#include "achlio/rng.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

struct MiniGraph {
    int n;
    std::vector<std::vector<bool>> adj;

    explicit MiniGraph(int n_) : n(n_), adj(n_, std::vector<bool>(n_, false)) {}

    static MiniGraph from(const achlio::DynamicGraph& g) {
        MiniGraph m(g.vertex_count());
        for (int u = 0; u < m.n; ++u)
            for (int v = u + 1; v < m.n; ++v)
                if (g.has_edge(u, v)) m.set(u, v, true);
        return m;
    }

    static MiniGraph from(const achlio::Pattern& p) {
        MiniGraph m(p.vertex_count());
        for (const auto& e : p.edges()) m.set(e.u, e.v, true);
        return m;
    }

    void set(int u, int v, bool present) { adj[u][v] = adj[v][u] = present; }
    bool has(int u, int v) const { return adj[u][v]; }
};

// Labeled copies: all injective vertex tuples, edges checked at the end.
inline long long count_copies(const MiniGraph& g, const achlio::Pattern& p) {
    const int pv = p.vertex_count();
    std::vector<int> image(pv, -1);
    std::vector<bool> used(g.n, false);
    long long total = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == pv) {
            for (const auto& e : p.edges())
                if (!g.has(image[e.u], image[e.v])) return;
            ++total;
            return;
        }
        for (int v = 0; v < g.n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            image[depth] = v;
            self(self, depth + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return total;
}

inline long long count_class_copies(const MiniGraph& g, const achlio::PatternClass& c) {
    long long total = 0;
    for (const auto& form : c.forms) total += count_copies(g, form);
    return total;
}

// The definition itself: counts in G+ minus counts in G-.
inline long long count_completions(const MiniGraph& g, int a, int b,
                                   const achlio::PatternClass& c) {
    MiniGraph plus = g;
    plus.set(a, b, true);
    MiniGraph minus = g;
    minus.set(a, b, false);
    return count_class_copies(plus, c) - count_class_copies(minus, c);
}

// Injective maps sending the marked pair onto {a,b}, both orientations.
inline long long count_extensions(const MiniGraph& g, int a, int b, const achlio::Pattern& h1) {
    const auto m = *h1.marked_pair();
    const int pv = h1.vertex_count();
    long long total = 0;
    std::vector<int> image(pv, -1);
    std::vector<bool> used(g.n, false);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == pv) {
            for (const auto& e : h1.edges())
                if (!g.has(image[e.u], image[e.v])) return;
            ++total;
            return;
        }
        for (int v = 0; v < g.n; ++v) {
            if (used[v]) continue;
            if (depth == m.u && v != a && v != b) continue;
            if (depth == m.v && v != a && v != b) continue;
            used[v] = true;
            image[depth] = v;
            self(self, depth + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return total;
}

// Canonical form over all permutations (<= 7 vertices): the independent
// isomorphism route.
inline std::uint64_t perm_canonical(const achlio::Pattern& p) {
    const int n = p.vertex_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto bit = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };
    std::uint64_t best = ~0ULL;
    do {
        std::uint64_t mask = 0;
        for (const auto& e : p.edges()) mask |= 1ULL << bit(perm[e.u], perm[e.v]);
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline achlio::Pattern random_pattern(achlio::Rng& rng, int n, double p) {
    std::vector<achlio::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.push_back({u, v});
    return achlio::Pattern(n, std::move(edges));
}

inline achlio::DynamicGraph random_graph(achlio::Rng& rng, int n, double p) {
    achlio::DynamicGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.insert_edge(u, v);
    return g;
}

} // namespace oracle
