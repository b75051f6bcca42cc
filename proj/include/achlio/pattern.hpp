#pragma once

#include "achlio/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace achlio {

// Unordered vertex pair, stored with u < v.
struct Edge {
    int u;
    int v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Small fixed graph on vertices {0..vertex_count-1}: the forbidden pattern
// or one of its edge-deleted forms.  Simple, undirected, at most 12 vertices.
// The optional marked pair names the missing-edge endpoints used by the
// extension definitions; it is never an edge of the pattern.
class Pattern {
public:
    static constexpr int kMaxVertices = 12;

    Pattern() : Pattern(1, {}) {}  // single isolated vertex
    Pattern(int vertex_count, std::vector<Edge> edges,
            std::optional<Edge> marked_pair = std::nullopt);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
    std::uint16_t row(int v) const { return adj_[v]; }
    int degree(int v) const;
    const std::optional<Edge>& marked_pair() const { return marked_; }

    Pattern with_marked_pair(int u, int v) const;
    Pattern without_marked_pair() const;
    Pattern with_edge(int u, int v) const;

private:
    int n_;
    std::vector<Edge> edges_;        // sorted lexicographically
    std::array<std::uint16_t, kMaxVertices> adj_{};
    std::optional<Edge> marked_;
};

Pattern make_cycle(int t);
Pattern make_clique(int t);
Pattern make_biclique(int a, int b);
Pattern make_path(int t);

// Text format: line 1 "<vertex_count> <edge_count>", then one "<u> <v>" line
// per edge; '#' starts a comment line.
Pattern parse_pattern(const std::string& text);
std::string pattern_to_text(const Pattern& p);

// Builtin aliases (c3..c12, k4..k10, k33, k44, p3..p8); anything else is
// read as a file in the text format.
Pattern pattern_from_spec(const std::string& spec);
bool is_known_alias(const std::string& spec);

bool are_isomorphic(const Pattern& a, const Pattern& b);
// Same, but the marked pairs must correspond (both patterns must carry one).
bool are_isomorphic_marked(const Pattern& a, const Pattern& b);

// Every automorphism as a permutation vector, or an empty list if there are
// more than `cap` (callers fall back to not exploiting symmetry).
std::vector<std::vector<int>> enumerate_automorphisms(const Pattern& p, std::size_t cap);

// Canonical edge mask over refined vertex permutations; equal keys iff
// isomorphic.  Only for patterns with at most 8 vertices.
std::uint64_t canonical_key(const Pattern& p);

// The aggregate class H^-k: one representative per isomorphism class of
// k-edge deletions, with the number of k-subsets landing in each class.
struct PatternClass {
    Pattern base;
    int deleted = 0;
    std::vector<Pattern> forms;
    std::vector<long long> multiplicity;
};

PatternClass minus_edges(const Pattern& h, int k);

Rational edge_density(const Pattern& p);
Rational max_density(const Pattern& p);
bool is_balanced(const Pattern& p);

// (H1, H2) with H2 = H1 plus the marked edge: checks
// e(H1[U'])/(|U'|-2) <= e(H1)/(v-2) for every proper U' containing the
// marked endpoints (|U'| = 2 subsets hold trivially).
bool is_balanced_extension_pair(const Pattern& h1, const Pattern& h2);

// All (H1, H2) with E(H1) subset E(H2) subset E(H), e(H1) = e(H)-k,
// e(H2) = e(H)-k+1 are balanced extension pairs.
bool has_balanced_extension_property(const Pattern& h, int k);

// H_1 = balanced complete bipartite subgraph of K_t, then one missing edge
// at a time (lexicographic) up to K_t.  Every non-final element carries the
// next edge as its marked pair.
std::vector<Pattern> build_clique_sequence(int t);

// The 4-partite (even t) / 6-partite (odd t) starting graphs, a matching
// stage (two for odd t), then the remaining edges lexicographically up to
// K_{t,t}.  Marked pairs as in build_clique_sequence.
std::vector<Pattern> build_biclique_sequence(int t);

} // namespace achlio
