#pragma once

#include "achlio/dynamic_graph.hpp"
#include "achlio/pattern.hpp"

#include <vector>

namespace achlio {

// Placement order for the backtracking matcher: anchors first, then greedily
// the vertex with the most already-placed pattern neighbours (ties broken by
// higher pattern degree, then lower index).  Positions whose vertex is
// isolated in the pattern sit in a tail that is counted in closed form.
struct MatchPlan {
    int pattern_vertices = 0;
    int anchor_count = 0;
    bool anchors_adjacent = false;       // pattern edge between the two anchors
    std::vector<int> order;              // pattern vertex per position
    std::vector<std::vector<int>> prev;  // per position: earlier positions adjacent in pattern
    std::vector<int> min_degree;         // pattern degree per position (host pruning)
    int tail_start = 0;                  // first position of the isolated tail
};

MatchPlan make_match_plan(const Pattern& p, int anchor_a = -1, int anchor_b = -1);

// Backtracking embedding counter with reusable scratch masks.  Counts
// injective edge-preserving maps of the plan's pattern into g.  When the
// plan is anchored, hosts[0..1] give the images of the two anchors; if
// assume_anchor_edge is set, a pattern edge joining the anchors is taken as
// satisfied regardless of the host graph (the offered pair plays that edge).
// limit > 0 stops early once the count reaches it.
class EmbeddingCounter {
public:
    long long run(const DynamicGraph& g, const Pattern& p, const MatchPlan& plan,
                  int host_a, int host_b, bool assume_anchor_edge, long long limit = 0);

private:
    std::vector<std::uint64_t> scratch_;
    std::vector<std::uint64_t> used_;
};

// Labeled copies: injective edge-preserving maps V(P) -> V(G); automorphisms
// are not quotiented.
long long count_copies(const DynamicGraph& g, const Pattern& p);

// Sum of count_copies over the class representatives.
long long count_class_copies(const DynamicGraph& g, const PatternClass& c);

// How many copies of the class the pair {a,b} completes: the G+/G- count
// difference, computed without building either graph by anchoring each form
// edge onto {a,b} in both orientations.
long long count_completions(const DynamicGraph& g, int a, int b, const PatternClass& c);
bool completes_any(const DynamicGraph& g, int a, int b, const PatternClass& c);

// Copies of H1 the pair extends into H1-plus-marked-edge: injective maps
// sending the marked pair onto {a,b} (both orientations); insensitive to an
// edge between a and b.
long long count_extensions(const DynamicGraph& g, int a, int b, const Pattern& h1_marked);

// Labeled copies of the t-vertex path / of K_{a,b}.
long long count_paths(const DynamicGraph& g, int t);
long long count_bicliques(const DynamicGraph& g, int a, int b);

// Precompiled anchored plans for one deletion class, for per-offer queries.
class CompletionPlans {
public:
    explicit CompletionPlans(const PatternClass& c);
    const PatternClass& cls() const { return class_; }
    long long count(EmbeddingCounter& counter, const DynamicGraph& g, int a, int b,
                    long long limit = 0) const;

private:
    PatternClass class_;
    struct Anchored {
        const Pattern* form;
        MatchPlan plan;
        long long weight;  // ordered-edge automorphism orbit size
    };
    std::vector<Anchored> anchored_;
};

// Running aggregate copy counts of H^-k, k = 0..s, maintained incrementally:
// counts grow by the completion counts of each inserted edge.
class CopyLedger {
public:
    CopyLedger(const Pattern& h, int depth_s);

    int depth() const { return static_cast<int>(plans_.size()) - 1; }
    const PatternClass& cls(int k) const { return plans_[k].cls(); }
    const CompletionPlans& plans(int k) const { return plans_[k]; }
    const std::vector<long long>& counts() const { return counts_; }

    // Completion counts of {a,b} per tracked class are added, then the edge
    // is inserted into g.
    void insert(DynamicGraph& g, int a, int b);

private:
    std::vector<CompletionPlans> plans_;
    std::vector<long long> counts_;
    EmbeddingCounter counter_;
};

} // namespace achlio
