#pragma once

#include "achlio/counting.hpp"
#include "achlio/dynamic_graph.hpp"
#include "achlio/pattern.hpp"
#include "achlio/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace achlio {

enum class StrategyKind { min_danger, first_edge, uniform_random };
const char* strategy_name(StrategyKind s);
std::optional<StrategyKind> strategy_from_name(const std::string& name);

enum class TieBreak { lowest_index, seeded_random };

struct ProcessConfig {
    int n = 0;
    int r = 2;
    Pattern forbidden;
    int s = 1;  // danger depth for the min-danger strategy
    long long max_rounds = 0;
    std::uint64_t seed = 0;
    bool stop_on_loss = true;
    TieBreak tie_break = TieBreak::lowest_index;
};

struct Offer {
    long long round = 0;
    std::vector<std::pair<int, int>> edges;  // r pairs, none already chosen
};

struct StrategyDecision {
    int chosen = 0;
    std::vector<int> danger;  // per offered edge; empty unless min-danger ran
};

struct RunOutcome {
    std::optional<long long> loss_round;  // 1-based first round completing H
    long long rounds_run = 0;
    std::vector<long long> class_counts;  // ledger counts for H^-k, k = 0..s
    std::uint64_t seed = 0;
};

// r i.i.d. uniform draws over the unchosen pairs (rejection against the
// chosen set); within-offer duplicates allowed.
void sample_offer(const DynamicGraph& g, int r, Rng& rng, Offer& out);

// d in {1..s} maximal with the pair completing a copy of H^-(s-d); 0 if none.
// Densest class first, descending.
class DangerOracle {
public:
    DangerOracle(const Pattern& h, int s);
    int depth() const { return s_; }
    int level(const DynamicGraph& g, int a, int b);
    bool completes_forbidden(const DynamicGraph& g, int a, int b);

private:
    int s_;
    std::vector<CompletionPlans> plans_;  // index k = 0..s-1, class H^-k
    EmbeddingCounter counter_;
};

// Convenience wrapper building the oracle per call.
int danger_level(const DynamicGraph& g, int a, int b, const Pattern& h, int s);

StrategyDecision decide_min_danger(const Offer& offer, const DynamicGraph& g,
                                   DangerOracle& oracle, TieBreak tie_break, Rng& rng);
StrategyDecision decide_first_edge(const Offer& offer);
StrategyDecision decide_uniform_random(const Offer& offer, Rng& rng);

RunOutcome run_process(const ProcessConfig& cfg, StrategyKind strategy);

// The offline K_3 sketch: G(n, 2m) split by a uniform random matching into m
// pairs; each pair contributes its first edge lying in no triangle of G
// (falling back to the pair's first edge).  loss_round is the first pair
// index at which the chosen edges contain a triangle.
RunOutcome offline_k3_r2(int n, long long m, std::uint64_t seed);

// Each pair present independently with probability p.
DynamicGraph sample_gnp(int n, double p, Rng& rng);

} // namespace achlio
