#include "achlio/process.hpp"

#include "achlio/bitkernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace achlio {

const char* strategy_name(StrategyKind s) {
    switch (s) {
        case StrategyKind::min_danger: return "min-danger";
        case StrategyKind::first_edge: return "first-edge";
        case StrategyKind::uniform_random: return "random";
    }
    return "unknown";
}

std::optional<StrategyKind> strategy_from_name(const std::string& name) {
    if (name == "min-danger") return StrategyKind::min_danger;
    if (name == "first-edge") return StrategyKind::first_edge;
    if (name == "random") return StrategyKind::uniform_random;
    return std::nullopt;
}

void sample_offer(const DynamicGraph& g, int r, Rng& rng, Offer& out) {
    const long long total = g.max_edges();
    if (g.edge_count() >= total) throw std::logic_error("sample_offer: graph is full");
    out.round = g.round() + 1;
    out.edges.clear();
    for (int j = 0; j < r; ++j) {
        int u;
        int v;
        do {
            const long long idx = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
            std::tie(u, v) = pair_from_index(g.vertex_count(), idx);
        } while (g.has_edge(u, v));
        out.edges.emplace_back(u, v);
    }
}

DangerOracle::DangerOracle(const Pattern& h, int s) : s_(s) {
    if (s < 1 || s > h.edge_count() - 1)
        throw std::invalid_argument("danger depth s must lie in {1..e(H)-1}");
    for (int k = 0; k < s; ++k) plans_.emplace_back(minus_edges(h, k));
}

int DangerOracle::level(const DynamicGraph& g, int a, int b) {
    for (int k = 0; k < s_; ++k)
        if (plans_[k].count(counter_, g, a, b, 1) > 0) return s_ - k;
    return 0;
}

bool DangerOracle::completes_forbidden(const DynamicGraph& g, int a, int b) {
    return plans_[0].count(counter_, g, a, b, 1) > 0;
}

int danger_level(const DynamicGraph& g, int a, int b, const Pattern& h, int s) {
    DangerOracle oracle(h, s);
    return oracle.level(g, a, b);
}

StrategyDecision decide_min_danger(const Offer& offer, const DynamicGraph& g,
                                   DangerOracle& oracle, TieBreak tie_break, Rng& rng) {
    StrategyDecision d;
    d.danger.resize(offer.edges.size());
    int best = oracle.depth() + 1;
    for (std::size_t i = 0; i < offer.edges.size(); ++i) {
        d.danger[i] = oracle.level(g, offer.edges[i].first, offer.edges[i].second);
        if (d.danger[i] < best) best = d.danger[i];
    }
    if (tie_break == TieBreak::lowest_index) {
        for (std::size_t i = 0; i < d.danger.size(); ++i) {
            if (d.danger[i] == best) {
                d.chosen = static_cast<int>(i);
                break;
            }
        }
    } else {
        int ties = 0;
        for (const int lvl : d.danger)
            if (lvl == best) ++ties;
        int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(ties)));
        for (std::size_t i = 0; i < d.danger.size(); ++i) {
            if (d.danger[i] == best && pick-- == 0) {
                d.chosen = static_cast<int>(i);
                break;
            }
        }
    }
    return d;
}

StrategyDecision decide_first_edge(const Offer&) { return {0, {}}; }

StrategyDecision decide_uniform_random(const Offer& offer, Rng& rng) {
    return {static_cast<int>(rng.below(offer.edges.size())), {}};
}

RunOutcome run_process(const ProcessConfig& cfg, StrategyKind strategy) {
    if (cfg.n < 2) throw std::invalid_argument("run_process: n >= 2 required");
    if (cfg.r < 1) throw std::invalid_argument("run_process: r >= 1 required");
    DynamicGraph g(cfg.n);
    if (cfg.max_rounds < 0 || cfg.max_rounds > g.max_edges())
        throw std::invalid_argument("run_process: max_rounds must lie in [0, C(n,2)]");

    CopyLedger ledger(cfg.forbidden, cfg.s);
    DangerOracle oracle(cfg.forbidden, cfg.s);
    Rng rng = derive_stream(cfg.seed, 0);

    RunOutcome out;
    out.seed = cfg.seed;
    Offer offer;
    for (long long round = 1; round <= cfg.max_rounds; ++round) {
        sample_offer(g, cfg.r, rng, offer);
        StrategyDecision decision;
        switch (strategy) {
            case StrategyKind::min_danger:
                decision = decide_min_danger(offer, g, oracle, cfg.tie_break, rng);
                break;
            case StrategyKind::first_edge: decision = decide_first_edge(offer); break;
            case StrategyKind::uniform_random: decision = decide_uniform_random(offer, rng); break;
        }
        const auto [a, b] = offer.edges[decision.chosen];
        const bool completes = decision.danger.empty()
                                   ? oracle.completes_forbidden(g, a, b)
                                   : decision.danger[decision.chosen] == oracle.depth();
        ledger.insert(g, a, b);
        out.rounds_run = round;
        if (completes && !out.loss_round) {
            out.loss_round = round;
            if (cfg.stop_on_loss) break;
        }
    }
    out.class_counts = ledger.counts();
    return out;
}

RunOutcome offline_k3_r2(int n, long long m, std::uint64_t seed) {
    DynamicGraph g(n);
    if (m < 1 || 2 * m > g.max_edges())
        throw std::invalid_argument("offline_k3_r2: need 1 <= m and 2m <= C(n,2)");
    Rng rng = derive_stream(seed, 0);

    // G(n, 2m): uniform random set of 2m distinct pairs.
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(2 * m));
    while (g.edge_count() < 2 * m) {
        const long long idx =
            static_cast<long long>(rng.below(static_cast<std::uint64_t>(g.max_edges())));
        const auto [u, v] = pair_from_index(n, idx);
        if (g.has_edge(u, v)) continue;
        g.insert_edge(u, v);
        edges.emplace_back(u, v);
    }

    // Uniform perfect matching of E(G): shuffle, pair consecutive entries.
    for (std::size_t i = edges.size() - 1; i > 0; --i)
        std::swap(edges[i], edges[rng.below(i + 1)]);

    // An edge participates in a triangle of G iff its endpoints share a
    // neighbour.
    auto in_triangle = [&](const std::pair<int, int>& e) {
        return bitkernel::intersects(g.row(e.first), g.row(e.second),
                                     static_cast<std::size_t>(g.words()));
    };

    RunOutcome out;
    out.seed = seed;
    out.rounds_run = m;
    DynamicGraph chosen(n);
    long long triangle_copies = 0;
    for (long long i = 0; i < m; ++i) {
        const auto& e1 = edges[static_cast<std::size_t>(2 * i)];
        const auto& e2 = edges[static_cast<std::size_t>(2 * i + 1)];
        const auto& pick = !in_triangle(e1) ? e1 : (!in_triangle(e2) ? e2 : e1);
        const long long closed = static_cast<long long>(bitkernel::and_popcount(
            chosen.row(pick.first), chosen.row(pick.second),
            static_cast<std::size_t>(chosen.words())));
        if (closed > 0 && !out.loss_round) out.loss_round = i + 1;
        triangle_copies += 6 * closed;  // labeled copies per closed triangle
        chosen.insert_edge(pick.first, pick.second);
    }
    out.class_counts = {triangle_copies};
    return out;
}

DynamicGraph sample_gnp(int n, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_gnp: p must lie in [0,1]");
    DynamicGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.insert_edge(u, v);
    return g;
}

} // namespace achlio
