#include "achlio/counting.hpp"

#include "achlio/bitkernel.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace achlio {

namespace {

[[noreturn]] void overflow() { throw std::overflow_error("copy count exceeds 64 bits"); }

} // namespace

MatchPlan make_match_plan(const Pattern& p, int anchor_a, int anchor_b) {
    const int pv = p.vertex_count();
    MatchPlan plan;
    plan.pattern_vertices = pv;

    std::vector<bool> placed(pv, false);
    if (anchor_a >= 0) {
        plan.anchor_count = 2;
        plan.anchors_adjacent = p.has_edge(anchor_a, anchor_b);
        plan.order.push_back(anchor_a);
        plan.order.push_back(anchor_b);
        placed[anchor_a] = placed[anchor_b] = true;
    }
    while (static_cast<int>(plan.order.size()) < pv) {
        int best = -1;
        int best_conn = -1;
        int best_deg = -1;
        for (int v = 0; v < pv; ++v) {
            if (placed[v]) continue;
            int conn = 0;
            for (int u : plan.order)
                if (p.has_edge(u, v)) ++conn;
            const int deg = p.degree(v);
            if (conn > best_conn || (conn == best_conn && deg > best_deg)) {
                best = v;
                best_conn = conn;
                best_deg = deg;
            }
        }
        plan.order.push_back(best);
        placed[best] = true;
    }

    const int total = static_cast<int>(plan.order.size());
    plan.prev.resize(total);
    plan.min_degree.resize(total);
    for (int i = 0; i < total; ++i) {
        plan.min_degree[i] = p.degree(plan.order[i]);
        for (int j = 0; j < i; ++j)
            if (p.has_edge(plan.order[j], plan.order[i])) plan.prev[i].push_back(j);
    }
    plan.tail_start = total;
    while (plan.tail_start > plan.anchor_count && plan.min_degree[plan.tail_start - 1] == 0)
        --plan.tail_start;
    return plan;
}

long long EmbeddingCounter::run(const DynamicGraph& g, const Pattern& p, const MatchPlan& plan,
                                int host_a, int host_b, bool assume_anchor_edge, long long limit) {
    const int n = g.vertex_count();
    const int words = g.words();
    const int pv = plan.pattern_vertices;
    if (pv > n) return 0;

    used_.assign(words, 0);
    scratch_.resize(static_cast<std::size_t>(pv + 1) * words);

    int hosts[Pattern::kMaxVertices];
    auto mark_used = [&](int v) { used_[v >> 6] |= 1ULL << (static_cast<unsigned>(v) & 63u); };
    auto unmark_used = [&](int v) { used_[v >> 6] &= ~(1ULL << (static_cast<unsigned>(v) & 63u)); };

    if (plan.anchor_count == 2) {
        if (host_a == host_b || host_a < 0 || host_b < 0 || host_a >= n || host_b >= n)
            throw std::invalid_argument("anchored count needs two distinct in-range vertices");
        if (plan.anchors_adjacent && !assume_anchor_edge && !g.has_edge(host_a, host_b)) return 0;
        const int slack = (plan.anchors_adjacent && assume_anchor_edge) ? 1 : 0;
        if (g.degree(host_a) + slack < plan.min_degree[0]) return 0;
        if (g.degree(host_b) + slack < plan.min_degree[1]) return 0;
        hosts[0] = host_a;
        hosts[1] = host_b;
        mark_used(host_a);
        mark_used(host_b);
    }

    const std::uint64_t last_mask =
        (n % 64 == 0) ? ~0ULL : ((1ULL << (static_cast<unsigned>(n) & 63u)) - 1);

    unsigned __int128 total = 0;
    const auto cap = static_cast<unsigned __int128>(std::numeric_limits<long long>::max());

    // Injective assignments of the isolated pattern-vertex tail: a falling
    // factorial over the free host vertices.
    auto tail_product = [&]() -> unsigned __int128 {
        unsigned __int128 prod = 1;
        const int tail_len = pv - plan.tail_start;
        for (int i = 0; i < tail_len; ++i) {
            prod *= static_cast<unsigned>(n - plan.tail_start - i);
            if (prod > cap) overflow();
        }
        return prod;
    };

    auto rec = [&](auto&& self, int pos) -> bool {  // returns true when limit reached
        if (pos == plan.tail_start) {
            total += tail_product();
            if (total > cap) overflow();
            return limit > 0 && total >= static_cast<unsigned __int128>(limit);
        }
        std::uint64_t* cand = scratch_.data() + static_cast<std::size_t>(pos) * words;
        if (plan.prev[pos].empty()) {
            for (int w = 0; w < words; ++w) cand[w] = ~used_[w];
        } else {
            const auto& prev = plan.prev[pos];
            bitkernel::and_into(cand, g.row(hosts[prev[0]]),
                                prev.size() > 1 ? g.row(hosts[prev[1]]) : g.row(hosts[prev[0]]),
                                words);
            for (std::size_t i = 2; i < prev.size(); ++i)
                bitkernel::and_into(cand, cand, g.row(hosts[prev[i]]), words);
            for (int w = 0; w < words; ++w) cand[w] &= ~used_[w];
        }
        cand[words - 1] &= last_mask;

        const int need_deg = plan.min_degree[pos];
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                const int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (g.degree(v) < need_deg) continue;
                hosts[pos] = v;
                mark_used(v);
                const bool done = self(self, pos + 1);
                unmark_used(v);
                if (done) return true;
            }
        }
        return false;
    };

    rec(rec, plan.anchor_count);
    if (total > cap) overflow();
    return static_cast<long long>(total);
}

long long count_copies(const DynamicGraph& g, const Pattern& p) {
    EmbeddingCounter counter;
    const MatchPlan plan = make_match_plan(p);
    return counter.run(g, p, plan, -1, -1, false);
}

long long count_class_copies(const DynamicGraph& g, const PatternClass& c) {
    long long total = 0;
    EmbeddingCounter counter;
    for (const auto& form : c.forms) {
        const MatchPlan plan = make_match_plan(form);
        if (__builtin_add_overflow(total, counter.run(g, form, plan, -1, -1, false), &total))
            overflow();
    }
    return total;
}

CompletionPlans::CompletionPlans(const PatternClass& c) : class_(c) {
    // Anchor every ordered form edge onto the queried pair.  Ordered edges in
    // one automorphism orbit give identical counts at every pair, so one
    // representative with the orbit size as weight suffices.
    constexpr std::size_t kAutCap = 50000;
    for (const auto& form : class_.forms) {
        const auto auts = enumerate_automorphisms(form, kAutCap);
        const int pv = form.vertex_count();
        std::vector<int> orbit(static_cast<std::size_t>(pv) * pv, -1);
        auto slot = [pv](int u, int v) { return static_cast<std::size_t>(u) * pv + v; };
        int next_orbit = 0;
        std::vector<std::pair<int, int>> reps;
        std::vector<long long> weights;
        for (const auto& e : form.edges()) {
            for (const auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                if (orbit[slot(u, v)] >= 0) {
                    ++weights[orbit[slot(u, v)]];
                    continue;
                }
                const int id = next_orbit++;
                reps.emplace_back(u, v);
                weights.push_back(1);
                orbit[slot(u, v)] = id;
                for (const auto& sigma : auts) orbit[slot(sigma[u], sigma[v])] = id;
            }
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            anchored_.push_back(
                {&form, make_match_plan(form, reps[i].first, reps[i].second), weights[i]});
    }
}

long long CompletionPlans::count(EmbeddingCounter& counter, const DynamicGraph& g, int a, int b,
                                 long long limit) const {
    // Each completed copy uses the pair's edge exactly once, so summing
    // anchored counts over ordered form edges is the exact G+/G- difference
    // without materializing either graph.
    long long total = 0;
    for (const auto& anc : anchored_) {
        long long run_limit = 0;
        if (limit > 0) run_limit = (limit - total + anc.weight - 1) / anc.weight;
        const long long got =
            counter.run(g, *anc.form, anc.plan, a, b, /*assume_anchor_edge=*/true, run_limit);
        long long scaled = 0;
        if (__builtin_mul_overflow(got, anc.weight, &scaled)) overflow();
        if (__builtin_add_overflow(total, scaled, &total)) overflow();
        if (limit > 0 && total >= limit) return total;
    }
    return total;
}

long long count_completions(const DynamicGraph& g, int a, int b, const PatternClass& c) {
    EmbeddingCounter counter;
    return CompletionPlans(c).count(counter, g, a, b);
}

bool completes_any(const DynamicGraph& g, int a, int b, const PatternClass& c) {
    EmbeddingCounter counter;
    return CompletionPlans(c).count(counter, g, a, b, 1) > 0;
}

long long count_extensions(const DynamicGraph& g, int a, int b, const Pattern& h1_marked) {
    if (!h1_marked.marked_pair())
        throw std::invalid_argument("count_extensions: pattern has no marked pair");
    const Edge m = *h1_marked.marked_pair();
    EmbeddingCounter counter;
    const MatchPlan plan = make_match_plan(h1_marked, m.u, m.v);
    long long total = counter.run(g, h1_marked, plan, a, b, false);
    if (__builtin_add_overflow(total, counter.run(g, h1_marked, plan, b, a, false), &total))
        overflow();
    return total;
}

long long count_paths(const DynamicGraph& g, int t) {
    if (t < 1 || t > Pattern::kMaxVertices)
        throw std::invalid_argument("count_paths: t must lie in {1..12}");
    const int n = g.vertex_count();
    if (t == 1) return n;
    const int words = g.words();
    std::vector<std::uint64_t> visited(words, 0);
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(t) * words);
    long long total = 0;

    auto rec = [&](auto&& self, int u, int len) -> void {
        if (len == t) {
            if (total == std::numeric_limits<long long>::max()) overflow();
            ++total;
            return;
        }
        std::uint64_t* c = cand.data() + static_cast<std::size_t>(len) * words;
        for (int w = 0; w < words; ++w) c[w] = g.row(u)[w] & ~visited[w];
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = c[w];
            while (bits) {
                const int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                visited[v >> 6] |= 1ULL << (static_cast<unsigned>(v) & 63u);
                self(self, v, len + 1);
                visited[v >> 6] &= ~(1ULL << (static_cast<unsigned>(v) & 63u));
            }
        }
    };

    for (int s = 0; s < n; ++s) {
        visited[s >> 6] |= 1ULL << (static_cast<unsigned>(s) & 63u);
        rec(rec, s, 1);
        visited[s >> 6] &= ~(1ULL << (static_cast<unsigned>(s) & 63u));
    }
    return total;
}

long long count_bicliques(const DynamicGraph& g, int a, int b) {
    return count_copies(g, make_biclique(a, b));
}

CopyLedger::CopyLedger(const Pattern& h, int depth_s) {
    if (depth_s < 0 || depth_s > h.edge_count())
        throw std::invalid_argument("CopyLedger: depth out of range");
    for (int k = 0; k <= depth_s; ++k) plans_.emplace_back(minus_edges(h, k));
    counts_.assign(depth_s + 1, 0);
}

void CopyLedger::insert(DynamicGraph& g, int a, int b) {
    for (std::size_t k = 0; k < plans_.size(); ++k) {
        const long long delta = plans_[k].count(counter_, g, a, b);
        if (__builtin_add_overflow(counts_[k], delta, &counts_[k])) overflow();
    }
    g.insert_edge(a, b);
}

} // namespace achlio
