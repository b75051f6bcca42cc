#include "achlio/experiments.hpp"

#include "achlio/bitkernel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace achlio {

namespace {

long long power_m(double coef, int n, double alpha) {
    return static_cast<long long>(std::floor(coef * std::pow(static_cast<double>(n), alpha)));
}

// One process run per (n, trial) unit, reused by every m in the cell family.
struct Unit {
    int n_index = 0;
    int trial = 0;
    std::optional<long long> loss_round;
    long long rounds_run = 0;
    long long elapsed_ms = 0;
};

template <typename Fn>
void parallel_for_units(std::vector<Unit>& units, int jobs, Fn&& body) {
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(units.size() ? units.size() : 1));
    if (workers <= 1) {
        for (auto& u : units) body(u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= units.size()) return;
                try {
                    body(units[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

int default_danger_depth(const Pattern& h, int r, bool* general_fallback) {
    if (general_fallback) *general_fallback = false;
    for (int t = 3; t <= Pattern::kMaxVertices; ++t) {
        if (are_isomorphic(h, make_cycle(t))) return 1;
        if (t >= 4 && are_isomorphic(h, make_clique(t))) return s_param(t, r);
        if (2 * t <= Pattern::kMaxVertices && are_isomorphic(h, make_biclique(t, t)))
            return s_param(t, r);
    }
    if (general_fallback) *general_fallback = true;
    return std::min(h.edge_count() - 1, 3);
}

GridResult run_grid(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_grid: trials >= 1 required");
    if (cfg.n_values.empty()) throw std::invalid_argument("run_grid: no n values");
    const Pattern pattern = pattern_from_spec(cfg.pattern_spec);
    const int s = cfg.s ? *cfg.s : default_danger_depth(pattern, cfg.r);

    // m grid per n, one shared trial set per n (common random numbers).
    std::vector<std::vector<long long>> m_per_n;
    for (const int n : cfg.n_values) {
        std::vector<long long> ms;
        if (cfg.m_rule.kind == MRule::Kind::list) {
            ms = cfg.m_rule.values;
        } else {
            for (const double alpha : cfg.m_rule.exponents)
                ms.push_back(power_m(cfg.m_rule.coef, n, alpha));
        }
        const long long cap = static_cast<long long>(n) * (n - 1) / 2;
        for (const long long m : ms)
            if (m < 1 || m >= cap)
                throw std::invalid_argument("run_grid: every m must satisfy 1 <= m < C(n,2)");
        m_per_n.push_back(std::move(ms));
    }

    std::vector<Unit> units;
    for (int ni = 0; ni < static_cast<int>(cfg.n_values.size()); ++ni)
        for (int t = 0; t < cfg.trials; ++t) units.push_back({ni, t, std::nullopt, 0, 0});

    parallel_for_units(units, cfg.jobs, [&](Unit& u) {
        const long long m_max =
            *std::max_element(m_per_n[u.n_index].begin(), m_per_n[u.n_index].end());
        ProcessConfig pc;
        pc.n = cfg.n_values[u.n_index];
        pc.r = cfg.r;
        pc.forbidden = pattern;
        pc.s = s;
        pc.max_rounds = m_max;
        pc.seed = cfg.base_seed ^ static_cast<std::uint64_t>(
                                      u.n_index * static_cast<long long>(cfg.trials) + u.trial);
        pc.stop_on_loss = true;
        pc.tie_break = cfg.tie_break;
        const auto t0 = std::chrono::steady_clock::now();
        const RunOutcome run = run_process(pc, cfg.strategy);
        const auto t1 = std::chrono::steady_clock::now();
        u.loss_round = run.loss_round;
        u.rounds_run = run.rounds_run;
        u.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    });

    GridResult out;
    const std::string strategy = strategy_name(cfg.strategy);
    for (int ni = 0; ni < static_cast<int>(cfg.n_values.size()); ++ni) {
        const int n = cfg.n_values[ni];
        for (int mi = 0; mi < static_cast<int>(m_per_n[ni].size()); ++mi) {
            const long long m = m_per_n[ni][mi];
            CellSummary cell;
            cell.n = n;
            cell.m = m;
            if (cfg.m_rule.kind == MRule::Kind::power) cell.alpha = cfg.m_rule.exponents[mi];
            cell.trials = cfg.trials;
            std::vector<long long> losses;
            for (int t = 0; t < cfg.trials; ++t) {
                const Unit& u = units[static_cast<std::size_t>(ni) * cfg.trials + t];
                TrialRecord rec;
                rec.trial_id =
                    (static_cast<long long>(ni) * static_cast<long long>(m_per_n[ni].size()) + mi) *
                        cfg.trials +
                    t;
                rec.seed = cfg.base_seed ^ static_cast<std::uint64_t>(
                                               ni * static_cast<long long>(cfg.trials) + t);
                rec.n = n;
                rec.r = cfg.r;
                rec.pattern = cfg.pattern_spec;
                rec.strategy = strategy;
                rec.m_target = m;
                if (u.loss_round && *u.loss_round <= m) {
                    rec.loss_round = u.loss_round;
                    rec.rounds_run = *u.loss_round;
                    losses.push_back(*u.loss_round);
                } else {
                    rec.rounds_run = m;
                    ++cell.survived;
                }
                rec.elapsed_ms = cfg.timings ? u.elapsed_ms : 0;
                out.records.push_back(std::move(rec));
            }
            cell.survival = static_cast<double>(cell.survived) / cell.trials;
            const auto wi = wilson_interval(cell.survived, cell.trials);
            cell.wilson_low = wi.low;
            cell.wilson_high = wi.high;
            if (!losses.empty()) {
                std::sort(losses.begin(), losses.end());
                cell.median_loss_round = losses[(losses.size() - 1) / 2];
            }
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "# achlio-trials-v1\n";
    out << "trial_id,seed,n,r,pattern,strategy,m_target,loss_round,rounds_run,elapsed_ms\n";
    for (const auto& r : records) {
        out << r.trial_id << "," << r.seed << "," << r.n << "," << r.r << "," << r.pattern << ","
            << r.strategy << "," << r.m_target << ",";
        if (r.loss_round) out << *r.loss_round;
        out << "," << r.rounds_run << "," << r.elapsed_ms << "\n";
    }
    return out.str();
}

WilsonInterval wilson_interval(int successes, int trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = trials;
    const double phat = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval wi{std::max(0.0, center - half), std::min(1.0, center + half)};
    // at the extremes the bound is exactly the estimate; keep it that way
    // against floating-point round-off
    if (successes == 0) wi.low = 0.0;
    if (successes == trials) wi.high = 1.0;
    return wi;
}

std::vector<CrossingEstimate> estimate_crossing(const CrossingConfig& cfg) {
    if (!(cfg.alpha_low < cfg.alpha_high))
        throw std::invalid_argument("estimate_crossing: alpha_low < alpha_high required");
    const Pattern pattern = pattern_from_spec(cfg.pattern_spec);
    const int s = cfg.s ? *cfg.s : default_danger_depth(pattern, cfg.r);

    std::vector<CrossingEstimate> out;
    for (const int n : cfg.n_values) {
        const long long m_max = power_m(1.0, n, cfg.alpha_high);
        if (m_max >= static_cast<long long>(n) * (n - 1) / 2)
            throw std::invalid_argument("estimate_crossing: n^alpha_high exceeds C(n,2)");

        std::vector<Unit> units;
        for (int t = 0; t < cfg.trials; ++t) units.push_back({0, t, std::nullopt, 0, 0});
        parallel_for_units(units, cfg.jobs, [&](Unit& u) {
            ProcessConfig pc;
            pc.n = n;
            pc.r = cfg.r;
            pc.forbidden = pattern;
            pc.s = s;
            pc.max_rounds = m_max;
            pc.seed = cfg.base_seed ^ static_cast<std::uint64_t>(u.trial);
            pc.stop_on_loss = true;
            const RunOutcome run = run_process(pc, cfg.strategy);
            u.loss_round = run.loss_round;
        });

        // With common random numbers one run per trial serves every alpha:
        // survival(alpha) = fraction of trials with loss beyond n^alpha, which
        // is exactly nonincreasing in alpha.
        auto survival = [&](double alpha) {
            const long long m = power_m(1.0, n, alpha);
            int alive = 0;
            for (const auto& u : units)
                if (!u.loss_round || *u.loss_round > m) ++alive;
            return static_cast<double>(alive) / cfg.trials;
        };

        CrossingEstimate est;
        est.n = n;
        est.survival_at_low = survival(cfg.alpha_low);
        est.survival_at_high = survival(cfg.alpha_high);
        est.bracket_ok =
            est.survival_at_low >= cfg.target && cfg.target >= est.survival_at_high;
        double lo = cfg.alpha_low;
        double hi = cfg.alpha_high;
        if (est.bracket_ok) {
            for (int i = 0; i < cfg.refinements; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (survival(mid) >= cfg.target)
                    lo = mid;
                else
                    hi = mid;
            }
        }
        est.alpha_low = lo;
        est.alpha_high = hi;
        est.alpha_hat = 0.5 * (lo + hi);
        out.push_back(est);
    }
    return out;
}

CodegreeReport codegree_diagnostic(int n, double p, int samples, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("codegree_diagnostic: n >= 3 required");
    if (samples < 1) throw std::invalid_argument("codegree_diagnostic: samples >= 1 required");
    CodegreeReport report;
    report.n = n;
    report.p = p;
    report.samples = samples;

    const double np2 = n * p * p;
    const double log2n = std::log2(static_cast<double>(n));
    const double max_allowed = np2 * log2n;
    const int k_max = static_cast<int>(std::floor(log2n));

    for (int si = 0; si < samples; ++si) {
        Rng rng = derive_stream(seed, static_cast<std::uint64_t>(si));
        const DynamicGraph g = sample_gnp(n, p, rng);
        const auto words = static_cast<std::size_t>(g.words());

        std::vector<long long> histogram(static_cast<std::size_t>(n), 0);
        long long max_codegree = 0;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const auto cd =
                    static_cast<long long>(bitkernel::and_popcount(g.row(u), g.row(v), words));
                // Codegree counts common neighbours outside the pair itself;
                // an edge between u and v does not contribute.
                ++histogram[static_cast<std::size_t>(cd)];
                max_codegree = std::max(max_codegree, cd);
            }
        }
        // suffix counts: pairs with codegree >= c
        std::vector<long long> at_least(histogram.size() + 1, 0);
        for (std::size_t c = histogram.size(); c-- > 0;)
            at_least[c] = at_least[c + 1] + histogram[c];

        CodegreeSample sample;
        sample.max_codegree = max_codegree;
        sample.max_allowed = max_allowed;
        const auto first_violation_at =
            static_cast<std::size_t>(std::floor(max_allowed)) + 1;
        sample.first_clause_violations =
            first_violation_at < at_least.size() ? at_least[first_violation_at] : 0;
        sample.second_clause_ok = true;
        for (int k = 4; k <= k_max; ++k) {
            CodegreeTail tail;
            tail.k = k;
            // codegree >= k n p^2; the degenerate threshold 0 (p = 0) would
            // count every pair, so exceedances start at 1 there
            const auto cutoff =
                std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k * np2)));
            tail.pairs_at_least = cutoff < at_least.size() ? at_least[cutoff] : 0;
            tail.bound = static_cast<double>(n) * n / (static_cast<double>(k) * k * k);
            tail.ok = static_cast<double>(tail.pairs_at_least) <= tail.bound;
            if (!tail.ok) sample.second_clause_ok = false;
            sample.tails.push_back(tail);
        }
        if (sample.first_clause_violations == 0) ++report.first_clause_clean_samples;
        if (sample.second_clause_ok) ++report.second_clause_ok_samples;
        report.per_sample.push_back(std::move(sample));
    }
    return report;
}

ExtremalReport extremal_paths(const DynamicGraph& g, int t, double eps) {
    ExtremalReport rep;
    rep.kind = "paths";
    rep.epsilon = eps;
    const double n = g.vertex_count();
    const double d = 2.0 * static_cast<double>(g.edge_count()) / n;
    if (d <= 0.0) {
        rep.skipped = true;  // degenerate regime, nothing to bound
        return rep;
    }
    rep.count = count_paths(g, t);
    rep.reference = n * std::pow(d, t - 1);
    rep.ratio = static_cast<double>(rep.count) / rep.reference;
    rep.pass = rep.ratio >= 1.0 - eps;
    return rep;
}

ExtremalReport extremal_biclique(const DynamicGraph& g, int a, int b, double p, double eps) {
    ExtremalReport rep;
    rep.kind = "biclique";
    rep.epsilon = eps;
    if (p <= 0.0 || g.edge_count() == 0) {
        rep.skipped = true;
        return rep;
    }
    rep.count = count_bicliques(g, a, b);
    rep.reference = std::pow(static_cast<double>(g.vertex_count()), a + b) * std::pow(p, a * b);
    rep.ratio = static_cast<double>(rep.count) / rep.reference;
    rep.pass = rep.ratio >= 1.0 - eps;
    return rep;
}

} // namespace achlio
