#include "achlio/bitkernel.hpp"
#include "achlio/counting.hpp"
#include "achlio/dynamic_graph.hpp"
#include "achlio/experiments.hpp"
#include "achlio/pattern.hpp"
#include "achlio/process.hpp"
#include "achlio/thresholds.hpp"
#include "achlio/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using json = nlohmann::ordered_json;
using namespace achlio;

namespace {

json rational_json(const Rational& q) {
    return json{{"fraction", q.str()}, {"decimal", q.to_double()}};
}

json pattern_json(const Pattern& p) {
    json edges = json::array();
    for (const auto& e : p.edges()) edges.push_back(json::array({e.u, e.v}));
    json out{{"vertex_count", p.vertex_count()}, {"edges", std::move(edges)}};
    if (p.marked_pair())
        out["marked_pair"] = json::array({p.marked_pair()->u, p.marked_pair()->v});
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Relative output paths land under ACHLIO_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    const char* dir = std::getenv("ACHLIO_OUT_DIR");
    if (dir == nullptr || path.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(dir) / path).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::uint64_t pick_seed(const CLI::Option* opt, std::uint64_t given) {
    if (opt->count() > 0) return given;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct DetectedFamily {
    Family family;
    int t;
};

std::optional<DetectedFamily> detect_family(const Pattern& p) {
    for (int t = 3; t <= Pattern::kMaxVertices; ++t)
        if (are_isomorphic(p, make_cycle(t))) return DetectedFamily{Family::cycle, t};
    for (int t = 4; t <= 10; ++t)
        if (are_isomorphic(p, make_clique(t))) return DetectedFamily{Family::clique, t};
    for (int t = 3; 2 * t <= Pattern::kMaxVertices; ++t)
        if (are_isomorphic(p, make_biclique(t, t))) return DetectedFamily{Family::biclique, t};
    return std::nullopt;
}

json report_json(const ThresholdReport& rep) {
    json out;
    out["schema"] = "achlio-threshold-v1";
    out["family"] = family_name(rep.family);
    if (rep.family == Family::general)
        out["pattern"] = pattern_json(*rep.pattern);
    else
        out["t"] = rep.t;
    out["r"] = rep.r;
    out["s"] = rep.s;
    out["theta"] = rational_json(rep.theta);
    out["exponent"] = rational_json(rep.exponent);
    json seq = json::array();
    for (std::size_t i = 0; i < rep.sequence.size(); ++i) {
        seq.push_back(json{{"k", rep.s - static_cast<int>(i)},
                           {"x", rep.sequence[i].x.str()},
                           {"y", rep.sequence[i].y.str()}});
    }
    out["sequence"] = std::move(seq);
    return out;
}

void print_report_table(const ThresholdReport& rep) {
    if (rep.family == Family::general)
        std::cout << "family:   general (" << rep.pattern->vertex_count() << " vertices, "
                  << rep.pattern->edge_count() << " edges)\n";
    else
        std::cout << "family:   " << family_name(rep.family) << " t=" << rep.t << "\n";
    std::cout << "r:        " << rep.r << "\n";
    std::cout << "s:        " << rep.s << "\n";
    std::cout << "theta:    " << rep.theta.str() << " (" << rep.theta.to_double() << ")\n";
    std::cout << "exponent: " << rep.exponent.str() << " (" << rep.exponent.to_double()
              << "); threshold m* = n^" << rep.exponent.str() << "\n";
    if (!rep.sequence.empty()) {
        std::cout << "sequence (x_k, y_k), k = s..0:";
        for (const auto& pr : rep.sequence) std::cout << " (" << pr.x.str() << "," << pr.y.str() << ")";
        std::cout << "\n";
    }
}

int cmd_threshold(const std::string& family_str, int t, int r, const std::string& pattern_spec,
                  int s_opt, bool s_given, bool star, const std::string& format) {
    if (!pattern_spec.empty()) {
        const Pattern p = pattern_from_spec(pattern_spec);
        if (star) {
            const ThetaStar ts = theta_star(p, r);
            if (format == "json") {
                json out;
                out["schema"] = "achlio-theta-star-v1";
                out["r"] = r;
                out["theta_star"] = rational_json(ts.theta);
                out["exponent"] = rational_json(Rational(2) - ts.theta);
                out["witness_s"] = ts.s;
                out["witness"] = pattern_json(ts.witness);
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "theta*:    " << ts.theta.str() << " (" << ts.theta.to_double()
                          << ")\n";
                std::cout << "exponent:  " << (Rational(2) - ts.theta).str() << "\n";
                std::cout << "witness:   s=" << ts.s << ", subgraph with "
                          << ts.witness.vertex_count() << " vertices, " << ts.witness.edge_count()
                          << " edges\n";
                std::cout << pattern_to_text(ts.witness);
            }
            return 0;
        }
        if (!s_given)
            throw std::domain_error("--pattern requires --s (danger depth) unless --star is given");
        const ThresholdReport rep = threshold_report_general(p, r, s_opt);
        if (format == "json")
            std::cout << report_json(rep).dump(2) << "\n";
        else
            print_report_table(rep);
        return 0;
    }

    const auto family = family_from_name(family_str);
    if (!family || *family == Family::general)
        throw std::domain_error("--family must be cycle, clique or biclique (or use --pattern)");
    ThresholdReport rep;
    switch (*family) {
        case Family::cycle: rep = threshold_report_cycle(t, r); break;
        case Family::clique: rep = threshold_report_clique(t, r); break;
        case Family::biclique: rep = threshold_report_biclique(t, r); break;
        default: break;
    }
    if (format == "json")
        std::cout << report_json(rep).dump(2) << "\n";
    else
        print_report_table(rep);
    return 0;
}

int cmd_simulate(int n, int r, const std::string& pattern_spec, const std::string& strategy_str,
                 int s_opt, bool s_given, const std::string& rounds_str, std::uint64_t seed,
                 bool keep_going, const std::string& tie_break_str) {
    const Pattern pattern = pattern_from_spec(pattern_spec);
    const auto strategy = strategy_from_name(strategy_str);
    if (!strategy) throw std::domain_error("unknown strategy: " + strategy_str);

    int s;
    if (s_given) {
        s = s_opt;
    } else {
        bool general_fallback = false;
        s = default_danger_depth(pattern, r, &general_fallback);
        if (general_fallback)
            std::cerr << "warning: general pattern without --s; using s = " << s
                      << " (= min(e(H)-1, 3))\n";
    }

    ProcessConfig cfg;
    cfg.n = n;
    cfg.r = r;
    cfg.forbidden = pattern;
    cfg.s = s;
    cfg.seed = seed;
    cfg.stop_on_loss = !keep_going;
    cfg.tie_break =
        tie_break_str == "random" ? TieBreak::seeded_random : TieBreak::lowest_index;

    if (rounds_str == "auto") {
        const auto fam = detect_family(pattern);
        Rational theta;
        if (fam) {
            switch (fam->family) {
                case Family::cycle: theta = theta_cycle(fam->t, r); break;
                case Family::clique: theta = theta_clique(fam->t, r); break;
                case Family::biclique: theta = theta_biclique(fam->t, r); break;
                default: break;
            }
        } else if (s_given) {
            theta = theta_general(pattern, r, s);
        } else {
            throw std::domain_error("--rounds auto needs a builtin family or an explicit --s");
        }
        const double exponent = 2.0 - theta.to_double() - 0.1;
        cfg.max_rounds =
            static_cast<long long>(std::floor(std::pow(static_cast<double>(n), exponent)));
    } else {
        cfg.max_rounds = std::stoll(rounds_str);
    }
    const long long cap = static_cast<long long>(n) * (n - 1) / 2;
    cfg.max_rounds = std::min(cfg.max_rounds, cap);

    const RunOutcome run = run_process(cfg, *strategy);

    json out;
    out["schema"] = "achlio-run-v1";
    out["n"] = n;
    out["r"] = r;
    out["pattern"] = pattern_spec;
    out["strategy"] = strategy_str;
    out["s"] = s;
    out["seed"] = seed;
    out["max_rounds"] = cfg.max_rounds;
    out["stop_on_loss"] = cfg.stop_on_loss;
    if (run.loss_round)
        out["loss_round"] = *run.loss_round;
    else
        out["loss_round"] = nullptr;
    out["rounds_run"] = run.rounds_run;
    json counts = json::array();
    for (std::size_t k = 0; k < run.class_counts.size(); ++k)
        counts.push_back(json{{"deleted", k}, {"count", run.class_counts[k]}});
    out["class_counts"] = std::move(counts);
    std::cout << out.dump(2) << "\n";
    return 0;
}

json cell_json(const CellSummary& c) {
    json out;
    out["n"] = c.n;
    out["m"] = c.m;
    if (c.alpha) out["alpha"] = *c.alpha;
    out["trials"] = c.trials;
    out["survived"] = c.survived;
    out["survival"] = c.survival;
    out["wilson_low"] = c.wilson_low;
    out["wilson_high"] = c.wilson_high;
    if (c.median_loss_round)
        out["median_loss_round"] = *c.median_loss_round;
    else
        out["median_loss_round"] = nullptr;
    return out;
}

int cmd_experiment(const std::string& config_path, int jobs_override, bool jobs_given) {
    const json cfg_json = json::parse(read_file(config_path));
    const std::string mode = cfg_json.value("mode", "grid");

    if (mode == "crossing") {
        CrossingConfig cc;
        cc.pattern_spec = cfg_json.value("pattern", "c3");
        cc.r = cfg_json.value("r", 2);
        const auto strategy = strategy_from_name(cfg_json.value("strategy", "min-danger"));
        if (!strategy) throw std::domain_error("config: unknown strategy");
        cc.strategy = *strategy;
        if (cfg_json.contains("s")) cc.s = cfg_json["s"].get<int>();
        cc.n_values = cfg_json.at("n").get<std::vector<int>>();
        cc.alpha_low = cfg_json.at("alpha_low").get<double>();
        cc.alpha_high = cfg_json.at("alpha_high").get<double>();
        cc.refinements = cfg_json.value("refinements", 3);
        cc.trials = cfg_json.value("trials", 100);
        cc.target = cfg_json.value("target", 0.5);
        cc.base_seed = cfg_json.value("base_seed", 0ULL);
        cc.jobs = jobs_given ? jobs_override : cfg_json.value("jobs", 0);
        if (cfg_json.contains("reference_exponent")) {
            cc.reference_exponent = cfg_json["reference_exponent"].get<double>();
        } else if (const auto fam = detect_family(pattern_from_spec(cc.pattern_spec))) {
            Rational theta;
            switch (fam->family) {
                case Family::cycle: theta = theta_cycle(fam->t, cc.r); break;
                case Family::clique: theta = theta_clique(fam->t, cc.r); break;
                case Family::biclique: theta = theta_biclique(fam->t, cc.r); break;
                default: break;
            }
            cc.reference_exponent = 2.0 - theta.to_double();
        }

        const auto estimates = estimate_crossing(cc);
        json out;
        out["schema"] = "achlio-crossing-v1";
        out["target"] = cc.target;
        if (cc.reference_exponent) out["reference_exponent"] = *cc.reference_exponent;
        json arr = json::array();
        for (const auto& est : estimates) {
            json e;
            e["n"] = est.n;
            e["bracket_ok"] = est.bracket_ok;
            e["alpha_low"] = est.alpha_low;
            e["alpha_high"] = est.alpha_high;
            e["alpha_hat"] = est.alpha_hat;
            e["survival_at_low"] = est.survival_at_low;
            e["survival_at_high"] = est.survival_at_high;
            arr.push_back(std::move(e));
        }
        out["estimates"] = std::move(arr);
        const std::string text = out.dump(2) + "\n";
        std::cout << text;
        if (cfg_json.contains("out_json"))
            write_file(resolve_out(cfg_json["out_json"].get<std::string>()), text);
        return 0;
    }

    if (mode != "grid") throw std::domain_error("config: mode must be grid or crossing");
    ExperimentConfig ec;
    ec.pattern_spec = cfg_json.value("pattern", "c3");
    ec.r = cfg_json.value("r", 2);
    const auto strategy = strategy_from_name(cfg_json.value("strategy", "min-danger"));
    if (!strategy) throw std::domain_error("config: unknown strategy");
    ec.strategy = *strategy;
    if (cfg_json.contains("s")) ec.s = cfg_json["s"].get<int>();
    ec.n_values = cfg_json.at("n").get<std::vector<int>>();
    const json& mj = cfg_json.at("m");
    const std::string rule = mj.value("rule", "power");
    if (rule == "list") {
        ec.m_rule.kind = MRule::Kind::list;
        ec.m_rule.values = mj.at("values").get<std::vector<long long>>();
    } else if (rule == "power") {
        ec.m_rule.kind = MRule::Kind::power;
        ec.m_rule.coef = mj.value("coef", 1.0);
        ec.m_rule.exponents = mj.at("exponents").get<std::vector<double>>();
    } else {
        throw std::domain_error("config: m.rule must be list or power");
    }
    ec.trials = cfg_json.value("trials", 100);
    ec.base_seed = cfg_json.value("base_seed", 0ULL);
    ec.jobs = jobs_given ? jobs_override : cfg_json.value("jobs", 0);
    ec.tie_break = cfg_json.value("tie_break", "index") == std::string("random")
                       ? TieBreak::seeded_random
                       : TieBreak::lowest_index;
    ec.timings = cfg_json.value("timings", false);

    const GridResult result = run_grid(ec);

    json summary;
    summary["schema"] = "achlio-grid-summary-v1";
    json cells = json::array();
    for (const auto& c : result.cells) cells.push_back(cell_json(c));
    summary["cells"] = std::move(cells);

    std::cout << "n      m          trials survived survival wilson95\n";
    for (const auto& c : result.cells) {
        std::printf("%-6d %-10lld %-6d %-8d %-8.4f [%.4f, %.4f]\n", c.n, c.m, c.trials,
                    c.survived, c.survival, c.wilson_low, c.wilson_high);
    }
    if (cfg_json.contains("out_csv")) {
        const std::string path = resolve_out(cfg_json["out_csv"].get<std::string>());
        write_file(path, trials_csv(result.records));
        std::cout << "wrote " << path << "\n";
    }
    if (cfg_json.contains("out_json")) {
        const std::string path = resolve_out(cfg_json["out_json"].get<std::string>());
        write_file(path, summary.dump(2) + "\n");
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int cmd_verify(int t_max, int clique_t_max, int r_max, bool tamper, const std::string& format,
               const std::string& out_path) {
    VerifyOptions opt;
    opt.t_max = t_max;
    opt.clique_t_max = clique_t_max;
    opt.r_max = r_max;
    opt.tamper_theta = tamper;
    const VerificationReport report = verify_appendix(opt);

    json out;
    out["schema"] = "achlio-verification-v1";
    out["failures"] = report.failures;
    out["exception_sightings"] = report.exception_sightings;
    json arr = json::array();
    for (const auto& rec : report.records) {
        arr.push_back(json{{"check_id", rec.check_id},
                           {"family", rec.family},
                           {"t", rec.t},
                           {"r", rec.r},
                           {"passed", rec.passed},
                           {"lhs", rec.lhs},
                           {"rhs", rec.rhs},
                           {"witness", rec.witness}});
    }
    out["records"] = std::move(arr);

    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%-34s %-8s %-3s %-3s %-6s %s\n", "check", "family", "t", "r", "status",
                    "detail");
        for (const auto& rec : report.records) {
            std::printf("%-34s %-8s %-3d %-3d %-6s lhs=%s rhs=%s %s\n", rec.check_id.c_str(),
                        rec.family.c_str(), rec.t, rec.r, rec.passed ? "pass" : "FAIL",
                        rec.lhs.c_str(), rec.rhs.c_str(), rec.witness.c_str());
        }
        std::cout << report.records.size() << " checks, " << report.failures << " failures; "
                  << "K_{2,3}+pendant exception sightings: " << report.exception_sightings
                  << "\n";
    }
    if (!out_path.empty()) write_file(resolve_out(out_path), out.dump(2) + "\n");
    return report.failures == 0 ? 0 : 1;
}

int cmd_offline(int n, double m_exponent, long long m_explicit, bool m_given, int trials,
                std::uint64_t seed) {
    const long long m =
        m_given ? m_explicit
                : static_cast<long long>(
                      std::floor(std::pow(static_cast<double>(n), m_exponent)));
    int survived = 0;
    json per_trial = json::array();
    for (int t = 0; t < trials; ++t) {
        const RunOutcome run = offline_k3_r2(n, m, seed ^ static_cast<std::uint64_t>(t));
        if (!run.loss_round) ++survived;
        json rec;
        rec["trial"] = t;
        if (run.loss_round)
            rec["loss_pair_index"] = *run.loss_round;
        else
            rec["loss_pair_index"] = nullptr;
        per_trial.push_back(std::move(rec));
    }
    json out;
    out["schema"] = "achlio-offline-k3-v1";
    out["n"] = n;
    out["m"] = m;
    out["trials"] = trials;
    out["seed"] = seed;
    out["survived"] = survived;
    out["survival_rate"] = static_cast<double>(survived) / trials;
    out["per_trial"] = std::move(per_trial);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_count(const std::string& graph_path, const std::string& pattern_spec) {
    const DynamicGraph g = parse_graph(read_file(graph_path));
    const Pattern p = pattern_from_spec(pattern_spec);
    std::cout << count_copies(g, p) << "\n";
    return 0;
}

int cmd_diagnose_codegree(int n, double p, double p_coef, bool p_given, int samples,
                          std::uint64_t seed, const std::string& format) {
    const double prob = p_given ? p : p_coef / std::sqrt(static_cast<double>(n));
    const CodegreeReport report = codegree_diagnostic(n, prob, samples, seed);
    json out;
    out["schema"] = "achlio-codegree-v1";
    out["n"] = n;
    out["p"] = prob;
    out["samples"] = samples;
    out["seed"] = seed;
    out["max_allowed"] = report.per_sample.empty() ? 0.0 : report.per_sample[0].max_allowed;
    out["first_clause_clean_samples"] = report.first_clause_clean_samples;
    out["second_clause_ok_samples"] = report.second_clause_ok_samples;
    json arr = json::array();
    for (const auto& s : report.per_sample) {
        json tails = json::array();
        for (const auto& t : s.tails) {
            tails.push_back(json{{"k", t.k},
                                 {"pairs_at_least", t.pairs_at_least},
                                 {"bound", t.bound},
                                 {"ok", t.ok}});
        }
        arr.push_back(json{{"max_codegree", s.max_codegree},
                           {"first_clause_violations", s.first_clause_violations},
                           {"second_clause_ok", s.second_clause_ok},
                           {"tails", std::move(tails)}});
    }
    out["per_sample"] = std::move(arr);
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "codegree diagnostic: n=" << n << " p=" << prob << " samples=" << samples
                  << "\n";
        std::cout << "first clause (max codegree <= n p^2 log2 n = "
                  << (report.per_sample.empty() ? 0.0 : report.per_sample[0].max_allowed)
                  << "): clean in " << report.first_clause_clean_samples << "/" << samples
                  << " samples\n";
        std::cout << "second clause (pairs with codegree >= k n p^2 bounded by n^2/k^3): ok in "
                  << report.second_clause_ok_samples << "/" << samples << " samples\n";
    }
    return 0;
}

int cmd_diagnose_extremal(int gnp_n, double p, std::uint64_t seed, const std::string& graph_path,
                          int t, bool t_given, int a, int b, bool ab_given, double eps,
                          const std::string& format) {
    DynamicGraph g(1);
    bool sampled = false;
    if (!graph_path.empty()) {
        g = parse_graph(read_file(graph_path));
    } else {
        Rng rng = derive_stream(seed, 0);
        g = sample_gnp(gnp_n, p, rng);
        sampled = true;
    }
    ExtremalReport rep;
    if (t_given)
        rep = extremal_paths(g, t, eps);
    else if (ab_given)
        rep = extremal_biclique(g, a, b, p, eps);
    else
        throw std::domain_error("diagnose extremal needs --t (paths) or --a/--b (biclique)");

    json out;
    out["schema"] = "achlio-extremal-v1";
    out["kind"] = rep.kind;
    out["n"] = g.vertex_count();
    out["edges"] = g.edge_count();
    if (sampled) out["seed"] = seed;
    out["skipped"] = rep.skipped;
    out["count"] = rep.count;
    out["reference"] = rep.reference;
    out["ratio"] = rep.ratio;
    out["epsilon"] = rep.epsilon;
    out["pass"] = rep.pass;
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        if (rep.skipped)
            std::cout << rep.kind << ": skipped (degenerate regime)\n";
        else
            std::cout << rep.kind << ": count=" << rep.count << " reference=" << rep.reference
                      << " ratio=" << rep.ratio << " -> " << (rep.pass ? "pass" : "FAIL") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Achlioptas-process small-subgraph avoidance: simulator, exact thresholds, "
                 "verifier, Monte Carlo harness",
                 "achlio"};
    app.require_subcommand(1);

    // threshold
    std::string th_family;
    int th_t = 0;
    int th_r = 2;
    std::string th_pattern;
    int th_s = 0;
    bool th_star = false;
    std::string th_format = "table";
    auto* threshold = app.add_subcommand("threshold", "Exact avoidance threshold exponents");
    threshold->add_option("--family", th_family, "cycle | clique | biclique");
    threshold->add_option("--t", th_t, "family size parameter t");
    threshold->add_option("--r", th_r, "offers per round (>= 2)")->required();
    threshold->add_option("--pattern", th_pattern, "pattern alias or file (general H)");
    auto* th_s_opt = threshold->add_option("--s", th_s, "danger depth for general H");
    threshold->add_flag("--star", th_star, "minimize theta over subgraphs and s (theta*)");
    threshold->add_option("--format", th_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // simulate
    int si_n = 0;
    int si_r = 2;
    std::string si_pattern;
    std::string si_strategy = "min-danger";
    int si_s = 0;
    std::string si_rounds;
    std::uint64_t si_seed = 0;
    bool si_keep_going = false;
    std::string si_tie = "index";
    auto* simulate = app.add_subcommand("simulate", "Run one avoidance game, print the outcome");
    simulate->add_option("--n", si_n, "vertex count")->required();
    simulate->add_option("--r", si_r, "offers per round")->required();
    simulate->add_option("--pattern", si_pattern, "forbidden pattern alias or file")->required();
    simulate->add_option("--strategy", si_strategy, "min-danger | first-edge | random");
    auto* si_s_opt = simulate->add_option("--s", si_s, "danger depth (defaults per family)");
    simulate->add_option("--rounds", si_rounds, "round budget, or 'auto'")->required();
    auto* si_seed_opt = simulate->add_option("--seed", si_seed, "RNG seed (default: OS entropy)");
    simulate->add_flag("--keep-going", si_keep_going, "continue past the first loss");
    simulate->add_option("--tie-break", si_tie, "index | random (among minimally dangerous)")
        ->check(CLI::IsMember({"index", "random"}));

    // experiment
    std::string ex_config;
    int ex_jobs = 0;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo survival grids / crossing");
    experiment->add_option("--config", ex_config, "JSON config file")->required();
    auto* ex_jobs_opt = experiment->add_option("--jobs", ex_jobs, "worker threads (0 = auto)");

    // verify-appendix
    int ve_t_max = 7;
    int ve_clique_t_max = 8;
    int ve_r_max = 5;
    bool ve_tamper = false;
    std::string ve_format = "table";
    std::string ve_out;
    auto* verify = app.add_subcommand("verify-appendix",
                                      "Machine-check the appendix lemmas and inequalities");
    verify->add_option("--t-max", ve_t_max, "grid cap for cycles/biclique inequalities");
    verify->add_option("--clique-t-max", ve_clique_t_max, "grid cap for cliques");
    verify->add_option("--r-max", ve_r_max, "grid cap for r");
    verify->add_flag("--tamper", ve_tamper, "test hook: perturb clique theta (must fail)");
    verify->add_option("--format", ve_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));
    verify->add_option("--out", ve_out, "also write the JSON report to this file");

    // offline-k3
    int of_n = 0;
    double of_m_exp = 1.25;
    long long of_m = 0;
    int of_trials = 100;
    std::uint64_t of_seed = 0;
    auto* offline = app.add_subcommand("offline-k3", "Offline triangle avoidance (r = 2)");
    offline->add_option("--n", of_n, "vertex count")->required();
    offline->add_option("--m-exponent", of_m_exp, "m = floor(n^exponent)");
    auto* of_m_opt = offline->add_option("--m", of_m, "explicit m (overrides --m-exponent)");
    offline->add_option("--trials", of_trials, "number of trials");
    auto* of_seed_opt = offline->add_option("--seed", of_seed, "RNG seed (default: OS entropy)");

    // count
    std::string co_graph;
    std::string co_pattern;
    auto* count = app.add_subcommand("count", "Count labeled copies of a pattern in a graph");
    count->add_option("--graph", co_graph, "host graph file")->required();
    count->add_option("--pattern", co_pattern, "pattern alias or file")->required();

    // diagnose
    auto* diagnose = app.add_subcommand("diagnose", "Statistical diagnostics on G(n,p)");
    diagnose->require_subcommand(1);
    int dc_n = 2000;
    double dc_p = 0.0;
    double dc_p_coef = 1.2;
    int dc_samples = 20;
    std::uint64_t dc_seed = 0;
    std::string dc_format = "table";
    auto* dcode = diagnose->add_subcommand("codegree", "Codegree-distribution clauses");
    dcode->add_option("--n", dc_n, "vertex count");
    auto* dc_p_opt = dcode->add_option("--p", dc_p, "edge probability (overrides --p-coef)");
    dcode->add_option("--p-coef", dc_p_coef, "p = coef / sqrt(n)");
    dcode->add_option("--samples", dc_samples, "number of G(n,p) samples");
    auto* dc_seed_opt = dcode->add_option("--seed", dc_seed, "RNG seed (default: OS entropy)");
    dcode->add_option("--format", dc_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    int de_n = 300;
    double de_p = 0.1;
    std::uint64_t de_seed = 0;
    std::string de_graph;
    int de_t = 0;
    int de_a = 0;
    int de_b = 0;
    double de_eps = 0.2;
    std::string de_format = "table";
    auto* dext = diagnose->add_subcommand("extremal", "Extremal copy-count lower-bound ratios");
    dext->add_option("--n", de_n, "G(n,p) sample size");
    dext->add_option("--p", de_p, "edge probability");
    auto* de_seed_opt = dext->add_option("--seed", de_seed, "RNG seed (default: OS entropy)");
    dext->add_option("--graph", de_graph, "host graph file (instead of sampling)");
    auto* de_t_opt = dext->add_option("--t", de_t, "path length in vertices");
    auto* de_a_opt = dext->add_option("--a", de_a, "biclique side a");
    dext->add_option("--b", de_b, "biclique side b");
    dext->add_option("--epsilon", de_eps, "allowed slack below 1");
    dext->add_option("--format", de_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (threshold->parsed())
            return cmd_threshold(th_family, th_t, th_r, th_pattern, th_s, th_s_opt->count() > 0,
                                 th_star, th_format);
        if (simulate->parsed())
            return cmd_simulate(si_n, si_r, si_pattern, si_strategy, si_s,
                                si_s_opt->count() > 0, si_rounds,
                                pick_seed(si_seed_opt, si_seed), si_keep_going, si_tie);
        if (experiment->parsed())
            return cmd_experiment(ex_config, ex_jobs, ex_jobs_opt->count() > 0);
        if (verify->parsed())
            return cmd_verify(ve_t_max, ve_clique_t_max, ve_r_max, ve_tamper, ve_format, ve_out);
        if (offline->parsed())
            return cmd_offline(of_n, of_m_exp, of_m, of_m_opt->count() > 0, of_trials,
                               pick_seed(of_seed_opt, of_seed));
        if (count->parsed()) return cmd_count(co_graph, co_pattern);
        if (diagnose->parsed()) {
            auto* dcode_parsed = diagnose->get_subcommand("codegree");
            if (dcode_parsed->parsed())
                return cmd_diagnose_codegree(dc_n, dc_p, dc_p_coef, dc_p_opt->count() > 0,
                                             dc_samples, pick_seed(dc_seed_opt, dc_seed),
                                             dc_format);
            return cmd_diagnose_extremal(de_n, de_p, pick_seed(de_seed_opt, de_seed), de_graph,
                                         de_t, de_t_opt->count() > 0, de_a, de_b,
                                         de_a_opt->count() > 0, de_eps, de_format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
