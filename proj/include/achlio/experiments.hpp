#pragma once

#include "achlio/dynamic_graph.hpp"
#include "achlio/process.hpp"
#include "achlio/thresholds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace achlio {

// m values per cell: an explicit list, or m = floor(coef * n^alpha) per
// exponent.  All m for one n share trial seeds (common random numbers), so
// estimated survival is pointwise nonincreasing in m.
struct MRule {
    enum class Kind { list, power } kind = Kind::power;
    std::vector<long long> values;   // list
    double coef = 1.0;               // power
    std::vector<double> exponents;   // power
};

struct ExperimentConfig {
    std::string pattern_spec = "c3";
    int r = 2;
    StrategyKind strategy = StrategyKind::min_danger;
    std::optional<int> s;  // danger depth; defaults per family
    std::vector<int> n_values;
    MRule m_rule;
    int trials = 100;
    std::uint64_t base_seed = 0;
    int jobs = 0;  // 0 = hardware concurrency
    TieBreak tie_break = TieBreak::lowest_index;
    bool timings = false;  // when off, elapsed_ms is persisted as 0
};

struct TrialRecord {
    long long trial_id = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int r = 0;
    std::string pattern;
    std::string strategy;
    long long m_target = 0;
    std::optional<long long> loss_round;
    long long rounds_run = 0;
    long long elapsed_ms = 0;
};

struct CellSummary {
    int n = 0;
    long long m = 0;
    std::optional<double> alpha;  // power rule only
    int trials = 0;
    int survived = 0;
    double survival = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    std::optional<long long> median_loss_round;  // over lost trials
};

struct GridResult {
    std::vector<TrialRecord> records;
    std::vector<CellSummary> cells;
};

// Danger depth when none is configured: s_param for cliques/bicliques, 1 for
// cycles, min(e-1, 3) otherwise.  `warned` reports whether the general-H
// fallback was used.
int default_danger_depth(const Pattern& h, int r, bool* general_fallback = nullptr);

GridResult run_grid(const ExperimentConfig& cfg);

// CSV with a schema comment line; loss_round empty when the trial survived.
std::string trials_csv(const std::vector<TrialRecord>& records);

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};
WilsonInterval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct CrossingConfig {
    std::string pattern_spec = "c3";
    int r = 2;
    StrategyKind strategy = StrategyKind::min_danger;
    std::optional<int> s;
    std::vector<int> n_values;
    double alpha_low = 1.0;
    double alpha_high = 1.5;
    int refinements = 3;
    int trials = 100;
    double target = 0.5;
    std::uint64_t base_seed = 0;
    int jobs = 0;
    std::optional<double> reference_exponent;  // 2 - theta when known
};

struct CrossingEstimate {
    int n = 0;
    bool bracket_ok = false;  // survival(alpha_low) >= target >= survival(alpha_high)
    double alpha_low = 0.0;
    double alpha_high = 0.0;
    double alpha_hat = 0.0;
    double survival_at_low = 0.0;
    double survival_at_high = 0.0;
};

std::vector<CrossingEstimate> estimate_crossing(const CrossingConfig& cfg);

// Codegree-distribution diagnostic on G(n,p) samples.  Thresholds use
// base-2 logarithms (the lemma leaves the base free; base 2 is the pinned
// calibration at desk scale).
struct CodegreeTail {
    int k = 0;
    long long pairs_at_least = 0;  // codegree >= k n p^2
    double bound = 0.0;            // n^2 / k^3
    bool ok = false;
};

struct CodegreeSample {
    long long max_codegree = 0;
    double max_allowed = 0.0;  // n p^2 log2 n
    long long first_clause_violations = 0;
    std::vector<CodegreeTail> tails;  // k = 4..floor(log2 n)
    bool second_clause_ok = false;
};

struct CodegreeReport {
    int n = 0;
    double p = 0.0;
    int samples = 0;
    std::vector<CodegreeSample> per_sample;
    int first_clause_clean_samples = 0;
    int second_clause_ok_samples = 0;
};

CodegreeReport codegree_diagnostic(int n, double p, int samples, std::uint64_t seed);

// Extremal lower-bound ratio checks (asymptotic lemmas; eps is desk-scale
// slack).  The path check is skipped on empty graphs.
struct ExtremalReport {
    std::string kind;
    long long count = 0;
    double reference = 0.0;
    double ratio = 0.0;
    double epsilon = 0.0;
    bool skipped = false;
    bool pass = false;
};

ExtremalReport extremal_paths(const DynamicGraph& g, int t, double eps = 0.2);
ExtremalReport extremal_biclique(const DynamicGraph& g, int a, int b, double p, double eps = 0.2);

} // namespace achlio
