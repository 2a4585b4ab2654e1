#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrg/graph.hpp"

namespace rrg {

enum class StatisticKind {
    DiamondTail,            // P(X_n >= g_diamond(k)), UA m=2 growth
    CliqueTail,             // P(X_n >= g_clique(k, m)), UA growth
    ExpectationTrajectory,  // mean diamond count along the grid, UA m=2
    Pendant,                // P(tree has a pendant copy of the pattern)
    Windowed,               // windowed copies: P(count > 0) and mean count
    LeafFraction,           // mean leaf count (reported per vertex)
    VarianceScaling,        // Var/n, Var/mean^2 and P(count = 0) of copies
};

struct StatisticSpec {
    StatisticKind kind = StatisticKind::LeafFraction;
    int threshold_time = 0;    // k for the tail statistics
    std::string pattern;       // parent-array line for the pattern statistics
    int window_base = 0;       // windowed only
    int window_width = 0;      // windowed only
};

struct ExperimentSpec {
    Model model = Model::UA;
    int m = 1;
    PaConvention convention = PaConvention::Normalized;
    std::vector<long> n_grid;
    long trials = 0;
    std::uint64_t seed = 0;
    StatisticSpec statistic;
    std::string output;  // CSV path; empty = caller decides
};

struct PointEstimate {
    long n = 0;
    std::string statistic;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;  // not in the CSV, kept for the bench
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<PointEstimate> points;
};

enum class Execution { Serial, Parallel };

// Trials are coupled: each trial grows one graph to max(n_grid) and reads the
// statistic at every grid point on the way. Trial i draws from a private
// stream seeded by mix64(seed ^ mix64(i+1)), and per-trial values land in a
// preallocated slot before a serial reduction, so results are bit-identical
// for any thread count; Execution::Serial is the reference path.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                Execution exec = Execution::Parallel);

// Raw per-trial statistic values, one row per grid point; what the
// reductions consume, exposed for tests (coupling, determinism).
std::vector<std::vector<long long>> run_trials(const ExperimentSpec& spec, Execution exec);

// Named entry points for the individual statistic families; these validate
// that spec.statistic.kind matches and defer to run_experiment.
ExperimentResult estimate_tail_probability(const ExperimentSpec& spec,
                                           Execution exec = Execution::Parallel);
ExperimentResult estimate_expectation_trajectory(const ExperimentSpec& spec,
                                                 Execution exec = Execution::Parallel);
ExperimentResult pendant_probability_curve(const ExperimentSpec& spec,
                                           Execution exec = Execution::Parallel);
ExperimentResult leaf_fraction(const ExperimentSpec& spec,
                               Execution exec = Execution::Parallel);
ExperimentResult variance_scaling(const ExperimentSpec& spec,
                                  Execution exec = Execution::Parallel);

// CSV schema: header "n,statistic,estimate,ci_low,ci_high,trials,seed",
// one row per (grid point, reported statistic).
void write_csv(std::ostream& out, const ExperimentResult& result);

// Config / run-manifest JSON (same schema both ways); load_config fills
// defaults: trials per statistic family, seed from RRG_SEED or 0, m per
// model, normalized convention.
ExperimentSpec parse_config_json(const nlohmann::json& j);
ExperimentSpec load_config(const std::string& path);
nlohmann::json manifest_json(const ExperimentSpec& spec);

}  // namespace rrg
