#include "rrg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "rrg/errors.hpp"
#include "rrg/pendant.hpp"
#include "rrg/rng.hpp"
#include "rrg/stats.hpp"
#include "rrg/subgraph.hpp"
#include "rrg/treegen.hpp"

namespace rrg {

namespace {

bool tree_statistic(StatisticKind k) {
    return k == StatisticKind::Pendant || k == StatisticKind::Windowed ||
           k == StatisticKind::LeafFraction || k == StatisticKind::VarianceScaling;
}

bool needs_pattern(StatisticKind k) {
    return k == StatisticKind::Pendant || k == StatisticKind::Windowed ||
           k == StatisticKind::VarianceScaling;
}

void validate_experiment(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (spec.n_grid.empty()) throw std::invalid_argument("experiment: n_grid is empty");
    for (size_t i = 0; i < spec.n_grid.size(); ++i) {
        if (spec.n_grid[i] < spec.m + 1)
            throw std::invalid_argument("experiment: n_grid entries must be >= m+1");
        if (i && spec.n_grid[i] <= spec.n_grid[i - 1])
            throw std::invalid_argument("experiment: n_grid must be strictly increasing");
    }
    const StatisticKind kind = spec.statistic.kind;
    switch (kind) {
        case StatisticKind::DiamondTail:
        case StatisticKind::ExpectationTrajectory:
            if (spec.model != Model::UA || spec.m != 2)
                throw std::invalid_argument("experiment: diamond statistics need ua with m=2");
            break;
        case StatisticKind::CliqueTail:
            if (spec.model != Model::UA || spec.m < 2)
                throw std::invalid_argument("experiment: clique tail needs ua with m>=2");
            break;
        default:
            if (spec.m != 1)
                throw std::invalid_argument("experiment: tree statistics need m=1");
            break;
    }
    if (kind == StatisticKind::DiamondTail && spec.statistic.threshold_time < 4)
        throw std::invalid_argument("experiment: diamond tail needs k >= 4");
    if (kind == StatisticKind::CliqueTail && spec.statistic.threshold_time < spec.m + 2)
        throw std::invalid_argument("experiment: clique tail needs k >= m+2");
    if (kind == StatisticKind::Windowed && spec.model != Model::UA)
        throw std::invalid_argument("experiment: the windowed statistic is defined for ua");
    if (tree_statistic(kind) && kind != StatisticKind::LeafFraction &&
        spec.model == Model::PA && spec.convention == PaConvention::PaperDenominator)
        throw std::invalid_argument(
            "experiment: pattern statistics need trees; use the normalized pa convention");
    if (needs_pattern(kind) && spec.statistic.pattern.empty())
        throw std::invalid_argument("experiment: statistic.pattern is required");
    if (kind == StatisticKind::Windowed) {
        if (spec.statistic.window_base < 1 || spec.statistic.window_width < 1)
            throw std::invalid_argument("experiment: windowed statistic needs base,width >= 1");
    }
}

struct TrialKernel {
    const ExperimentSpec& spec;
    RootedPattern pattern;  // only for the pattern statistics

    explicit TrialKernel(const ExperimentSpec& s) : spec(s) {
        if (needs_pattern(spec.statistic.kind))
            pattern = make_pattern(parse_pattern_line(spec.statistic.pattern));
    }

    // values for one trial, one entry per grid point
    std::vector<long long> run(std::uint64_t trial) const {
        const StatisticKind kind = spec.statistic.kind;
        GrowthConfig cfg{spec.model, static_cast<int>(spec.n_grid.back()), spec.m,
                         spec.convention, spec.seed};
        GrowthProcess proc(cfg);
        Rng rng = trial_rng(spec.seed, trial);

        long long running = 0;  // diamond or clique count so far
        if (kind == StatisticKind::CliqueTail) running = 1;  // the seed clique

        std::vector<long long> out(spec.n_grid.size(), 0);
        size_t gi = 0;
        for (;;) {
            const int n = proc.size();
            if (gi < spec.n_grid.size() && n == spec.n_grid[gi]) {
                out[gi] = read_point(proc.graph(), running);
                ++gi;
            }
            if (gi == spec.n_grid.size()) break;
            proc.step(rng);
            if (kind == StatisticKind::DiamondTail ||
                kind == StatisticKind::ExpectationTrajectory)
                running += diamond_increment(proc);
            else if (kind == StatisticKind::CliqueTail)
                running += clique_increment(proc);
        }
        return out;
    }

    static long long diamond_increment(const GrowthProcess& proc) {
        const LabeledGraph& g = proc.graph();
        const int w = proc.size();
        const int a = proc.last_targets()[0], b = proc.last_targets()[1];
        if (!g.has_edge(a, b)) return 0;
        long long common = 0;
        for (int c : g.adj[a])
            if (c != b && c != w && g.has_edge(b, c)) ++common;
        return common;
    }

    static long long clique_increment(const GrowthProcess& proc) {
        const LabeledGraph& g = proc.graph();
        const auto& t = proc.last_targets();
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = i + 1; j < t.size(); ++j)
                if (!g.has_edge(t[i], t[j])) return 0;
        return 1;
    }

    long long read_point(const LabeledGraph& g, long long running) const {
        switch (spec.statistic.kind) {
            case StatisticKind::DiamondTail:
                return running >= g_diamond(spec.statistic.threshold_time) ? 1 : 0;
            case StatisticKind::CliqueTail:
                return running >= g_clique(spec.statistic.threshold_time, spec.m) ? 1 : 0;
            case StatisticKind::ExpectationTrajectory:
                return running;
            case StatisticKind::Pendant:
                return has_pendant(g, pattern) ? 1 : 0;
            case StatisticKind::Windowed:
                return count_windowed(g, pattern, spec.statistic.window_base,
                                      spec.statistic.window_width)
                    .value;
            case StatisticKind::LeafFraction:
                return leaf_count(g);
            case StatisticKind::VarianceScaling:
                return count_pendants(g, pattern).value;
        }
        throw std::logic_error("experiment: bad statistic kind");
    }
};

}  // namespace

std::vector<std::vector<long long>> run_trials(const ExperimentSpec& spec, Execution exec) {
    validate_experiment(spec);
    TrialKernel kernel(spec);
    const long trials = spec.trials;
    std::vector<std::vector<long long>> values(spec.n_grid.size(),
                                               std::vector<long long>(static_cast<size_t>(trials)));
    const bool parallel = exec == Execution::Parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (long t = 0; t < trials; ++t) {
        std::vector<long long> row = kernel.run(static_cast<std::uint64_t>(t));
        for (size_t gi = 0; gi < row.size(); ++gi)
            values[gi][static_cast<size_t>(t)] = row[gi];
    }
    (void)parallel;
    return values;
}

namespace {

std::string statistic_name(const ExperimentSpec& spec) {
    switch (spec.statistic.kind) {
        case StatisticKind::DiamondTail:
            return "diamond-tail-k" + std::to_string(spec.statistic.threshold_time);
        case StatisticKind::CliqueTail:
            return "clique-tail-k" + std::to_string(spec.statistic.threshold_time) + "-m" +
                   std::to_string(spec.m);
        case StatisticKind::ExpectationTrajectory:
            return "diamond-mean";
        case StatisticKind::Pendant:
            return "pendant-prob";
        case StatisticKind::Windowed:
            return "windowed";
        case StatisticKind::LeafFraction:
            return "leaf-fraction";
        case StatisticKind::VarianceScaling:
            return "copies";
    }
    return "?";
}

PointEstimate proportion_point(const ExperimentSpec& spec, long n, const std::string& name,
                               long long successes) {
    Interval ci = wilson_interval(successes, spec.trials);
    PointEstimate p;
    p.n = n;
    p.statistic = name;
    p.estimate = static_cast<double>(successes) / static_cast<double>(spec.trials);
    p.ci_low = ci.low;
    p.ci_high = ci.high;
    p.trials = spec.trials;
    p.seed = spec.seed;
    return p;
}

PointEstimate mean_point(const ExperimentSpec& spec, long n, const std::string& name,
                         const std::vector<double>& xs, double scale) {
    MeanStderr ms = mean_stderr(xs);
    PointEstimate p;
    p.n = n;
    p.statistic = name;
    p.estimate = ms.mean * scale;
    p.ci_low = (ms.mean - kZ95 * ms.se) * scale;
    p.ci_high = (ms.mean + kZ95 * ms.se) * scale;
    p.trials = spec.trials;
    p.seed = spec.seed;
    return p;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, Execution exec) {
    const auto t0 = std::chrono::steady_clock::now();
    auto values = run_trials(spec, exec);
    ExperimentResult result;
    result.spec = spec;
    const std::string name = statistic_name(spec);

    for (size_t gi = 0; gi < spec.n_grid.size(); ++gi) {
        const long n = spec.n_grid[gi];
        const auto& row = values[gi];
        switch (spec.statistic.kind) {
            case StatisticKind::DiamondTail:
            case StatisticKind::CliqueTail:
            case StatisticKind::Pendant: {
                long long succ = 0;
                for (long long x : row) succ += x;
                result.points.push_back(proportion_point(spec, n, name, succ));
                break;
            }
            case StatisticKind::ExpectationTrajectory: {
                std::vector<double> xs(row.begin(), row.end());
                result.points.push_back(mean_point(spec, n, name, xs, 1.0));
                break;
            }
            case StatisticKind::LeafFraction: {
                std::vector<double> xs(row.begin(), row.end());
                result.points.push_back(
                    mean_point(spec, n, name, xs, 1.0 / static_cast<double>(n)));
                break;
            }
            case StatisticKind::Windowed: {
                long long pos = 0;
                for (long long x : row) pos += x > 0 ? 1 : 0;
                result.points.push_back(proportion_point(spec, n, "windowed-positive", pos));
                std::vector<double> xs(row.begin(), row.end());
                result.points.push_back(mean_point(spec, n, "windowed-mean", xs, 1.0));
                break;
            }
            case StatisticKind::VarianceScaling: {
                std::vector<double> xs(row.begin(), row.end());
                const double var = sample_variance(xs);
                const double mean = sample_mean(xs);
                // normal-theory spread of a sample variance via the fourth
                // central moment; crude but honest error bars (see README)
                double m4 = 0.0;
                for (double x : xs) {
                    const double d = x - mean;
                    m4 += d * d * d * d;
                }
                m4 /= static_cast<double>(xs.size());
                const double se_var =
                    std::sqrt(std::max(0.0, m4 - var * var) / static_cast<double>(xs.size()));

                PointEstimate a;
                a.n = n;
                a.statistic = "var-over-n";
                a.estimate = var / static_cast<double>(n);
                a.ci_low = (var - kZ95 * se_var) / static_cast<double>(n);
                a.ci_high = (var + kZ95 * se_var) / static_cast<double>(n);
                a.trials = spec.trials;
                a.seed = spec.seed;
                result.points.push_back(a);

                PointEstimate b = a;
                b.statistic = "var-over-mean2";
                b.estimate = var / (mean * mean);
                b.ci_low = (var - kZ95 * se_var) / (mean * mean);
                b.ci_high = (var + kZ95 * se_var) / (mean * mean);
                result.points.push_back(b);

                long long zero = 0;
                for (long long x : row) zero += x == 0 ? 1 : 0;
                result.points.push_back(proportion_point(spec, n, "p-zero", zero));
                break;
            }
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& p : result.points) p.elapsed_seconds = elapsed;
    return result;
}

namespace {

ExperimentResult run_kind(const ExperimentSpec& spec, Execution exec,
                          std::initializer_list<StatisticKind> allowed, const char* who) {
    for (StatisticKind k : allowed)
        if (spec.statistic.kind == k) return run_experiment(spec, exec);
    throw std::invalid_argument(std::string(who) + ": statistic kind mismatch");
}

}  // namespace

ExperimentResult estimate_tail_probability(const ExperimentSpec& spec, Execution exec) {
    return run_kind(spec, exec, {StatisticKind::DiamondTail, StatisticKind::CliqueTail},
                    "estimate_tail_probability");
}
ExperimentResult estimate_expectation_trajectory(const ExperimentSpec& spec, Execution exec) {
    return run_kind(spec, exec, {StatisticKind::ExpectationTrajectory},
                    "estimate_expectation_trajectory");
}
ExperimentResult pendant_probability_curve(const ExperimentSpec& spec, Execution exec) {
    return run_kind(spec, exec, {StatisticKind::Pendant, StatisticKind::Windowed},
                    "pendant_probability_curve");
}
ExperimentResult leaf_fraction(const ExperimentSpec& spec, Execution exec) {
    return run_kind(spec, exec, {StatisticKind::LeafFraction}, "leaf_fraction");
}
ExperimentResult variance_scaling(const ExperimentSpec& spec, Execution exec) {
    return run_kind(spec, exec, {StatisticKind::VarianceScaling}, "variance_scaling");
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
    out << "n,statistic,estimate,ci_low,ci_high,trials,seed\n";
    char buf[128];
    for (const auto& p : result.points) {
        std::snprintf(buf, sizeof buf, "%ld,%s,%.12g,%.12g,%.12g,%ld,%llu\n", p.n,
                      p.statistic.c_str(), p.estimate, p.ci_low, p.ci_high, p.trials,
                      static_cast<unsigned long long>(p.seed));
        out << buf;
    }
}

// ---- config ------------------------------------------------------------------

namespace {

StatisticKind kind_from_string(const std::string& s) {
    if (s == "diamond-tail") return StatisticKind::DiamondTail;
    if (s == "clique-tail") return StatisticKind::CliqueTail;
    if (s == "diamond-mean") return StatisticKind::ExpectationTrajectory;
    if (s == "pendant") return StatisticKind::Pendant;
    if (s == "windowed") return StatisticKind::Windowed;
    if (s == "leaf-fraction") return StatisticKind::LeafFraction;
    if (s == "variance-scaling") return StatisticKind::VarianceScaling;
    throw std::invalid_argument("config: unknown statistic.kind '" + s + "'");
}

std::string kind_to_string(StatisticKind k) {
    switch (k) {
        case StatisticKind::DiamondTail: return "diamond-tail";
        case StatisticKind::CliqueTail: return "clique-tail";
        case StatisticKind::ExpectationTrajectory: return "diamond-mean";
        case StatisticKind::Pendant: return "pendant";
        case StatisticKind::Windowed: return "windowed";
        case StatisticKind::LeafFraction: return "leaf-fraction";
        case StatisticKind::VarianceScaling: return "variance-scaling";
    }
    return "?";
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw std::invalid_argument(std::string("config: unknown field ") + where + "." +
                                        it.key());
    }
}

std::uint64_t default_seed() {
    const char* env = std::getenv("RRG_SEED");
    if (!env || !*env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: RRG_SEED is not an unsigned integer");
    }
}

}  // namespace

ExperimentSpec parse_config_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    check_keys(j, {"model", "m", "convention", "n_grid", "trials", "seed", "statistic", "output"},
               "config");
    ExperimentSpec spec;

    const std::string model = j.at("model").get<std::string>();
    if (model == "ua")
        spec.model = Model::UA;
    else if (model == "pa")
        spec.model = Model::PA;
    else
        throw std::invalid_argument("config: model must be 'ua' or 'pa'");

    if (!j.contains("statistic") || !j.at("statistic").is_object())
        throw std::invalid_argument("config: statistic object is required");
    const auto& js = j.at("statistic");
    check_keys(js, {"kind", "k", "pattern", "window_base", "window_width"}, "config.statistic");
    spec.statistic.kind = kind_from_string(js.at("kind").get<std::string>());
    spec.statistic.threshold_time = js.value("k", 0);
    spec.statistic.pattern = js.value("pattern", needs_pattern(spec.statistic.kind) ? "0" : "");
    spec.statistic.window_base = js.value("window_base", 2);
    spec.statistic.window_width = js.value("window_width", 6);

    switch (spec.statistic.kind) {
        case StatisticKind::DiamondTail:
        case StatisticKind::ExpectationTrajectory:
            spec.m = j.value("m", 2);
            break;
        case StatisticKind::CliqueTail:
            spec.m = j.value("m", 3);
            break;
        default:
            spec.m = j.value("m", 1);
            break;
    }

    const std::string conv = j.value("convention", "normalized");
    if (conv == "normalized")
        spec.convention = PaConvention::Normalized;
    else if (conv == "paper-denominator")
        spec.convention = PaConvention::PaperDenominator;
    else
        throw std::invalid_argument("config: convention must be 'normalized' or 'paper-denominator'");

    if (!j.contains("n_grid") || !j.at("n_grid").is_array() || j.at("n_grid").empty())
        throw std::invalid_argument("config: n_grid must be a non-empty array");
    for (const auto& e : j.at("n_grid")) {
        if (!e.is_number_integer())
            throw std::invalid_argument("config: n_grid entries must be integers");
        spec.n_grid.push_back(e.get<long>());
    }

    const bool probability_kind = spec.statistic.kind == StatisticKind::DiamondTail ||
                                  spec.statistic.kind == StatisticKind::CliqueTail ||
                                  spec.statistic.kind == StatisticKind::Pendant ||
                                  spec.statistic.kind == StatisticKind::Windowed;
    spec.trials = j.value("trials", probability_kind ? 10000L : 100L);
    spec.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : default_seed();
    spec.output = j.value("output", "");

    validate_experiment(spec);
    return spec;
}

ExperimentSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
    return parse_config_json(j);
}

nlohmann::json manifest_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["model"] = spec.model == Model::UA ? "ua" : "pa";
    j["m"] = spec.m;
    j["convention"] =
        spec.convention == PaConvention::Normalized ? "normalized" : "paper-denominator";
    j["n_grid"] = spec.n_grid;
    j["trials"] = spec.trials;
    j["seed"] = spec.seed;
    j["statistic"]["kind"] = kind_to_string(spec.statistic.kind);
    if (spec.statistic.threshold_time) j["statistic"]["k"] = spec.statistic.threshold_time;
    if (!spec.statistic.pattern.empty()) j["statistic"]["pattern"] = spec.statistic.pattern;
    if (spec.statistic.kind == StatisticKind::Windowed) {
        j["statistic"]["window_base"] = spec.statistic.window_base;
        j["statistic"]["window_width"] = spec.statistic.window_width;
    }
    if (!spec.output.empty()) j["output"] = spec.output;
    return j;
}

}  // namespace rrg
