#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "rrg/exactprob.hpp"
#include "rrg/experiment.hpp"
#include "rrg/stats.hpp"
#include "rrg/subgraph.hpp"

using namespace rrg;

namespace {

ExperimentSpec diamond_tail_spec(std::vector<long> grid, int k, long trials,
                                 std::uint64_t seed) {
    ExperimentSpec spec;
    spec.model = Model::UA;
    spec.m = 2;
    spec.n_grid = std::move(grid);
    spec.trials = trials;
    spec.seed = seed;
    spec.statistic.kind = StatisticKind::DiamondTail;
    spec.statistic.threshold_time = k;
    return spec;
}

bool same_points(const ExperimentResult& a, const ExperimentResult& b) {
    if (a.points.size() != b.points.size()) return false;
    for (size_t i = 0; i < a.points.size(); ++i) {
        const PointEstimate &p = a.points[i], &q = b.points[i];
        if (p.n != q.n || p.statistic != q.statistic || p.estimate != q.estimate ||
            p.ci_low != q.ci_low || p.ci_high != q.ci_high || p.trials != q.trials ||
            p.seed != q.seed)
            return false;
    }
    return true;
}

// 1.96-sigma half-width back to one standard error
double se_of(const PointEstimate& p) { return (p.ci_high - p.ci_low) / 2.0 / kZ95; }

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("parallel execution reproduces the serial reference bit for bit") {
    ExperimentSpec spec = diamond_tail_spec({20, 35, 50}, 6, 400, 99);
    auto serial = run_trials(spec, Execution::Serial);
    auto parallel = run_trials(spec, Execution::Parallel);
    CHECK(serial == parallel);

    ExperimentResult a = run_experiment(spec, Execution::Serial);
    ExperimentResult b = run_experiment(spec, Execution::Parallel);
    CHECK(same_points(a, b));

    // and the whole thing is a pure function of the spec
    ExperimentResult c = run_experiment(spec, Execution::Parallel);
    CHECK(same_points(b, c));

    ExperimentSpec other = spec;
    other.seed = 100;
    CHECK_FALSE(same_points(a, run_experiment(other, Execution::Serial)));
}

TEST_CASE("coupled trials are monotone along the grid") {
    // each trial grows one graph, so both the raw diamond counts and the
    // tail indicators can only move up along the grid
    ExperimentSpec spec = diamond_tail_spec({10, 20, 40, 80}, 8, 300, 7);
    auto indicators = run_trials(spec, Execution::Serial);
    REQUIRE(indicators.size() == 4);
    for (size_t gi = 1; gi < indicators.size(); ++gi)
        for (size_t t = 0; t < indicators[gi].size(); ++t)
            CHECK(indicators[gi][t] >= indicators[gi - 1][t]);

    spec.statistic.kind = StatisticKind::ExpectationTrajectory;
    spec.statistic.threshold_time = 0;
    auto counts = run_trials(spec, Execution::Serial);
    long long moved = 0;
    for (size_t gi = 1; gi < counts.size(); ++gi)
        for (size_t t = 0; t < counts[gi].size(); ++t) {
            CHECK(counts[gi][t] >= counts[gi - 1][t]);
            moved += counts[gi][t] - counts[gi - 1][t];
        }
    CHECK(moved > 0);
}

TEST_CASE("deterministic tail events estimate exactly one") {
    // g(4) = 1 and vertex 4 always closes a diamond over the seed triangle
    ExperimentSpec spec = diamond_tail_spec({4, 10, 25}, 4, 500, 3);
    ExperimentResult r = estimate_tail_probability(spec, Execution::Serial);
    REQUIRE(r.points.size() == 3);
    for (const PointEstimate& p : r.points) {
        CHECK(p.statistic == "diamond-tail-k4");
        CHECK(p.estimate == 1.0);
        CHECK(p.ci_high == 1.0);
        CHECK(p.ci_low > 0.98);
        CHECK(p.trials == 500);
    }
}

TEST_CASE("tail estimates respect the expectation ceiling") {
    ExperimentSpec spec = diamond_tail_spec({50, 100}, 8, 2000, 11);
    ExperimentResult r = run_experiment(spec);
    double g = static_cast<double>(g_diamond(8));
    for (const PointEstimate& p : r.points) {
        double ceiling = ua_diamond_expectation(p.n).get_d() / g;
        CHECK(p.estimate <= ceiling + 3.0 * se_of(p));
        CHECK(p.ci_low >= 0.0);
        CHECK(p.ci_high <= 1.0);
        CHECK(p.ci_low <= p.estimate);
        CHECK(p.estimate <= p.ci_high);
    }
}

TEST_CASE("trajectory means track the exact expectation") {
    ExperimentSpec spec;
    spec.model = Model::UA;
    spec.m = 2;
    spec.n_grid = {20, 50};
    spec.trials = 3000;
    spec.seed = 5;
    spec.statistic.kind = StatisticKind::ExpectationTrajectory;
    ExperimentResult r = estimate_expectation_trajectory(spec, Execution::Serial);
    REQUIRE(r.points.size() == 2);
    for (const PointEstimate& p : r.points) {
        CHECK(p.statistic == "diamond-mean");
        double exact = ua_diamond_expectation(p.n).get_d();
        CHECK(std::fabs(p.estimate - exact) <= 3.5 * se_of(p));
    }
}

TEST_CASE("leaf fraction matches the exact leaf recursion") {
    ExperimentSpec spec;
    spec.model = Model::UA;
    spec.m = 1;
    spec.n_grid = {30, 100};
    spec.trials = 4000;
    spec.seed = 21;
    spec.statistic.kind = StatisticKind::LeafFraction;
    ExperimentResult r = leaf_fraction(spec, Execution::Serial);
    REQUIRE(r.points.size() == 2);
    for (const PointEstimate& p : r.points) {
        // E L_n = E L_{n-1} (1 - 1/(n-1)) + 1 from L_2 = 2
        double l = 2.0;
        for (long t = 3; t <= p.n; ++t) l = l * (1.0 - 1.0 / (t - 1)) + 1.0;
        CHECK(p.statistic == "leaf-fraction");
        CHECK(std::fabs(p.estimate - l / p.n) <= 4.0 * se_of(p));
    }
}

TEST_CASE("windowed rows report both the hit rate and the mean") {
    ExperimentSpec spec;
    spec.model = Model::UA;
    spec.m = 1;
    spec.n_grid = {300, 900};
    spec.trials = 500;
    spec.seed = 13;
    spec.statistic.kind = StatisticKind::Windowed;
    spec.statistic.pattern = "0 1 1";
    spec.statistic.window_base = 2;
    spec.statistic.window_width = 6;
    ExperimentResult r = pendant_probability_curve(spec, Execution::Serial);
    REQUIRE(r.points.size() == 4);
    for (size_t i = 0; i < r.points.size(); i += 2) {
        const PointEstimate& pos = r.points[i];
        const PointEstimate& mean = r.points[i + 1];
        CHECK(pos.statistic == "windowed-positive");
        CHECK(mean.statistic == "windowed-mean");
        CHECK(pos.n == mean.n);
        double exact = ua_windowed_expectation(2, 6, 3, pos.n).get_d();
        CHECK(std::fabs(mean.estimate - exact) <= 3.5 * se_of(mean));
        // counts are nonnegative, so the positive-rate is at most the mean
        CHECK(pos.estimate <= mean.estimate + 1e-12);
    }
}

TEST_CASE("csv output round trips through a parser") {
    ExperimentSpec spec = diamond_tail_spec({15, 30}, 6, 250, 41);
    ExperimentResult r = run_experiment(spec, Execution::Serial);
    std::ostringstream out;
    write_csv(out, r);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "n,statistic,estimate,ci_low,ci_high,trials,seed");
    size_t rows = 0;
    while (std::getline(in, line)) {
        auto f = split_csv(line);
        REQUIRE(f.size() == 7);
        CHECK(std::stol(f[0]) == r.points[rows].n);
        CHECK(f[1] == r.points[rows].statistic);
        double est = std::stod(f[2]), lo = std::stod(f[3]), hi = std::stod(f[4]);
        CHECK(lo <= est);
        CHECK(est <= hi);
        CHECK(lo >= 0.0);
        CHECK(hi <= 1.0);
        CHECK(std::stol(f[5]) == 250);
        CHECK(std::stoull(f[6]) == 41);
        ++rows;
    }
    CHECK(rows == r.points.size());
}

TEST_CASE("confidence intervals shrink like one over root trials") {
    ExperimentSpec small = diamond_tail_spec({60}, 8, 400, 17);
    ExperimentSpec big = diamond_tail_spec({60}, 8, 6400, 17);
    double w_small = se_of(run_experiment(small, Execution::Serial).points[0]);
    double w_big = se_of(run_experiment(big, Execution::Serial).points[0]);
    double ratio = w_small / w_big;  // expect about sqrt(16) = 4
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("config parsing fills documented defaults") {
    nlohmann::json j = {{"model", "ua"},
                        {"n_grid", {10, 20}},
                        {"statistic", {{"kind", "diamond-tail"}, {"k", 8}}}};
    ExperimentSpec spec = parse_config_json(j);
    CHECK(spec.model == Model::UA);
    CHECK(spec.m == 2);
    CHECK(spec.trials == 10000);
    CHECK(spec.seed == 0);
    CHECK(spec.convention == PaConvention::Normalized);
    CHECK(spec.statistic.threshold_time == 8);

    nlohmann::json mean = {{"model", "ua"},
                           {"n_grid", {10, 20}},
                           {"statistic", {{"kind", "diamond-mean"}}}};
    CHECK(parse_config_json(mean).trials == 100);

    nlohmann::json leaf = {{"model", "pa"},
                           {"n_grid", {50}},
                           {"statistic", {{"kind", "leaf-fraction"}}}};
    ExperimentSpec ls = parse_config_json(leaf);
    CHECK(ls.m == 1);
    CHECK(ls.model == Model::PA);

    nlohmann::json clique = {{"model", "ua"},
                             {"n_grid", {30}},
                             {"statistic", {{"kind", "clique-tail"}, {"k", 8}}}};
    CHECK(parse_config_json(clique).m == 3);

    nlohmann::json pend = {{"model", "ua"},
                           {"n_grid", {40}},
                           {"statistic", {{"kind", "pendant"}, {"pattern", "0 1"}}}};
    ExperimentSpec ps = parse_config_json(pend);
    CHECK(ps.statistic.pattern == "0 1");
    CHECK(ps.trials == 10000);
}

TEST_CASE("seed comes from the environment only when absent from the config") {
    nlohmann::json j = {{"model", "ua"},
                        {"n_grid", {10}},
                        {"statistic", {{"kind", "diamond-mean"}}}};
    setenv("RRG_SEED", "424242", 1);
    CHECK(parse_config_json(j).seed == 424242ULL);
    nlohmann::json explicit_seed = j;
    explicit_seed["seed"] = 7;
    CHECK(parse_config_json(explicit_seed).seed == 7ULL);
    setenv("RRG_SEED", "not-a-number", 1);
    CHECK_THROWS_AS(parse_config_json(j), std::invalid_argument);
    CHECK(parse_config_json(explicit_seed).seed == 7ULL);  // env never consulted
    unsetenv("RRG_SEED");
    CHECK(parse_config_json(j).seed == 0ULL);
}

TEST_CASE("config validation refuses contradictory requests") {
    auto base = []() {
        nlohmann::json j = {{"model", "ua"},
                            {"n_grid", {10, 20}},
                            {"statistic", {{"kind", "diamond-tail"}, {"k", 8}}}};
        return j;
    };

    nlohmann::json unknown = base();
    unknown["typo_field"] = 1;
    try {
        parse_config_json(unknown);
        FAIL("unknown key accepted");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("config.typo_field") != std::string::npos);
    }
    nlohmann::json inner = base();
    inner["statistic"]["bogus"] = 1;
    try {
        parse_config_json(inner);
        FAIL("unknown statistic key accepted");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("config.statistic.bogus") != std::string::npos);
    }

    nlohmann::json bad_kind = base();
    bad_kind["statistic"]["kind"] = "no-such-statistic";
    CHECK_THROWS_AS(parse_config_json(bad_kind), std::invalid_argument);

    nlohmann::json decreasing = base();
    decreasing["n_grid"] = {20, 10};
    CHECK_THROWS_AS(parse_config_json(decreasing), std::invalid_argument);

    nlohmann::json zero_trials = base();
    zero_trials["trials"] = 0;
    CHECK_THROWS_AS(parse_config_json(zero_trials), std::invalid_argument);

    nlohmann::json pa_diamond = base();
    pa_diamond["model"] = "pa";
    CHECK_THROWS_AS(parse_config_json(pa_diamond), std::invalid_argument);

    // degree-weighted pattern statistics only exist under the normalized
    // convention (the other convention is not almost-surely a tree)
    nlohmann::json pd_pattern = {{"model", "pa"},
                                 {"convention", "paper-denominator"},
                                 {"n_grid", {40}},
                                 {"statistic", {{"kind", "pendant"}, {"pattern", "0 1"}}}};
    CHECK_THROWS_AS(parse_config_json(pd_pattern), std::invalid_argument);

    nlohmann::json pa_windowed = {{"model", "pa"},
                                  {"n_grid", {40}},
                                  {"statistic", {{"kind", "windowed"}, {"pattern", "0 1"}}}};
    CHECK_THROWS_AS(parse_config_json(pa_windowed), std::invalid_argument);

    ExperimentSpec mismatched = diamond_tail_spec({10}, 6, 10, 1);
    CHECK_THROWS_AS(leaf_fraction(mismatched), std::invalid_argument);
    mismatched.statistic.kind = StatisticKind::LeafFraction;
    mismatched.m = 1;
    CHECK_THROWS_AS(estimate_tail_probability(mismatched), std::invalid_argument);
}

TEST_CASE("run manifests reload to the same spec") {
    for (const char* kind : {"diamond-tail", "windowed", "variance-scaling"}) {
        nlohmann::json j = {{"model", "ua"},
                            {"n_grid", {12, 24}},
                            {"trials", 64},
                            {"seed", 9},
                            {"statistic", nlohmann::json{{"kind", kind}}}};
        if (std::string(kind) == "diamond-tail") j["statistic"]["k"] = 6;
        if (std::string(kind) != "diamond-tail") j["statistic"]["pattern"] = "0 1";
        ExperimentSpec spec = parse_config_json(j);
        ExperimentSpec again = parse_config_json(manifest_json(spec));
        CHECK(again.model == spec.model);
        CHECK(again.m == spec.m);
        CHECK(again.convention == spec.convention);
        CHECK(again.n_grid == spec.n_grid);
        CHECK(again.trials == spec.trials);
        CHECK(again.seed == spec.seed);
        CHECK(again.statistic.kind == spec.statistic.kind);
        CHECK(again.statistic.threshold_time == spec.statistic.threshold_time);
        CHECK(again.statistic.pattern == spec.statistic.pattern);
        CHECK(again.statistic.window_base == spec.statistic.window_base);
        CHECK(again.statistic.window_width == spec.statistic.window_width);
        CHECK(again.output == spec.output);
        CHECK(manifest_json(again) == manifest_json(spec));
    }
}

TEST_CASE("variance scaling reports the three documented rows") {
    ExperimentSpec spec;
    spec.model = Model::PA;
    spec.m = 1;
    spec.n_grid = {200, 600};
    spec.trials = 60;
    spec.seed = 2;
    spec.statistic.kind = StatisticKind::VarianceScaling;
    spec.statistic.pattern = "0";
    ExperimentResult r = variance_scaling(spec, Execution::Serial);
    REQUIRE(r.points.size() == 6);
    for (size_t i = 0; i < r.points.size(); i += 3) {
        CHECK(r.points[i].statistic == "var-over-n");
        CHECK(r.points[i + 1].statistic == "var-over-mean2");
        CHECK(r.points[i + 2].statistic == "p-zero");
        // every tree has a leaf, and leaf counts concentrate
        CHECK(r.points[i + 2].estimate == 0.0);
        CHECK(r.points[i].estimate > 0.0);
        CHECK(r.points[i + 1].estimate < 0.1);
    }
    // relative fluctuation dies as n grows
    CHECK(r.points[4].estimate < r.points[1].estimate);
}
