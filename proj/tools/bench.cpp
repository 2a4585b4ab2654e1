// Serial-vs-parallel timing for the two parallel code paths: experiment
// trials and the clique-expectation tuple sum. Verifies that both paths
// return identical results while timing them.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "rrg/errors.hpp"
#include "rrg/exactprob.hpp"
#include "rrg/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace rrg;

double seconds(const std::function<void()>& work) {
    const auto t0 = std::chrono::steady_clock::now();
    work();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool equal) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   identical %s\n", name,
                serial, parallel, parallel > 0 ? serial / parallel : 0.0,
                equal ? "yes" : "NO");
}

bool same_points(const ExperimentResult& a, const ExperimentResult& b) {
    if (a.points.size() != b.points.size()) return false;
    for (size_t i = 0; i < a.points.size(); ++i)
        if (a.points[i].n != b.points[i].n || a.points[i].statistic != b.points[i].statistic ||
            a.points[i].estimate != b.points[i].estimate ||
            a.points[i].ci_low != b.points[i].ci_low || a.points[i].ci_high != b.points[i].ci_high)
            return false;
    return true;
}

void bench_experiment(const char* name, const ExperimentSpec& spec) {
    ExperimentResult rs, rp;
    const double ts = seconds([&] { rs = run_experiment(spec, Execution::Serial); });
    const double tp = seconds([&] { rp = run_experiment(spec, Execution::Parallel); });
    report(name, ts, tp, same_points(rs, rp));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timing harness: serial reference vs OpenMP"};
    long trials_tail = 4000, trials_leaf = 40;
    long n_tail = 800, n_leaf = 100000, n_clique = 60;
    app.add_option("--trials-tail", trials_tail, "trials for the diamond-tail run");
    app.add_option("--trials-leaf", trials_leaf, "trials for the pa leaf run");
    app.add_option("--n-tail", n_tail, "largest grid point of the tail run");
    app.add_option("--n-leaf", n_leaf, "horizon of the pa leaf run");
    app.add_option("--n-clique", n_clique, "horizon of the clique expectation");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled; both columns run the same code\n");
#endif

    {
        ExperimentSpec spec;
        spec.model = Model::UA;
        spec.m = 2;
        spec.n_grid = {n_tail / 4, n_tail / 2, n_tail};
        spec.trials = trials_tail;
        spec.seed = 1;
        spec.statistic.kind = StatisticKind::DiamondTail;
        spec.statistic.threshold_time = 8;
        bench_experiment("ua diamond tail", spec);
    }
    {
        ExperimentSpec spec;
        spec.model = Model::PA;
        spec.m = 1;
        spec.n_grid = {n_leaf};
        spec.trials = trials_leaf;
        spec.seed = 1;
        spec.statistic.kind = StatisticKind::LeafFraction;
        bench_experiment("pa leaf fraction", spec);
    }
    {
        Rational qs, qp;
        try {
            const double ts =
                seconds([&] { qs = ua_clique_expectation_serial(n_clique, 3); });
            const double tp = seconds([&] { qp = ua_clique_expectation(n_clique, 3); });
            report("ua clique expectation", ts, tp, qs == qp);
        } catch (const BudgetExceeded& e) {
            std::fprintf(stderr, "ua clique expectation skipped: %s\n", e.what());
        }
    }
    return 0;
}
