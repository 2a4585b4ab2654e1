// Command-line entry point. Exit codes: 0 success (eval: sentence true),
// 2 usage / domain / parse errors, 3 eval false, 4 budget refusal.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrg/errors.hpp"
#include "rrg/exactprob.hpp"
#include "rrg/experiment.hpp"
#include "rrg/graph.hpp"
#include "rrg/logic.hpp"
#include "rrg/pendant.hpp"
#include "rrg/subgraph.hpp"
#include "rrg/treegen.hpp"

namespace {

using namespace rrg;

std::uint64_t env_seed() {
    const char* env = std::getenv("RRG_SEED");
    if (!env || !*env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw std::invalid_argument("RRG_SEED is not an unsigned integer");
    }
}

Model parse_model(const std::string& s) {
    if (s == "ua") return Model::UA;
    if (s == "pa") return Model::PA;
    throw std::invalid_argument("model must be 'ua' or 'pa'");
}

PaConvention parse_convention(const std::string& s) {
    if (s == "normalized") return PaConvention::Normalized;
    if (s == "paper-denominator") return PaConvention::PaperDenominator;
    throw std::invalid_argument("convention must be 'normalized' or 'paper-denominator'");
}

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad tuple entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty tuple");
    return out;
}

LabeledGraph load_graph(const std::string& path) {
    if (path == "-") return read_graph(std::cin);
    return read_graph_file(path);
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string model = "ua";
    int n = 2;
    int m = 1;
    std::string convention = "normalized";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool enumerate = false;
    unsigned long long max_histories = kDefaultMaxHistories;
};

int run_gen(const GenArgs& a) {
    GrowthConfig cfg;
    cfg.model = parse_model(a.model);
    cfg.n = a.n;
    cfg.m = a.m;
    cfg.convention = parse_convention(a.convention);
    cfg.seed = a.seed_set ? a.seed : env_seed();
    if (a.enumerate) {
        enumerate_histories(cfg.n, cfg.m, cfg.model, cfg.convention, a.max_histories,
                            [](const GrowthHistory&, const LabeledGraph& g, const Rational& p) {
                                std::cout << fraction_string(p) << '\t';
                                bool first = true;
                                for (int u = 1; u <= g.n; ++u)
                                    for (int v : g.adj[u])
                                        if (u < v) {
                                            if (!first) std::cout << ' ';
                                            std::cout << u << '-' << v;
                                            first = false;
                                        }
                                std::cout << '\n';
                            });
        return 0;
    }
    write_graph(std::cout, generate(cfg));
    return 0;
}

// ---- count / pendant ---------------------------------------------------------

int run_count(const std::string& statistic, int size, const std::string& graph_path) {
    LabeledGraph g = load_graph(graph_path);
    if (statistic == "diamonds")
        std::cout << count_diamonds(g).value << '\n';
    else if (statistic == "cliques")
        std::cout << count_cliques(g, size).value << '\n';
    else
        throw std::invalid_argument("statistic must be 'diamonds' or 'cliques'");
    return 0;
}

struct PendantArgs {
    std::string pattern_path;
    std::string graph_path = "-";
    bool has = false;
    bool windowed = false;
    int window_base = 0;
    int window_width = 0;
};

int run_pendant(const PendantArgs& a) {
    LabeledGraph g = load_graph(a.graph_path);
    RootedPattern pattern = make_pattern(read_pattern_file(a.pattern_path));
    if (a.windowed)
        std::cout << count_windowed(g, pattern, a.window_base, a.window_width).value << '\n';
    else if (a.has)
        std::cout << (has_pendant(g, pattern) ? "true" : "false") << '\n';
    else
        std::cout << count_pendants(g, pattern).value << '\n';
    return 0;
}

// ---- exact --------------------------------------------------------------------

struct ExactArgs {
    std::string formula;
    long n = 0;
    int m = 2;
    int order = 0;
    long third = 0, fourth = 0;
    std::string tuple, tuple2;
    int root_arrival = 0;
    int window_base = 0, window_width = 0;
    std::string eps, beta_upper;
    std::string statistic = "diamond";
    std::string pattern_path;
    unsigned long long max_tuples = kDefaultMaxTuples;
    bool serial = false;
    bool json = false;
};

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("exact: missing or bad flag: ") + what);
}

RootedPattern load_pattern(const ExactArgs& a) {
    require(!a.pattern_path.empty(), "--pattern");
    return make_pattern(read_pattern_file(a.pattern_path));
}

SlotTuple make_slot_tuple(const ExactArgs& a, bool need_second) {
    SlotTuple st;
    require(!a.tuple.empty(), "--tuple");
    st.indices = parse_tuple(a.tuple);
    if (need_second) {
        require(!a.tuple2.empty(), "--tuple2");
        st.second = parse_tuple(a.tuple2);
    }
    require(a.n > 0, "--n");
    st.n = a.n;
    return st;
}

void print_exact(const ExactArgs& a, const nlohmann::json& params, const Rational* q,
                 double decimal) {
    if (a.json) {
        nlohmann::json j;
        j["formula"] = a.formula;
        j["params"] = params;
        if (q) {
            j["rational"]["num"] = q->get_num().get_str();
            j["rational"]["den"] = q->get_den().get_str();
        }
        j["decimal"] = decimal;
        std::cout << j.dump() << '\n';
        return;
    }
    if (q)
        std::cout << fraction_string(*q) << " (" << decimal_string(decimal) << ")\n";
    else
        std::cout << decimal_string(decimal) << '\n';
}

int run_exact(const ExactArgs& a) {
    nlohmann::json params = nlohmann::json::object();
    const std::string& f = a.formula;

    auto emit = [&](const Rational& q) { print_exact(a, params, &q, q.get_d()); };

    if (f == "ua-diamond-term") {
        require(a.third > 0 && a.fourth > 0, "--third/--fourth");
        params["third"] = a.third;
        params["fourth"] = a.fourth;
        emit(ua_diamond_term(a.third, a.fourth));
    } else if (f == "ua-diamond-expectation") {
        require(a.n > 0, "--n");
        params["n"] = a.n;
        emit(ua_diamond_expectation(a.n));
    } else if (f == "ua-diamond-limit") {
        require(!a.eps.empty(), "--eps");
        params["eps"] = a.eps;
        LimitEstimate est = ua_diamond_limit(parse_rational(a.eps));
        if (a.json) {
            nlohmann::json j;
            j["formula"] = f;
            j["params"] = params;
            j["rational"]["num"] = est.value.get_num().get_str();
            j["rational"]["den"] = est.value.get_den().get_str();
            j["decimal"] = est.value.get_d();
            j["tail_bound"] = est.tail_bound.get_d();
            std::cout << j.dump() << '\n';
        } else {
            std::cout << fraction_string(est.value) << " (" << decimal_string(est.value.get_d())
                      << ") tail <= " << decimal_string(est.tail_bound.get_d()) << '\n';
        }
    } else if (f == "ua-clique-prob") {
        require(!a.tuple.empty(), "--tuple");
        params["tuple"] = a.tuple;
        params["m"] = a.m;
        emit(ua_clique_prob(parse_tuple(a.tuple), a.m));
    } else if (f == "ua-clique-expectation") {
        require(a.n > 0, "--n");
        params["n"] = a.n;
        params["m"] = a.m;
        emit(a.serial ? ua_clique_expectation_serial(a.n, a.m, a.max_tuples)
                      : ua_clique_expectation(a.n, a.m, a.max_tuples));
    } else if (f == "ua-clique-upper") {
        require(a.n > 0, "--n");
        params["n"] = a.n;
        params["m"] = a.m;
        emit(ua_clique_upper(a.n, a.m, a.max_tuples));
    } else if (f == "markov-threshold") {
        require(!a.beta_upper.empty() && !a.eps.empty(), "--beta-upper/--eps");
        params["beta_upper"] = a.beta_upper;
        params["eps"] = a.eps;
        params["statistic"] = a.statistic;
        params["m"] = a.m;
        TailStatistic stat;
        if (a.statistic == "diamond")
            stat = TailStatistic::Diamond;
        else if (a.statistic == "clique")
            stat = TailStatistic::Clique;
        else
            throw std::invalid_argument("exact: --statistic must be 'diamond' or 'clique'");
        long k = markov_threshold(parse_rational(a.beta_upper), parse_rational(a.eps), stat, a.m);
        Rational q(k);
        emit(q);
    } else if (f == "ua-pendant-product") {
        SlotTuple st = make_slot_tuple(a, false);
        params["tuple"] = a.tuple;
        params["n"] = a.n;
        emit(ua_pendant_prob_product(st));
    } else if (f == "ua-pendant-closed") {
        require(a.order > 0 && a.n > 0, "--order/--n");
        params["order"] = a.order;
        params["n"] = a.n;
        emit(ua_pendant_prob_closed(a.order, a.n));
    } else if (f == "ua-windowed-expectation") {
        require(a.window_base > 0 && a.window_width > 0 && a.order > 0 && a.n > 0,
                "--window-base/--window-width/--order/--n");
        params["window_base"] = a.window_base;
        params["window_width"] = a.window_width;
        params["order"] = a.order;
        params["n"] = a.n;
        emit(ua_windowed_expectation(a.window_base, a.window_width, a.order, a.n));
    } else if (f == "ua-windowed-limit") {
        require(a.window_width > 0 && a.order > 0, "--window-width/--order");
        params["window_width"] = a.window_width;
        params["order"] = a.order;
        emit(ua_windowed_limit(a.window_width, a.order));
    } else if (f == "ua-joint") {
        require(a.order > 0 && a.n > 0 && a.window_width > 0, "--order/--n/--window-width");
        params["order"] = a.order;
        params["n"] = a.n;
        params["window_width"] = a.window_width;
        emit(ua_joint_prob(a.order, a.n, a.window_width));
    } else if (f == "pa-pendant-product") {
        RootedPattern p = load_pattern(a);
        SlotTuple st = make_slot_tuple(a, false);
        params["pattern"] = a.pattern_path;
        params["tuple"] = a.tuple;
        params["n"] = a.n;
        emit(pa_pendant_prob_product(p, st));
    } else if (f == "pa-pendant-closed") {
        RootedPattern p = load_pattern(a);
        require(a.root_arrival > 0 && a.n > 0, "--root-arrival/--n");
        params["pattern"] = a.pattern_path;
        params["root_arrival"] = a.root_arrival;
        params["n"] = a.n;
        emit(pa_pendant_prob_closed(p, a.root_arrival, a.n));
    } else if (f == "pa-pendant-asymptotic") {
        RootedPattern p = load_pattern(a);
        require(a.root_arrival > 0 && a.n > 0, "--root-arrival/--n");
        params["pattern"] = a.pattern_path;
        params["root_arrival"] = a.root_arrival;
        params["n"] = a.n;
        print_exact(a, params, nullptr, pa_pendant_prob_asymptotic(p, a.root_arrival, a.n));
    } else if (f == "pa-expectation-exact") {
        RootedPattern p = load_pattern(a);
        require(a.n > 0, "--n");
        params["pattern"] = a.pattern_path;
        params["n"] = a.n;
        emit(pa_expectation_exact(p, a.n, a.max_tuples));
    } else if (f == "pa-expectation-asymptotic") {
        RootedPattern p = load_pattern(a);
        require(a.n > 0, "--n");
        params["pattern"] = a.pattern_path;
        params["n"] = a.n;
        print_exact(a, params, nullptr, pa_expectation_asymptotic(p, a.n));
    } else if (f == "pa-joint") {
        RootedPattern p = load_pattern(a);
        SlotTuple st = make_slot_tuple(a, true);
        params["pattern"] = a.pattern_path;
        params["tuple"] = a.tuple;
        params["tuple2"] = a.tuple2;
        params["n"] = a.n;
        emit(pa_joint_prob(p, st));
    } else if (f == "beta-three-halves") {
        require(a.order > 0, "--order");
        params["order"] = a.order;
        emit(beta_three_halves(a.order));
    } else {
        throw std::invalid_argument("exact: unknown formula '" + f + "'");
    }
    return 0;
}

// ---- eval ----------------------------------------------------------------------

struct EvalArgs {
    std::string sentence;
    std::string sentence_file;
    std::string builtin;
    std::string graph_path;
    unsigned long long max_assignments = kDefaultMaxAssignments;
};

Sentence eval_sentence(const EvalArgs& a) {
    int sources = !a.sentence.empty() + !a.sentence_file.empty() + !a.builtin.empty();
    if (sources != 1)
        throw std::invalid_argument(
            "eval: give exactly one of --sentence, --sentence-file, --builtin");
    if (!a.sentence.empty()) return parse_sentence(a.sentence);
    if (!a.sentence_file.empty()) {
        std::ifstream in(a.sentence_file);
        if (!in) throw std::invalid_argument("eval: cannot open " + a.sentence_file);
        std::ostringstream text;
        text << in.rdbuf();
        return parse_sentence(text.str());
    }
    if (a.builtin == "complete") return build_complete();
    if (a.builtin == "disconnected") return build_disconnected();
    if (a.builtin.rfind("diamonds:", 0) == 0) {
        int c = std::stoi(a.builtin.substr(9));
        return build_at_least_diamonds(c);
    }
    throw std::invalid_argument("eval: unknown builtin '" + a.builtin +
                                "' (complete, disconnected, diamonds:c)");
}

int run_eval(const EvalArgs& a) {
    if (a.graph_path.empty()) throw std::invalid_argument("eval: --graph is required");
    Sentence s = eval_sentence(a);
    LabeledGraph g = load_graph(a.graph_path);
    const bool truth = evaluate(s, g, a.max_assignments);
    std::cout << (truth ? "true" : "false") << '\n';
    return truth ? 0 : 3;
}

// ---- exp -----------------------------------------------------------------------

struct ExpArgs {
    std::string config_path;
    std::string out;
    std::string manifest;
    bool serial = false;
};

int run_exp(const ExpArgs& a) {
    ExperimentSpec spec = load_config(a.config_path);
    if (!a.out.empty()) spec.output = a.out;
    ExperimentResult result =
        run_experiment(spec, a.serial ? Execution::Serial : Execution::Parallel);
    for (const auto& p : result.points)
        std::cerr << "n=" << p.n << " statistic=" << p.statistic << " estimate=" << p.estimate
                  << " ci=[" << p.ci_low << "," << p.ci_high << "]\n";
    if (spec.output.empty()) {
        write_csv(std::cout, result);
    } else {
        std::ofstream out(spec.output);
        if (!out) throw std::invalid_argument("exp: cannot open output " + spec.output);
        write_csv(out, result);
    }
    if (!a.manifest.empty()) {
        std::ofstream out(a.manifest);
        if (!out) throw std::invalid_argument("exp: cannot open manifest " + a.manifest);
        out << manifest_json(spec).dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"recursive random graph toolkit: generation, counting, exact formulas, "
                 "logic evaluation, experiments"};
    app.require_subcommand(1);
    int rc = 0;

    GenArgs gen;
    auto* cgen = app.add_subcommand("gen", "grow a graph (or enumerate all histories)");
    cgen->add_option("--model", gen.model, "ua or pa")->required();
    cgen->add_option("--n", gen.n, "target vertex count")->required();
    cgen->add_option("--m", gen.m, "edges per arrival (default 1)");
    cgen->add_option("--convention", gen.convention, "pa weighting: normalized|paper-denominator");
    cgen->add_option("--seed", gen.seed, "rng seed (default RRG_SEED or 0)")
        ->each([&](const std::string&) { gen.seed_set = true; });
    cgen->add_flag("--enumerate", gen.enumerate,
                   "list every history as 'p/q<TAB>edge list' instead of sampling");
    cgen->add_option("--max-histories", gen.max_histories, "enumeration budget");
    cgen->callback([&] { rc = run_gen(gen); });

    std::string count_stat = "diamonds", count_graph = "-";
    int count_size = 4;
    auto* ccount = app.add_subcommand("count", "count diamonds or cliques in a graph");
    ccount->add_option("--statistic", count_stat, "diamonds or cliques");
    ccount->add_option("--size", count_size, "clique size (cliques only)");
    ccount->add_option("--graph", count_graph, "graph file, or - for stdin");
    ccount->callback([&] { rc = run_count(count_stat, count_size, count_graph); });

    PendantArgs pend;
    auto* cpend = app.add_subcommand("pendant", "count pendant copies of a rooted pattern");
    cpend->add_option("--pattern", pend.pattern_path, "pattern file (parent array line)")
        ->required();
    cpend->add_option("--graph", pend.graph_path, "tree file, or - for stdin");
    cpend->add_flag("--has", pend.has, "print true/false instead of the count");
    cpend->add_flag("--windowed", pend.windowed, "count window-rooted copies");
    cpend->add_option("--window-base", pend.window_base, "first window vertex (windowed)");
    cpend->add_option("--window-width", pend.window_width, "window size (windowed)");
    cpend->callback([&] { rc = run_pendant(pend); });

    ExactArgs ex;
    auto* cexact = app.add_subcommand("exact", "exact formula values as 'p/q (decimal)'");
    cexact->add_option("--formula", ex.formula, "formula name (see README)")->required();
    cexact->add_option("--n", ex.n, "horizon");
    cexact->add_option("--m", ex.m, "attachment parameter");
    cexact->add_option("--order", ex.order, "pattern order v");
    cexact->add_option("--third", ex.third, "third arrival position");
    cexact->add_option("--fourth", ex.fourth, "fourth arrival position");
    cexact->add_option("--tuple", ex.tuple, "ascending arrivals, comma separated");
    cexact->add_option("--tuple2", ex.tuple2, "second tuple for joint formulas");
    cexact->add_option("--root-arrival", ex.root_arrival, "arrival position of the copy root");
    cexact->add_option("--window-base", ex.window_base, "first window vertex");
    cexact->add_option("--window-width", ex.window_width, "window size");
    cexact->add_option("--eps", ex.eps, "tolerance (rational or decimal)");
    cexact->add_option("--beta-upper", ex.beta_upper, "expectation majorant (rational)");
    cexact->add_option("--statistic", ex.statistic, "diamond or clique (markov-threshold)");
    cexact->add_option("--pattern", ex.pattern_path, "pattern file");
    cexact->add_option("--max-tuples", ex.max_tuples, "tuple budget");
    cexact->add_flag("--serial", ex.serial, "use the serial reference path");
    cexact->add_flag("--json", ex.json, "emit {formula, params, rational, decimal}");
    cexact->callback([&] { rc = run_exact(ex); });

    EvalArgs ev;
    auto* ceval = app.add_subcommand("eval", "evaluate a sentence on a graph (exit 0/3)");
    ceval->add_option("--sentence", ev.sentence, "sentence text");
    ceval->add_option("--sentence-file", ev.sentence_file, "file with the sentence");
    ceval->add_option("--builtin", ev.builtin, "complete | disconnected | diamonds:c");
    ceval->add_option("--graph,--graph-file", ev.graph_path, "graph file, or - for stdin");
    ceval->add_option("--max-assignments", ev.max_assignments, "evaluation budget");
    ceval->callback([&] { rc = run_eval(ev); });

    ExpArgs exp;
    auto* cexp = app.add_subcommand("exp", "run a Monte Carlo experiment from a JSON config");
    cexp->add_option("--config", exp.config_path, "JSON config file")->required();
    cexp->add_option("--out", exp.out, "CSV path (default: config output or stdout)");
    cexp->add_option("--manifest", exp.manifest, "write the effective spec as JSON");
    cexp->add_flag("--serial", exp.serial, "single-threaded reference run");
    cexp->callback([&] { rc = run_exp(exp); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const rrg::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
