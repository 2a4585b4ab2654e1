#include "rrg/treegen.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "rrg/errors.hpp"

namespace rrg {

void validate(const GrowthConfig& cfg) {
    if (cfg.model == Model::External)
        throw std::invalid_argument("growth: model must be ua or pa");
    if (cfg.m < 1) throw std::invalid_argument("growth: m must be >= 1");
    if (cfg.n < cfg.m + 1)
        throw std::invalid_argument("growth: n must be >= m+1 (the seed clique)");
}

GrowthProcess::GrowthProcess(const GrowthConfig& cfg) : cfg_(cfg) {
    validate(cfg);
    graph_ = LabeledGraph::empty(cfg.n, cfg.model, cfg.m);
    graph_.n = cfg.m + 1;  // adjacency is preallocated to the target size
    for (int u = 1; u <= cfg.m + 1; ++u)
        for (int v = u + 1; v <= cfg.m + 1; ++v) graph_.add_edge(u, v);
    if (cfg.model == Model::PA) {
        for (int u = 1; u <= cfg.m + 1; ++u)
            for (int v = u + 1; v <= cfg.m + 1; ++v) {
                endpoint_bag_.push_back(u);
                endpoint_bag_.push_back(v);
            }
    }
}

void GrowthProcess::step(Rng& rng) {
    const int t = graph_.n;
    if (t >= cfg_.n) return;
    const int w = t + 1;
    last_targets_.clear();

    if (cfg_.model == Model::UA) {
        // uniform m-subset of [1..t] by rejection; m is tiny in practice
        while (static_cast<int>(last_targets_.size()) < cfg_.m) {
            int c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(t)));
            if (std::find(last_targets_.begin(), last_targets_.end(), c) ==
                last_targets_.end())
                last_targets_.push_back(c);
        }
        std::sort(last_targets_.begin(), last_targets_.end());
        graph_.n = w;
        for (int c : last_targets_) graph_.add_edge(c, w);
        return;
    }

    // PA: m degree-weighted draws against the pre-step endpoint bag
    std::vector<int> draws;
    draws.reserve(static_cast<size_t>(cfg_.m));
    const std::uint64_t bag = endpoint_bag_.size();
    for (int d = 0; d < cfg_.m; ++d) {
        std::uint64_t r;
        if (cfg_.convention == PaConvention::Normalized) {
            r = rng.below(bag);
        } else {
            r = rng.below(2ULL * static_cast<std::uint64_t>(cfg_.m) *
                          static_cast<std::uint64_t>(t));
        }
        draws.push_back(r < bag ? endpoint_bag_[static_cast<size_t>(r)] : w);
    }
    graph_.n = w;
    for (int c : draws) {
        endpoint_bag_.push_back(c);
        endpoint_bag_.push_back(w);
        if (c != w && !graph_.has_edge(c, w)) graph_.add_edge(c, w);
    }
    std::sort(draws.begin(), draws.end());
    draws.erase(std::unique(draws.begin(), draws.end()), draws.end());
    last_targets_ = std::move(draws);
}

static LabeledGraph run_to_end(const GrowthConfig& cfg) {
    GrowthProcess proc(cfg);
    Rng rng = trial_rng(cfg.seed, 0);
    while (proc.size() < proc.target()) proc.step(rng);
    return proc.graph();
}

LabeledGraph generate_ua(const GrowthConfig& cfg) {
    if (cfg.model != Model::UA) throw std::invalid_argument("generate_ua: model mismatch");
    return run_to_end(cfg);
}

LabeledGraph generate_pa(const GrowthConfig& cfg) {
    if (cfg.model != Model::PA) throw std::invalid_argument("generate_pa: model mismatch");
    return run_to_end(cfg);
}

LabeledGraph generate(const GrowthConfig& cfg) {
    validate(cfg);
    return run_to_end(cfg);
}

// ---- exhaustive enumeration ------------------------------------------------

static unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
    unsigned long long r;
    return __builtin_mul_overflow(a, b, &r) ? ULLONG_MAX : r;
}

// multisets of size m over k symbols: C(k+m-1, m)
static unsigned long long multiset_count(unsigned long long k, int m) {
    unsigned long long num = 1, den = 1;
    for (int i = 0; i < m; ++i) {
        num = sat_mul(num, k + static_cast<unsigned long long>(i));
        den *= static_cast<unsigned long long>(i) + 1;
    }
    return num == ULLONG_MAX ? ULLONG_MAX : num / den;
}

unsigned long long count_histories(int n, int m, Model model, PaConvention conv) {
    GrowthConfig probe{model, n, m, conv, 0};
    validate(probe);
    unsigned long long total = 1;
    for (int t = m + 1; t < n; ++t) {
        unsigned long long step;
        if (model == Model::UA) {
            step = 1;
            for (int i = 0; i < m; ++i)
                step = sat_mul(step, static_cast<unsigned long long>(t - i));
            for (int i = 2; i <= m && step != ULLONG_MAX; ++i)
                step /= static_cast<unsigned long long>(i);
        } else {
            unsigned long long symbols = static_cast<unsigned long long>(t) +
                                         (conv == PaConvention::PaperDenominator ? 1 : 0);
            step = multiset_count(symbols, m);
        }
        total = sat_mul(total, step);
    }
    return total;
}

namespace {

struct Enumerator {
    int n, m;
    Model model;
    PaConvention conv;
    const HistoryVisitor* visit;
    LabeledGraph graph;
    std::vector<int> bag;
    GrowthHistory history;

    void run() {
        graph = LabeledGraph::empty(n, model, m);
        graph.n = m + 1;
        for (int u = 1; u <= m + 1; ++u)
            for (int v = u + 1; v <= m + 1; ++v) {
                graph.add_edge(u, v);
                if (model == Model::PA) {
                    bag.push_back(u);
                    bag.push_back(v);
                }
            }
        step(Rational(1));
    }

    void undo_edges(int w, const std::vector<int>& added) {
        for (int c : added) {
            graph.adj[c].pop_back();
            graph.adj[w].pop_back();
        }
    }

    void step(const Rational& prob) {
        const int t = graph.n;
        if (t == n) {
            (*visit)(history, graph, prob);
            return;
        }
        const int w = t + 1;
        if (model == Model::UA) {
            std::vector<int> pick(static_cast<size_t>(m));
            Rational p = prob / binom(t, m);
            subsets(pick, 0, 1, t, w, p);
        } else {
            std::vector<int> counts;  // draw counts per symbol, symbols = 1..t then loop
            multisets(counts, 1, m, w, prob);
        }
    }

    // all ascending m-subsets of [lo..t] into pick[idx..]
    void subsets(std::vector<int>& pick, size_t idx, int lo, int t, int w, const Rational& p) {
        if (idx == pick.size()) {
            graph.n = w;
            for (int c : pick) graph.add_edge(c, w);
            history.choices.push_back(pick);
            step(p);
            history.choices.pop_back();
            undo_edges(w, pick);
            graph.n = w - 1;
            return;
        }
        for (int c = lo; c <= t - (static_cast<int>(pick.size() - idx) - 1); ++c) {
            pick[idx] = c;
            subsets(pick, idx + 1, c + 1, t, w, p);
        }
    }

    // PA: distribute m draws over symbols 1..t (reals) and, under the paper
    // denominator, the loop symbol; multiset probability carries the
    // multinomial coefficient.
    void multisets(std::vector<int>& counts, int symbol, int left, int w, const Rational& prob) {
        const int t = w - 1;
        const bool loops = conv == PaConvention::PaperDenominator;
        if (symbol > t + (loops ? 1 : 0)) {
            if (left != 0) return;
            apply(counts, w, prob);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            counts.push_back(k);
            multisets(counts, symbol + 1, left - k, w, prob);
            counts.pop_back();
        }
    }

    void apply(const std::vector<int>& counts, int w, const Rational& prob) {
        const int t = w - 1;
        const bool loops = conv == PaConvention::PaperDenominator;
        const unsigned long long denom =
            loops ? 2ULL * static_cast<unsigned long long>(m) * static_cast<unsigned long long>(t)
                  : static_cast<unsigned long long>(bag.size());

        // multiplicity of each real symbol in the bag
        std::vector<long long> mult(static_cast<size_t>(t) + 1, 0);
        for (int e : bag) ++mult[static_cast<size_t>(e)];
        long long bag_size = static_cast<long long>(bag.size());

        Rational p = prob * factorial(static_cast<unsigned long>(m));
        std::vector<int> chosen;
        for (int s = 0; s < static_cast<int>(counts.size()); ++s) {
            int k = counts[static_cast<size_t>(s)];
            if (k == 0) continue;
            const bool is_loop = s >= t;  // counts index t is the loop symbol
            long long weight = is_loop ? static_cast<long long>(denom) - bag_size
                                       : mult[static_cast<size_t>(s) + 1];
            if (weight <= 0) return;  // unreachable multiset (e.g. no loop mass)
            Rational pw = make_rational(BigInt(static_cast<long>(weight)),
                                        BigInt(static_cast<unsigned long>(denom)));
            for (int i = 0; i < k; ++i) {
                p *= pw;
                chosen.push_back(is_loop ? w : s + 1);
            }
            p /= factorial(static_cast<unsigned long>(k));
        }

        graph.n = w;
        std::vector<int> added;
        for (int c : chosen) {
            bag.push_back(c);
            bag.push_back(w);
            if (c != w && !graph.has_edge(c, w)) {
                graph.add_edge(c, w);  // a repeated draw adds the edge once
                added.push_back(c);
            }
        }
        history.choices.push_back(chosen);
        step(p);
        history.choices.pop_back();
        undo_edges(w, added);
        bag.resize(bag.size() - 2 * chosen.size());
        graph.n = w - 1;
    }
};

}  // namespace

void enumerate_histories(int n, int m, Model model, PaConvention conv,
                         unsigned long long max_histories, const HistoryVisitor& visit) {
    const unsigned long long total = count_histories(n, m, model, conv);
    if (total > max_histories)
        throw BudgetExceeded("enumerate_histories: " + std::to_string(total) +
                                 " histories exceed budget " + std::to_string(max_histories),
                             total, max_histories);
    Enumerator e;
    e.n = n;
    e.m = m;
    e.model = model;
    e.conv = conv;
    e.visit = &visit;
    e.run();
}

}  // namespace rrg
