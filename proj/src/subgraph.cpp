#include "rrg/subgraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rrg {

SubgraphCount count_diamonds(const LabeledGraph& g) {
    // mark[] holds adjacency of the current hinge endpoint a
    std::vector<char> mark(static_cast<size_t>(g.n) + 1, 0);
    long long total = 0;
    for (int a = 1; a <= g.n; ++a) {
        for (int x : g.adj[a]) mark[x] = 1;
        for (int b : g.adj[a]) {
            if (b < a) continue;  // hinge {a,b} once
            std::vector<int> common;
            for (int c : g.adj[b])
                if (c != a && mark[c]) common.push_back(c);
            // non-adjacent pairs among the common neighbors
            long long pairs = static_cast<long long>(common.size()) *
                              (static_cast<long long>(common.size()) - 1) / 2;
            for (int c : common)
                for (int d : g.adj[c])
                    if (d > c && std::find(common.begin(), common.end(), d) != common.end())
                        --pairs;
            total += pairs;
        }
        for (int x : g.adj[a]) mark[x] = 0;
    }
    return {total, "diamond"};
}

static long long extend_clique(const LabeledGraph& g, std::vector<int>& cand, int depth) {
    if (depth == 0) return 1;
    if (static_cast<int>(cand.size()) < depth) return 0;
    long long total = 0;
    for (size_t i = 0; i < cand.size(); ++i) {
        int v = cand[i];
        std::vector<int> next;
        for (size_t j = i + 1; j < cand.size(); ++j)
            if (g.has_edge(v, cand[j])) next.push_back(cand[j]);
        total += extend_clique(g, next, depth - 1);
    }
    return total;
}

SubgraphCount count_cliques(const LabeledGraph& g, int size) {
    if (size < 2) throw std::invalid_argument("count_cliques: size must be >= 2");
    std::vector<int> all(static_cast<size_t>(g.n));
    for (int v = 1; v <= g.n; ++v) all[static_cast<size_t>(v) - 1] = v;
    long long total = extend_clique(g, all, size);
    return {total, "clique-" + std::to_string(size)};
}

long long diamond_delta(const LabeledGraph& g, int a, int b) {
    if (a < 1 || a > g.n || b < 1 || b > g.n || a == b)
        throw std::invalid_argument("diamond_delta: bad vertex pair");
    if (!g.has_edge(a, b)) return 0;
    long long common = 0;
    for (int c : g.adj[a])
        if (c != b && g.has_edge(b, c)) ++common;
    return common;
}

long long g_diamond(int k) {
    if (k <= 3) throw std::invalid_argument("g_diamond: needs k > 3");
    return static_cast<long long>(k - 2) * (k - 3) / 2;
}

long long g_clique(int k, int m) {
    if (m < 2) throw std::invalid_argument("g_clique: needs m >= 2");
    if (k <= m + 1) throw std::invalid_argument("g_clique: needs k > m+1");
    return k - m;
}

}  // namespace rrg
