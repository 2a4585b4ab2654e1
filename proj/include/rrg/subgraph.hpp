#pragma once

#include <string>

#include "rrg/graph.hpp"

namespace rrg {

struct SubgraphCount {
    long long value = 0;
    std::string statistic;  // "diamond" or "clique-k"
};

// Number of 4-vertex subsets inducing exactly five edges (a 4-cycle with one
// chord). Counted per hinge edge: for an edge {a,b}, every pair of common
// neighbors of a and b that are themselves non-adjacent closes one diamond,
// and each diamond is found exactly once (its unique chord is the hinge).
SubgraphCount count_diamonds(const LabeledGraph& g);

// Number of complete subgraphs on `size` vertices, size >= 2.
SubgraphCount count_cliques(const LabeledGraph& g, int size);

// Diamonds created by attaching a new vertex to the pair {a,b}: the number
// of common neighbors of a and b if a ~ b, else 0.
long long diamond_delta(const LabeledGraph& g, int a, int b);

// Deterministic ceilings for the growth processes with the matching m:
// the most diamonds any m=2 history can hold at k vertices, C(k-2, 2), and
// the most (m+1)-cliques any m-history can hold at k vertices, k - m.
long long g_diamond(int k);
long long g_clique(int k, int m);

}  // namespace rrg
