#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace rrg {

enum class Model { UA, PA, External };

// How preferential attachment normalizes its degree weights; see README.
enum class PaConvention { Normalized, PaperDenominator };

// Simple undirected graph on vertices 1..n. For generated graphs the label
// order is the arrival order. Treated as an immutable value once built.
struct LabeledGraph {
    int n = 0;
    Model model_tag = Model::External;
    int m = 0;  // attachment parameter when generated, 0 otherwise
    std::vector<std::vector<int>> adj;  // 1-based; adj[0] unused

    static LabeledGraph empty(int n, Model tag = Model::External, int m = 0);

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    long long edge_count() const;
    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);  // rejects loops, duplicates, out-of-range
};

bool is_tree(const LabeledGraph& g);
bool is_connected(const LabeledGraph& g);
int leaf_count(const LabeledGraph& g);

// Shared text format: header "n e", then e lines "u v" with 1 <= u < v <= n.
// write_graph emits edges in lexicographic order so output is deterministic.
LabeledGraph read_graph(std::istream& in);
LabeledGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const LabeledGraph& g);

// ---- rooted trees and patterns ------------------------------------------

// Rooted tree on vertices 1..order given by a parent array; parent[root]==0.
struct RootedTree {
    int order = 0;
    int root = 1;
    std::vector<int> parent;  // 1-based; parent[0] unused
};

// Build from a 1-based parent vector (parent[root] == 0); validates that the
// result is a tree. The root may be any vertex.
RootedTree tree_from_parents(const std::vector<int>& parent);

// Pattern text format: one line "p_1 p_2 ... p_v" with p_1 = 0 and p_s < s,
// i.e. vertices are listed in an order where every parent precedes its child
// and the root comes first.
RootedTree parse_pattern_line(const std::string& line);
std::string pattern_line(const RootedTree& t);
RootedTree read_pattern_file(const std::string& path);

// Canonical form of a rooted tree: "(" + concatenation of the children's
// codes sorted as strings + ")". Equal codes <=> rooted-isomorphic.
using CanonicalCode = std::string;
CanonicalCode canonical_code(const RootedTree& t);
bool rooted_isomorphic(const RootedTree& a, const RootedTree& b);

// A pattern prepared for the attachment formulas: slots 1..v enumerate the
// vertices so that every slot attaches to an earlier slot. weight[s] is the
// degree of parent_slot[s]'s vertex within the first s-1 slots at the moment
// slot s attaches (root counted with its pending edge), and weight_product
// is the product of the weights; it does not depend on the slot order chosen.
struct RootedPattern {
    RootedTree tree;
    std::vector<int> parent_slot;  // [2..v], values in [1..s-1]
    std::vector<int> weight;       // [2..v]
    mpz_class weight_product;
    CanonicalCode code;

    int order() const { return tree.order; }
};

RootedPattern make_pattern(const RootedTree& t);

}  // namespace rrg
