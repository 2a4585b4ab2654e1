#include "rrg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rrg {

LabeledGraph LabeledGraph::empty(int n, Model tag, int m) {
    if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
    LabeledGraph g;
    g.n = n;
    g.model_tag = tag;
    g.m = m;
    g.adj.assign(static_cast<size_t>(n) + 1, {});
    return g;
}

long long LabeledGraph::edge_count() const {
    long long twice = 0;
    for (int v = 1; v <= n; ++v) twice += degree(v);
    return twice / 2;
}

bool LabeledGraph::has_edge(int u, int v) const {
    if (u < 1 || u > n || v < 1 || v > n) return false;
    const auto& nu = adj[u];
    return std::find(nu.begin(), nu.end(), v) != nu.end();
}

void LabeledGraph::add_edge(int u, int v) {
    if (u < 1 || u > n || v < 1 || v > n)
        throw std::invalid_argument("add_edge: endpoint out of range");
    if (u == v) throw std::invalid_argument("add_edge: loop rejected");
    if (has_edge(u, v)) throw std::invalid_argument("add_edge: duplicate edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
}

bool is_connected(const LabeledGraph& g) {
    std::vector<char> seen(static_cast<size_t>(g.n) + 1, 0);
    std::queue<int> q;
    q.push(1);
    seen[1] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == g.n;
}

bool is_tree(const LabeledGraph& g) {
    return g.edge_count() == g.n - 1 && is_connected(g);
}

int leaf_count(const LabeledGraph& g) {
    int c = 0;
    for (int v = 1; v <= g.n; ++v)
        if (g.degree(v) == 1) ++c;
    return c;
}

LabeledGraph read_graph(std::istream& in) {
    int n = 0;
    long long e = -1;
    if (!(in >> n >> e)) throw std::invalid_argument("graph: bad header, expected 'n e'");
    if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
    if (e < 0) throw std::invalid_argument("graph: negative edge count");
    LabeledGraph g = LabeledGraph::empty(n);
    for (long long i = 0; i < e; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) {
            std::ostringstream msg;
            msg << "graph: expected " << e << " edges, failed reading edge " << (i + 1);
            throw std::invalid_argument(msg.str());
        }
        if (u >= v) throw std::invalid_argument("graph: edges must be written 'u v' with u < v");
        g.add_edge(u, v);
    }
    return g;
}

LabeledGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const LabeledGraph& g) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(g.edge_count()));
    for (int u = 1; u <= g.n; ++u)
        for (int v : g.adj[u])
            if (u < v) edges.emplace_back(u, v);
    std::sort(edges.begin(), edges.end());
    out << g.n << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

// ---- rooted trees ---------------------------------------------------------

RootedTree tree_from_parents(const std::vector<int>& parent) {
    if (parent.size() < 2) throw std::invalid_argument("tree: empty parent array");
    const int order = static_cast<int>(parent.size()) - 1;
    int root = 0;
    for (int s = 1; s <= order; ++s) {
        if (parent[s] == 0) {
            if (root != 0) throw std::invalid_argument("tree: two roots");
            root = s;
        } else if (parent[s] < 1 || parent[s] > order || parent[s] == s) {
            throw std::invalid_argument("tree: bad parent value");
        }
    }
    if (root == 0) throw std::invalid_argument("tree: no root");
    // every vertex must reach the root through the parent chain
    std::vector<int> state(static_cast<size_t>(order) + 1, 0);  // 0 new, 1 on path, 2 done
    state[root] = 2;
    for (int s = 1; s <= order; ++s) {
        int x = s;
        std::vector<int> path;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = parent[x];
        }
        if (state[x] == 1) throw std::invalid_argument("tree: parent array has a cycle");
        for (int y : path) state[y] = 2;
    }
    RootedTree t;
    t.order = order;
    t.root = root;
    t.parent = parent;
    return t;
}

RootedTree parse_pattern_line(const std::string& line) {
    std::istringstream in(line);
    std::vector<int> parent{0};
    int p = 0;
    while (in >> p) parent.push_back(p);
    std::string leftover;
    if (!in.eof() && in.fail()) {
        in.clear();
        in >> leftover;
        throw std::invalid_argument("pattern: non-integer token '" + leftover + "'");
    }
    const int v = static_cast<int>(parent.size()) - 1;
    if (v < 1) throw std::invalid_argument("pattern: empty line");
    if (parent[1] != 0) throw std::invalid_argument("pattern: first entry must be 0 (the root)");
    for (int s = 2; s <= v; ++s)
        if (parent[s] < 1 || parent[s] >= s)
            throw std::invalid_argument("pattern: entry " + std::to_string(s) +
                                        " must name an earlier vertex");
    return tree_from_parents(parent);
}

static std::vector<std::vector<int>> children_lists(const RootedTree& t) {
    std::vector<std::vector<int>> kids(static_cast<size_t>(t.order) + 1);
    for (int s = 1; s <= t.order; ++s)
        if (s != t.root) kids[t.parent[s]].push_back(s);
    for (auto& k : kids) std::sort(k.begin(), k.end());
    return kids;
}

static bool in_arrival_order(const RootedTree& t) {
    if (t.root != 1) return false;
    for (int s = 2; s <= t.order; ++s)
        if (t.parent[s] >= s) return false;
    return true;
}

// Vertices listed root-first with every parent before its child: the tree's
// own order when it already has that property, else a breadth-first order.
static std::vector<int> slot_order(const RootedTree& t) {
    std::vector<int> slots;
    slots.reserve(static_cast<size_t>(t.order));
    if (in_arrival_order(t)) {
        for (int s = 1; s <= t.order; ++s) slots.push_back(s);
        return slots;
    }
    auto kids = children_lists(t);
    std::queue<int> q;
    q.push(t.root);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        slots.push_back(x);
        for (int c : kids[x]) q.push(c);
    }
    return slots;
}

std::string pattern_line(const RootedTree& t) {
    auto slots = slot_order(t);
    std::vector<int> slot_of(static_cast<size_t>(t.order) + 1, 0);
    for (int s = 0; s < t.order; ++s) slot_of[slots[s]] = s + 1;
    std::ostringstream out;
    for (int s = 0; s < t.order; ++s) {
        if (s) out << ' ';
        int x = slots[s];
        out << (x == t.root ? 0 : slot_of[t.parent[x]]);
    }
    return out.str();
}

RootedTree read_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pattern file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return parse_pattern_line(line);
    }
    throw std::invalid_argument("pattern file is empty: " + path);
}

CanonicalCode canonical_code(const RootedTree& t) {
    auto kids = children_lists(t);
    std::function<std::string(int)> code = [&](int x) {
        std::vector<std::string> parts;
        parts.reserve(kids[x].size());
        for (int c : kids[x]) parts.push_back(code(c));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (const auto& p : parts) s += p;
        s += ")";
        return s;
    };
    return code(t.root);
}

bool rooted_isomorphic(const RootedTree& a, const RootedTree& b) {
    return a.order == b.order && canonical_code(a) == canonical_code(b);
}

RootedPattern make_pattern(const RootedTree& t) {
    RootedPattern p;
    p.tree = t;
    p.code = canonical_code(t);
    const int v = t.order;
    auto slots = slot_order(t);
    std::vector<int> slot_of(static_cast<size_t>(v) + 1, 0);
    for (int s = 0; s < v; ++s) slot_of[slots[s]] = s + 1;
    auto kids = children_lists(t);

    p.parent_slot.assign(static_cast<size_t>(v) + 1, 0);
    p.weight.assign(static_cast<size_t>(v) + 1, 0);
    p.weight_product = 1;
    for (int s = 2; s <= v; ++s) {
        const int x = slots[s - 1];
        const int px = t.parent[x];
        p.parent_slot[s] = slot_of[px];
        int placed_deg = (px == t.root) ? 1 : 0;  // root's pending attachment edge
        if (px != t.root && slot_of[t.parent[px]] < s) ++placed_deg;
        for (int c : kids[px])
            if (slot_of[c] < s) ++placed_deg;
        p.weight[s] = placed_deg;
        p.weight_product *= placed_deg;
    }
    return p;
}

}  // namespace rrg
