#include "rrg/pendant.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rrg {

namespace {

// Rooted view of the tree from vertex 1: parent/order/subtree sizes.
struct Rooting {
    std::vector<int> parent;
    std::vector<int> order;  // preorder
    std::vector<long long> size;
};

Rooting root_at_one(const LabeledGraph& g) {
    Rooting r;
    r.parent.assign(static_cast<size_t>(g.n) + 1, 0);
    r.size.assign(static_cast<size_t>(g.n) + 1, 1);
    r.order.reserve(static_cast<size_t>(g.n));
    std::vector<int> stack{1};
    std::vector<char> seen(static_cast<size_t>(g.n) + 1, 0);
    seen[1] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        r.order.push_back(u);
        for (int w : g.adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                r.parent[w] = u;
                stack.push_back(w);
            }
    }
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it)
        if (*it != 1) r.size[r.parent[*it]] += r.size[*it];
    return r;
}

// Canonical code of the component of `start` in the tree with the edge
// {start, banned} removed; gives up (empty string) once the component grows
// past `cap` vertices.
CanonicalCode component_code(const LabeledGraph& g, int start, int banned, int cap) {
    std::vector<int> verts{start};
    std::vector<int> parent{0};  // indices into verts
    for (size_t i = 0; i < verts.size(); ++i) {
        int u = verts[i];
        for (int w : g.adj[u]) {
            if (i == 0 && w == banned) continue;
            if (i > 0 && w == verts[static_cast<size_t>(parent[i])]) continue;
            if (static_cast<int>(verts.size()) >= cap) return "";
            parent.push_back(static_cast<int>(i));
            verts.push_back(w);
        }
    }
    // build a RootedTree on the collected vertices
    RootedTree t;
    t.order = static_cast<int>(verts.size());
    t.root = 1;
    t.parent.assign(verts.size() + 1, 0);
    for (size_t i = 1; i < verts.size(); ++i)
        t.parent[i + 1] = parent[i] + 1;
    return canonical_code(t);
}

}  // namespace

PendantCount count_pendants(const LabeledGraph& tree, const RootedPattern& pattern) {
    if (!is_tree(tree)) throw std::invalid_argument("count_pendants: input is not a tree");
    const int v = pattern.order();
    const long long n = tree.n;
    PendantCount out{0, pattern.code};
    if (v >= n) return out;  // a hanging component has at most n-1 vertices

    Rooting r = root_at_one(tree);
    for (int u = 2; u <= tree.n; ++u) {
        // component below u (deleting {parent(u), u}) has r.size[u] vertices;
        // the complementary component has n - r.size[u].
        if (r.size[u] == v &&
            component_code(tree, u, r.parent[u], v + 1) == pattern.code)
            ++out.value;
        if (n - r.size[u] == v &&
            component_code(tree, r.parent[u], u, v + 1) == pattern.code)
            ++out.value;
    }
    return out;
}

bool has_pendant(const LabeledGraph& tree, const RootedPattern& pattern) {
    return count_pendants(tree, pattern).value > 0;
}

PendantCount count_windowed(const LabeledGraph& tree, const RootedPattern& pattern,
                            int base, int width) {
    const int v = pattern.order();
    if (base < 1 || width < 1)
        throw std::invalid_argument("count_windowed: base and width must be >= 1");
    if (base + width + v > tree.n)
        throw std::invalid_argument("count_windowed: window plus pattern exceeds n");
    if (tree.edge_count() != tree.n - 1)
        throw std::invalid_argument("count_windowed: input is not a tree");

    // arrival labeling: each vertex > 1 has exactly one smaller neighbor
    std::vector<int> parent(static_cast<size_t>(tree.n) + 1, 0);
    std::vector<std::vector<int>> kids(static_cast<size_t>(tree.n) + 1);
    for (int x = 2; x <= tree.n; ++x) {
        int smaller = 0;
        for (int w : tree.adj[x])
            if (w < x) {
                if (smaller != 0)
                    throw std::invalid_argument(
                        "count_windowed: tree is not arrival-labeled (vertex " +
                        std::to_string(x) + " has two smaller neighbors)");
                smaller = w;
            }
        if (smaller == 0)
            throw std::invalid_argument(
                "count_windowed: tree is not arrival-labeled (vertex " +
                std::to_string(x) + " has no smaller neighbor)");
        parent[x] = smaller;
        kids[smaller].push_back(x);
    }

    PendantCount out{0, pattern.code};
    for (int root = base + width + 1; root <= tree.n; ++root) {
        if (parent[root] < base || parent[root] >= base + width) continue;
        // descendants of root, capped at v vertices
        std::vector<int> comp{root};
        bool small = true;
        for (size_t i = 0; i < comp.size() && small; ++i)
            for (int c : kids[comp[i]]) {
                comp.push_back(c);
                if (static_cast<int>(comp.size()) > v) {
                    small = false;
                    break;
                }
            }
        if (!small || static_cast<int>(comp.size()) != v) continue;
        std::sort(comp.begin(), comp.end());
        // slot s of the pattern must map to comp[s-1] parent-compatibly
        bool match = true;
        for (int s = 2; s <= v && match; ++s)
            match = parent[comp[static_cast<size_t>(s) - 1]] ==
                    comp[static_cast<size_t>(pattern.parent_slot[s]) - 1];
        if (match) ++out.value;
    }
    return out;
}

}  // namespace rrg
