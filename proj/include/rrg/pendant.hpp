#pragma once

#include "rrg/graph.hpp"

namespace rrg {

struct PendantCount {
    long long value = 0;
    CanonicalCode pattern_code;
};

// Pendant copies of a rooted pattern in a tree: directed edges (u, w) such
// that deleting {u, w} leaves the component containing w with exactly
// pattern.order() vertices and rooted-isomorphic to the pattern when rooted
// at w. Input must be a tree (any labeling); the two directions of an edge
// are counted separately.
PendantCount count_pendants(const LabeledGraph& tree, const RootedPattern& pattern);
bool has_pendant(const LabeledGraph& tree, const RootedPattern& pattern);

// Arrival-window variant for arrival-labeled trees (every vertex except 1
// has exactly one smaller neighbor, its parent). Counts ascending tuples
// i_1 < ... < i_v with i_1 > base + width whose parent lands in the window
// [base, base + width), whose hanging component is exactly {i_1, ..., i_v},
// and where slot s of the pattern maps to i_s parent-compatibly (the copy
// grew in the pattern's slot order). Requires base >= 1, width >= 1 and
// base + width + order <= n.
PendantCount count_windowed(const LabeledGraph& tree, const RootedPattern& pattern,
                            int base, int width);

}  // namespace rrg
