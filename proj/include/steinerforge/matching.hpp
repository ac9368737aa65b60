#pragma once

#include <vector>

#include "steinerforge/digraph.hpp"

namespace steinerforge {

/// A set of pairwise vertex-disjoint edges of some host graph.
struct Matching {
    std::vector<Arc> edges;  // first < second, sorted

    int size() const { return static_cast<int>(edges.size()); }
    bool perfect_for(const UGraph& g) const {
        return 2 * size() == g.order();
    }
};

/// Maximum-cardinality matching in a general graph (Edmonds' blossom
/// contraction). Deterministic for a fixed input.
Matching maximum_matching(const UGraph& g);

}  // namespace steinerforge
