#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steinerforge/digraph.hpp"
#include "steinerforge/search.hpp"

namespace steinerforge {

/// Spanning collection of vertex-disjoint rooted out-trees of a digraph.
/// tree_of assigns every host vertex a tree id in 0..roots.size()-1; arcs
/// is the union of the trees' arc sets.
struct OutForest {
    std::vector<int> tree_of;
    std::vector<int> roots;
    std::vector<Arc> arcs;

    int tree_count() const { return static_cast<int>(roots.size()); }
    int arc_count() const { return static_cast<int>(arcs.size()); }
};

/// Independent diagnostics for a claimed forest; all fields are computed
/// even when earlier ones fail.
struct ForestReport {
    bool spanning = false;
    bool trees_induced = false;
    bool out_tree_valid = false;
    int even_degree_count = 0;
    int arc_count = 0;

    bool is_i_perfect(int i) const {
        return spanning && trees_induced && out_tree_valid &&
               even_degree_count == i;
    }
};

/// Checks f against d: spanning assignment, every tree an induced out-tree
/// of d, and the even-degree count of UG(f). Throws std::invalid_argument
/// when f's vertex set does not match d's.
ForestReport verify_out_forest(const Digraph& d, const OutForest& f);

/// Maximum-arc i-perfect out-forest via exact search over vertex partitions
/// into induced out-trees. i must be 0 or 1.
Outcome<OutForest> max_i_perfect(const Digraph& d, int i,
                                 const Budget& budget = Budget::unlimited());

/// Witness of an i-perfect out-forest with at least min_arcs arcs, or proof
/// of absence. A forest with >= n-k arcs has at most k trees, so the search
/// assigns vertices to at most n-min_arcs tree classes with propagation.
/// Requires 0 <= min_arcs <= n-1.
Outcome<OutForest> decide_i_perfect_min_arcs(
    const Digraph& d, int i, int min_arcs,
    const Budget& budget = Budget::unlimited());

/// Polynomial decision for semicomplete digraphs: drop all arcs on 2-cycles
/// and reduce to perfect matching of the residual underlying graph (for
/// i = 1, over d - u for each candidate u in ascending order). Throws
/// std::invalid_argument when d is not semicomplete.
std::optional<OutForest> semicomplete_i_perfect(const Digraph& d, int i);

/// Certificate text: one `t <root> : <members...>` line per tree followed
/// by `a <u> <v>` arc lines.
std::string serialize_out_forest(const OutForest& f);
OutForest parse_out_forest(std::string_view text, int host_order);

}  // namespace steinerforge
