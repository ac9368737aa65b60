#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "steinerforge/digraph.hpp"
#include "steinerforge/search.hpp"
#include "steinerforge/steiner_cycles.hpp"

namespace steinerforge {

/// Cyclic visiting order of a terminal set, canonical rotation (smallest
/// terminal first). The contraction of an S-cycle to its terminals.
struct Skeleton {
    std::vector<int> order;

    std::vector<Arc> arc_list() const;
    bool has_arc(int u, int v) const;

    bool operator==(const Skeleton& other) const {
        return order == other.order;
    }
};

/// All (k-1)! distinct directed cyclic orders on S, lexicographic.
/// Requires |S| = k >= 2.
std::vector<Skeleton> enumerate_skeletons(const std::vector<int>& S);

/// Total labeling of the arcs inside the terminal set: class 0 marks arcs
/// unused by any cycle, class i in 1..l feeds the i-th cycle. Empty classes
/// are allowed.
struct ArcPartition {
    std::vector<Arc> arcs;  // the arcs of D[S], sorted
    std::vector<int> cls;   // parallel to arcs, values in 0..l

    int class_of(Arc a) const;
};

/// Streams every function arcs -> {0..l}, exactly (l+1)^|arcs| items, in
/// lexicographic order (last arc varies fastest).
class ArcPartitionEnumerator {
public:
    ArcPartitionEnumerator(std::vector<Arc> arcs_of_DS, int l);

    std::optional<ArcPartition> next();
    std::uint64_t total() const { return total_; }

private:
    ArcPartition current_;
    int num_classes_;  // l + 1
    std::uint64_t total_;
    bool started_ = false;
    bool finished_ = false;
};

/// One (source, sink) request per needed path, plus the vertex set that no
/// path may cross internally. Endpoints may repeat across pairs.
struct PathQuery {
    std::vector<Arc> pairs;
    std::vector<int> forbidden;
};

/// Finds paths P_1..P_r, P_i from pairs[i].first to pairs[i].second, such
/// that internal vertices avoid the forbidden set and every endpoint of
/// every pair, and are pairwise private across paths. Complete backtracking
/// search; honest timeout under budget.
Outcome<std::vector<std::vector<int>>> disjoint_paths(
    const Digraph& d, const PathQuery& q,
    const Budget& budget = Budget::unlimited());

/// Attempts to realize one S-cycle per skeleton such that cycle i uses
/// exactly the class-(i+1) arcs inside S and paths through D - A[S]
/// elsewhere. Returns the internally disjoint family or absence.
Outcome<std::vector<SCycle>> realize(const Digraph& d,
                                     const std::vector<int>& S,
                                     const ArcPartition& partition,
                                     const std::vector<Skeleton>& skels,
                                     const Budget& budget = Budget::unlimited());

/// Structured decision of "at least l internally disjoint S-cycles" for
/// symmetric digraphs: iterate all arc partitions (outer) and all l-tuples
/// of skeletons (inner), realizing each candidate. The returned witness is
/// the lexicographically first success. Throws std::invalid_argument when
/// d is not symmetric.
Outcome<PackingCertificate> symmetric_kappa_at_least(
    const Digraph& d, const std::vector<int>& S, int l,
    const Budget& budget = Budget::unlimited());

}  // namespace steinerforge
