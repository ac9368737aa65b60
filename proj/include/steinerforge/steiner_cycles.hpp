#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "steinerforge/digraph.hpp"
#include "steinerforge/search.hpp"

namespace steinerforge {

inline constexpr std::size_t kDefaultCycleCap = 100000;

/// Directed cycle stored in canonical rotation: the smallest vertex leads.
struct SCycle {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()); }
    std::vector<Arc> arc_list() const;
    bool contains(int v) const;
    bool contains_all(const std::vector<int>& vs) const;

    static SCycle canonical(std::vector<int> verts);

    bool operator==(const SCycle& other) const {
        return vertices == other.vertices;
    }
    bool operator<(const SCycle& other) const {
        return vertices < other.vertices;
    }
};

enum class DisjointnessMode { internal, arc };

struct CycleEnumeration {
    std::vector<SCycle> cycles;
    bool truncated = false;  // cap was hit; more cycles exist
};

/// All directed cycles of d containing every vertex of S, found once each
/// by rooted DFS at the smallest terminal. Requires |S| >= 2, S distinct
/// and in range.
CycleEnumeration enumerate_s_cycles(const Digraph& d,
                                    const std::vector<int>& S,
                                    std::size_t cap = kDefaultCycleCap);

/// Pairwise disjointness per mode. Internal mode requires arc-disjointness
/// plus common-vertex set exactly S. Throws when a cycle omits a terminal.
bool check_disjointness(const std::vector<SCycle>& cycles,
                        const std::vector<int>& S, DisjointnessMode mode);

/// Witnessed packing value or decision for a terminal set.
struct PackingCertificate {
    DisjointnessMode mode = DisjointnessMode::internal;
    int value = 0;
    std::vector<SCycle> cycles;
    /// Without a target: the value is proven maximal. With a target: the
    /// decision (value >= target, or proven unreachable) is exact. False
    /// when the cycle cap or the budget cut the search short, in which case
    /// value is only a lower bound.
    bool exhaustive = false;
};

/// Exact packing by branch-and-bound over the enumerated S-cycle list.
/// With `target`, stops at the first mutually-compatible family of that
/// size. Deterministic for fixed inputs and parameters.
PackingCertificate pack_cycles(const Digraph& d, const std::vector<int>& S,
                               DisjointnessMode mode,
                               std::optional<int> target = std::nullopt,
                               std::size_t cap = kDefaultCycleCap,
                               const Budget& budget = Budget::unlimited());

/// True iff every k-subset of vertices lies on a common cycle. Symmetric
/// digraphs dispatch to the structured decision procedure. nullopt on
/// budget exhaustion.
std::optional<bool> is_k_cyclic(const Digraph& d, int k,
                                const Budget& budget = Budget::unlimited());

std::string serialize_certificate(const PackingCertificate& c);

}  // namespace steinerforge
