#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "steinerforge/digraph.hpp"
#include "steinerforge/out_forest.hpp"
#include "steinerforge/search.hpp"

namespace steinerforge {

struct Literal {
    int var = 0;  // 0-based variable index
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

struct Clause {
    std::array<Literal, 3> lits;
};

/// 3-CNF instance with exactly three distinct variables per clause
/// (repeated variables would force parallel arcs in the gadget).
class CnfInstance {
public:
    CnfInstance(int variable_count, std::vector<Clause> clauses);

    int variable_count() const { return variable_count_; }
    const std::vector<Clause>& clauses() const { return clauses_; }
    int clause_count() const { return static_cast<int>(clauses_.size()); }

private:
    int variable_count_;
    std::vector<Clause> clauses_;
};

/// DIMACS CNF: `p cnf <vars> <clauses>`, clause lines terminated by 0.
CnfInstance parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfInstance& I);

using Assignment = std::vector<bool>;

/// Every clause contains at least one true and one false literal.
bool nae_satisfies(const CnfInstance& I, const Assignment& a);

/// Exhaustive 2^n sweep; any returned assignment is re-verified clause by
/// clause before return. Throws when the instance is too large to sweep.
std::optional<Assignment> oracle_nae3sat(const CnfInstance& I);

/// Two-terminal-pair linkage instance: four distinct vertices of a digraph.
struct LinkageInstance {
    Digraph digraph;
    std::array<int, 4> terminals;  // s1, t1, s2, t2

    LinkageInstance(Digraph d, std::array<int, 4> terms);
};

/// Exhaustive search for vertex-disjoint paths s1->t1 and s2->t2.
Outcome<std::pair<std::vector<int>, std::vector<int>>> oracle_2linkage(
    const LinkageInstance& L, const Budget& budget = Budget::unlimited());

/// A constructed hardness gadget: the digraph with role labels on every
/// vertex, plus whichever of the terminal set and decision threshold the
/// construction defines.
struct GadgetOutput {
    Digraph digraph;
    std::vector<int> terminal_set;
    std::optional<int> threshold;
    std::string provenance;
};

/// Variable chain of 6-vertex blocks with pendants and clause receivers;
/// connected acyclic output whose 0-perfect forests of >= |V|-2 arcs
/// correspond exactly to NAE-satisfying assignments. threshold = |V| - 2.
GadgetOutput build_nae_gadget(const CnfInstance& I);

/// Appends a two-arc tail x -> y -> u; shifts the achievable perfect-forest
/// size bound by one tree. Requires u in range and d connected acyclic.
Digraph lift_forest_gadget(const Digraph& d, int u);

enum class OnePerfectMode { add_source, add_2cycle_pendant };

/// add_2cycle_pendant: new vertex v with u -> v -> u, turning 0-perfect
/// existence into 1-perfect existence. add_source: new vertex with a single
/// arc into the target.
Digraph to_one_perfect_gadget(const Digraph& d, OnePerfectMode mode,
                              int target);

/// Terminal ring with connector arcs into a 2-linkage instance over an
/// Eulerian digraph; out-degree of every terminal equals l and the output
/// is Eulerian. terminal_set holds x_1..x_k; threshold = l.
GadgetOutput build_linkage_kappa_gadget(const LinkageInstance& L, int k,
                                        int l);

/// Splits every carried H-vertex u into u^- -> u^+, rewiring incident arcs;
/// arc-disjoint packing on the result matches internally disjoint packing
/// on the input gadget. Requires role labels from build_linkage_kappa_gadget.
GadgetOutput split_vertices(const GadgetOutput& g);

/// The constructive direction: builds the two-tree 0-perfect out-forest of
/// the gadget from an NAE-satisfying assignment. Throws when the assignment
/// does not NAE-satisfy I or g is not the gadget of I.
OutForest forest_from_assignment(const CnfInstance& I, const Assignment& a,
                                 const GadgetOutput& g);

}  // namespace steinerforge
