#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace steinerforge {

using Arc = std::pair<int, int>;

/// Simple directed graph: no loops, no parallel arcs, vertices are the
/// contiguous range 0..order()-1. Values are immutable after construction,
/// so sharing across threads needs no coordination.
class Digraph {
public:
    Digraph() = default;

    /// Throws std::invalid_argument if an arc is a loop, a duplicate, or
    /// out of range, or if a label key is out of range.
    explicit Digraph(int order, std::vector<Arc> arcs = {},
                     std::map<int, std::string> labels = {});

    int order() const { return order_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    bool has_arc(int u, int v) const;

    /// Out-/in-neighbours in ascending order.
    const std::vector<int>& out(int v) const { return out_.at(v); }
    const std::vector<int>& in(int v) const { return in_.at(v); }
    int out_degree(int v) const { return static_cast<int>(out_.at(v).size()); }
    int in_degree(int v) const { return static_cast<int>(in_.at(v).size()); }

    const std::map<int, std::string>& labels() const { return labels_; }
    const std::string* label(int v) const;
    std::optional<int> vertex_by_label(std::string_view tag) const;

    bool operator==(const Digraph& other) const;

private:
    int order_ = 0;
    std::vector<Arc> arcs_;  // sorted, unique
    std::vector<std::vector<int>> out_, in_;
    std::map<int, std::string> labels_;
};

/// Undirected graph; edges stored as pairs with first < second.
class UGraph {
public:
    UGraph() = default;
    explicit UGraph(int order, std::vector<Arc> edges = {});

    int order() const { return order_; }
    const std::vector<Arc>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    bool connected() const;

    bool operator==(const UGraph& other) const;

private:
    int order_ = 0;
    std::vector<Arc> edges_;  // sorted, unique, first < second
    std::vector<std::vector<int>> adj_;
};

struct ClassReport {
    bool connected = false;
    bool strong = false;
    bool acyclic = false;
    bool semicomplete = false;
    bool tournament = false;
    bool symmetric = false;
    bool eulerian = false;
};

/// Parse failure; line is 1-based within the input text.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Digraph text format, one directive per line:
///   # comment         ignored
///   n <count>         required first directive
///   a <u> <v>         one arc
///   l <v> <tag>       optional vertex label (tag runs to end of line)
Digraph parse_digraph(std::string_view text);

/// Deterministic inverse of parse_digraph: header, arcs in sorted order,
/// then labels by vertex. No trailing newline.
std::string serialize_digraph(const Digraph& d);

/// Structural predicates. Conventions for trivial orders: the empty digraph
/// and the singleton count as connected, strong and eulerian.
ClassReport classify(const Digraph& d);

std::string format_class_report(const ClassReport& r);

/// {u,v} is an edge iff (u,v) or (v,u) is an arc.
UGraph underlying_graph(const Digraph& d);

/// Subdigraph on `verts`, renumbered by ascending original index; labels of
/// kept vertices are carried over. verts out of range throws.
Digraph induced(const Digraph& d, std::vector<int> verts);

struct InducedResult {
    Digraph graph;
    std::vector<int> original;  // new index -> original vertex
};
InducedResult induced_mapped(const Digraph& d, std::vector<int> verts);

Digraph reverse_digraph(const Digraph& d);

/// Adds the reversal of every arc.
Digraph symmetric_closure(const Digraph& d);

}  // namespace steinerforge
