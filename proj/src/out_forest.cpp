#include "steinerforge/out_forest.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

#include "steinerforge/matching.hpp"

namespace steinerforge {

ForestReport verify_out_forest(const Digraph& d, const OutForest& f) {
    const int n = d.order();
    if (static_cast<int>(f.tree_of.size()) != n)
        throw std::invalid_argument(
            "verify_out_forest: forest vertex set does not match digraph");

    ForestReport r;
    r.arc_count = f.arc_count();
    const int trees = f.tree_count();

    r.spanning = true;
    std::vector<int> members_of(trees, 0);
    for (int v = 0; v < n; ++v) {
        int t = f.tree_of[v];
        if (t < 0 || t >= trees) {
            r.spanning = false;
        } else {
            ++members_of[t];
        }
    }
    for (int t = 0; t < trees; ++t) {
        int root = f.roots[t];
        if (root < 0 || root >= n || f.tree_of[root] != t || members_of[t] == 0)
            r.spanning = false;
    }

    // Structural out-tree check on f's own arcs, independent of d.
    r.out_tree_valid = true;
    std::set<Arc> arc_set;
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> children(n);
    for (auto [u, v] : f.arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v ||
            !arc_set.insert({u, v}).second) {
            r.out_tree_valid = false;
            continue;
        }
        if (f.tree_of[u] != f.tree_of[v]) r.out_tree_valid = false;
        ++indeg[v];
        children[u].push_back(v);
    }
    if (r.out_tree_valid && r.spanning) {
        std::vector<bool> reached(n, false);
        for (int t = 0; t < trees && r.out_tree_valid; ++t) {
            int root = f.roots[t];
            if (indeg[root] != 0) {
                r.out_tree_valid = false;
                break;
            }
            std::vector<int> stack{root};
            reached[root] = true;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : children[v])
                    if (!reached[w]) {
                        reached[w] = true;
                        stack.push_back(w);
                    }
            }
        }
        for (int v = 0; v < n && r.out_tree_valid; ++v) {
            if (!reached[v]) r.out_tree_valid = false;
            int expected = (v == f.roots[f.tree_of[v]]) ? 0 : 1;
            if (indeg[v] != expected) r.out_tree_valid = false;
        }
    } else if (!r.spanning) {
        r.out_tree_valid = false;
    }

    // Induced: inside every tree, d's arcs and f's arcs must coincide.
    r.trees_induced = r.spanning;
    if (r.trees_induced) {
        for (auto [u, v] : d.arcs())
            if (f.tree_of[u] == f.tree_of[v] && !arc_set.count({u, v}))
                r.trees_induced = false;
        for (auto [u, v] : f.arcs)
            if (u < 0 || u >= n || v < 0 || v >= n || !d.has_arc(u, v))
                r.trees_induced = false;
    }

    // Degrees in UG(f): antiparallel claimed arcs merge to one edge.
    std::set<Arc> ug_edges;
    for (auto [u, v] : arc_set)
        ug_edges.insert({std::min(u, v), std::max(u, v)});
    std::vector<int> deg(n, 0);
    for (auto [u, v] : ug_edges) {
        ++deg[u];
        ++deg[v];
    }
    r.even_degree_count = 0;
    for (int v = 0; v < n; ++v)
        if (deg[v] % 2 == 0) ++r.even_degree_count;
    return r;
}

namespace {

// Exact search over vertex partitions. An i-perfect out-forest is exactly a
// partition of V(D) whose every class induces an out-tree in D (the arcs of
// each tree are forced by the induced condition), with i even UG-degrees.
// Classes are enumerated as restricted growth strings; pruning:
//   - an antiparallel pair inside a class is a directed 2-cycle,
//   - in-degree within a class never exceeds 1,
//   - the underlying graph of a class prefix stays acyclic (union-find),
//   - a vertex whose neighbourhood is fully assigned has its parity fixed.
class PartitionSearch {
public:
    PartitionSearch(const Digraph& d, int i_target, int max_classes,
                    bool minimize_classes, const Budget& budget)
        : d_(d),
          ug_(underlying_graph(d)),
          n_(d.order()),
          i_target_(i_target),
          max_classes_(max_classes),
          minimize_(minimize_classes),
          ticker_(budget) {
        cls_.assign(n_, -1);
        indeg_.assign(n_, 0);
        class_deg_.assign(n_, 0);
        finalized_.assign(n_, 0);
        unassigned_nbrs_.resize(n_);
        for (int v = 0; v < n_; ++v) unassigned_nbrs_[v] = ug_.degree(v);
        root_count_.assign(n_ + 1, 0);
        uf_parent_.resize(n_);
        uf_size_.resize(n_);
        std::iota(uf_parent_.begin(), uf_parent_.end(), 0);
        std::fill(uf_size_.begin(), uf_size_.end(), 1);
        best_classes_ = n_ + 1;
    }

    Outcome<OutForest> run() {
        timed_out_ = false;
        descend(0);
        if (timed_out_) return Outcome<OutForest>::timeout();
        if (best_assignment_.empty() && n_ > 0)
            return Outcome<OutForest>::none();
        if (n_ == 0) {
            if (i_target_ == 0) return Outcome<OutForest>::found(OutForest{});
            return Outcome<OutForest>::none();
        }
        return Outcome<OutForest>::found(
            forest_from_assignment(best_assignment_));
    }

private:
    int uf_find(int v) const {
        while (uf_parent_[v] != v) v = uf_parent_[v];
        return v;
    }

    // Returns false when the class becomes structurally infeasible. All
    // mutations are applied either way; unassign() is the exact mirror.
    bool assign(int v, int c) {
        cls_[v] = c;
        indeg_[v] = 0;
        class_deg_[v] = 0;
        bool ok = true;
        for (int u : ug_.neighbors(v)) --unassigned_nbrs_[u];
        for (int u : ug_.neighbors(v)) {
            if (cls_[u] != c) continue;
            ++class_deg_[v];
            ++class_deg_[u];
            bool uv = d_.has_arc(u, v), vu = d_.has_arc(v, u);
            if (uv && vu) ok = false;  // directed 2-cycle inside the class
            if (uv) ++indeg_[v];
            if (vu) {
                if (indeg_[u] == 0) --root_count_[c];
                if (++indeg_[u] > 1) ok = false;
            }
            int ru = uf_find(u), rv = uf_find(v);
            if (ru == rv) {
                ok = false;  // underlying cycle inside the class
            } else {
                if (uf_size_[ru] < uf_size_[rv]) std::swap(ru, rv);
                uf_parent_[rv] = ru;
                uf_size_[ru] += uf_size_[rv];
                uf_trail_.push_back(rv);
            }
        }
        if (indeg_[v] > 1) ok = false;
        if (indeg_[v] == 0) ++root_count_[c];
        auto finalize = [&](int w) {
            if (cls_[w] != -1 && unassigned_nbrs_[w] == 0 && !finalized_[w]) {
                finalized_[w] = 1;
                if (class_deg_[w] % 2 == 0 && ++even_final_ > i_target_)
                    ok = false;
            }
        };
        finalize(v);
        for (int u : ug_.neighbors(v)) finalize(u);
        return ok;
    }

    void unassign(int v, int c, std::size_t uf_mark) {
        auto definalize = [&](int w) {
            if (finalized_[w] && cls_[w] != -1 && unassigned_nbrs_[w] == 0) {
                finalized_[w] = 0;
                if (class_deg_[w] % 2 == 0) --even_final_;
            }
        };
        definalize(v);
        for (int u : ug_.neighbors(v)) definalize(u);
        if (indeg_[v] == 0) --root_count_[c];
        for (int u : ug_.neighbors(v)) {
            if (cls_[u] != c || u == v) continue;
            --class_deg_[v];
            --class_deg_[u];
            if (d_.has_arc(v, u)) {
                if (--indeg_[u] == 0) ++root_count_[c];
            }
        }
        while (uf_trail_.size() > uf_mark) {
            int rv = uf_trail_.back();
            uf_trail_.pop_back();
            uf_size_[uf_find(rv)] -= uf_size_[rv];
            uf_parent_[rv] = rv;
        }
        for (int u : ug_.neighbors(v)) ++unassigned_nbrs_[u];
        cls_[v] = -1;
    }

    void descend(int v) {
        if (done_ || timed_out_) return;
        if (ticker_.expired()) {
            timed_out_ = true;
            return;
        }
        if (v == n_) {
            if (used_classes_ >= best_classes_) return;
            for (int c = 0; c < used_classes_; ++c)
                if (root_count_[c] != 1) return;
            if (even_final_ != i_target_) return;
            best_classes_ = used_classes_;
            best_assignment_ = cls_;
            if (!minimize_) done_ = true;
            return;
        }
        for (int c = 0; c <= used_classes_ && !done_ && !timed_out_; ++c) {
            if (c >= max_classes_) break;
            bool opened = (c == used_classes_);
            // Class counts only grow along a branch; no improvement possible.
            if (minimize_ && used_classes_ + (opened ? 1 : 0) >= best_classes_)
                break;
            if (opened) ++used_classes_;
            std::size_t mark = uf_trail_.size();
            if (assign(v, c)) descend(v + 1);
            unassign(v, c, mark);
            if (opened) --used_classes_;
        }
    }

    OutForest forest_from_assignment(const std::vector<int>& assignment) const {
        OutForest f;
        f.tree_of = assignment;
        int trees = 0;
        for (int v = 0; v < n_; ++v) trees = std::max(trees, assignment[v] + 1);
        std::vector<int> indeg(n_, 0);
        for (auto [u, w] : d_.arcs())
            if (assignment[u] == assignment[w]) {
                f.arcs.emplace_back(u, w);
                ++indeg[w];
            }
        f.roots.assign(trees, -1);
        for (int v = 0; v < n_; ++v)
            if (indeg[v] == 0) f.roots[assignment[v]] = v;
        return f;
    }

    const Digraph& d_;
    UGraph ug_;
    int n_, i_target_, max_classes_;
    bool minimize_;
    BudgetTicker ticker_;

    std::vector<int> cls_, indeg_, class_deg_, unassigned_nbrs_, root_count_;
    std::vector<char> finalized_;
    std::vector<int> uf_parent_, uf_size_;
    std::vector<int> uf_trail_;
    int used_classes_ = 0;
    int even_final_ = 0;
    int best_classes_;
    std::vector<int> best_assignment_;
    bool done_ = false;
    bool timed_out_ = false;
};

// Single-class shortcut: a forest with n-1 arcs is the whole digraph, so D
// itself must be an out-branching with the right parity count.
Outcome<OutForest> out_branching_case(const Digraph& d, int i) {
    const int n = d.order();
    if (d.arc_count() != n - 1) return Outcome<OutForest>::none();
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : d.arcs()) ++indeg[v];
    int root = -1;
    for (int v = 0; v < n; ++v) {
        if (indeg[v] == 0) {
            if (root != -1) return Outcome<OutForest>::none();
            root = v;
        } else if (indeg[v] != 1) {
            return Outcome<OutForest>::none();
        }
    }
    if (root == -1 || !underlying_graph(d).connected())
        return Outcome<OutForest>::none();
    int evens = 0;
    const UGraph ug = underlying_graph(d);
    for (int v = 0; v < n; ++v)
        if (ug.degree(v) % 2 == 0) ++evens;
    if (evens != i) return Outcome<OutForest>::none();
    OutForest f;
    f.tree_of.assign(n, 0);
    f.roots = {root};
    f.arcs = d.arcs();
    return Outcome<OutForest>::found(std::move(f));
}

void validate_i(int i) {
    if (i != 0 && i != 1)
        throw std::invalid_argument("i must be 0 or 1");
}

}  // namespace

Outcome<OutForest> max_i_perfect(const Digraph& d, int i, const Budget& budget) {
    validate_i(i);
    return PartitionSearch(d, i, d.order() == 0 ? 1 : d.order(), true, budget)
        .run();
}

Outcome<OutForest> decide_i_perfect_min_arcs(const Digraph& d, int i,
                                             int min_arcs,
                                             const Budget& budget) {
    validate_i(i);
    const int n = d.order();
    if (min_arcs < 0 || min_arcs > std::max(0, n - 1))
        throw std::invalid_argument("min_arcs out of range");
    if (n > 0 && min_arcs == n - 1) return out_branching_case(d, i);
    int max_classes = n - min_arcs;
    if (n == 0) max_classes = 1;
    return PartitionSearch(d, i, max_classes, false, budget).run();
}

namespace {

// i = 0 core of the semicomplete algorithm: delete all arcs on 2-cycles,
// then a perfect matching of the residual underlying graph is exactly a
// perfect out-forest of single-arc trees.
std::optional<std::vector<Arc>> semicomplete_perfect_arcs(const Digraph& d) {
    std::vector<Arc> residual;
    for (auto [u, v] : d.arcs())
        if (!d.has_arc(v, u)) residual.emplace_back(u, v);
    std::vector<Arc> edges;
    for (auto [u, v] : residual)
        edges.emplace_back(std::min(u, v), std::max(u, v));
    UGraph ug(d.order(), std::move(edges));
    Matching m = maximum_matching(ug);
    if (!m.perfect_for(ug)) return std::nullopt;
    std::vector<Arc> arcs;
    for (auto [x, y] : m.edges) {
        if (std::binary_search(residual.begin(), residual.end(), Arc{x, y}))
            arcs.emplace_back(x, y);
        else
            arcs.emplace_back(y, x);
    }
    return arcs;
}

OutForest forest_of_single_arcs(int n, const std::vector<Arc>& arcs,
                                std::optional<int> singleton) {
    // Trees ordered by root vertex.
    std::vector<std::pair<int, std::optional<Arc>>> trees;
    for (auto [u, v] : arcs) trees.push_back({u, Arc{u, v}});
    if (singleton) trees.push_back({*singleton, std::nullopt});
    std::sort(trees.begin(), trees.end());
    OutForest f;
    f.tree_of.assign(n, -1);
    for (std::size_t t = 0; t < trees.size(); ++t) {
        auto [root, arc] = trees[t];
        f.roots.push_back(root);
        f.tree_of[root] = static_cast<int>(t);
        if (arc) {
            f.tree_of[arc->second] = static_cast<int>(t);
            f.arcs.push_back(*arc);
        }
    }
    std::sort(f.arcs.begin(), f.arcs.end());
    return f;
}

}  // namespace

std::optional<OutForest> semicomplete_i_perfect(const Digraph& d, int i) {
    validate_i(i);
    if (!classify(d).semicomplete)
        throw std::invalid_argument(
            "semicomplete_i_perfect: input is not semicomplete");
    const int n = d.order();
    if (i == 0) {
        auto arcs = semicomplete_perfect_arcs(d);
        if (!arcs) return std::nullopt;
        return forest_of_single_arcs(n, *arcs, std::nullopt);
    }
    // Candidate singletons scanned in ascending order; first success wins.
    for (int u = 0; u < n; ++u) {
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != u) rest.push_back(v);
        auto sub = induced_mapped(d, rest);
        auto arcs = semicomplete_perfect_arcs(sub.graph);
        if (!arcs) continue;
        std::vector<Arc> mapped;
        for (auto [x, y] : *arcs)
            mapped.emplace_back(sub.original[x], sub.original[y]);
        return forest_of_single_arcs(n, mapped, u);
    }
    return std::nullopt;
}

std::string serialize_out_forest(const OutForest& f) {
    std::ostringstream out;
    std::vector<std::vector<int>> members(f.tree_count());
    for (std::size_t v = 0; v < f.tree_of.size(); ++v) {
        int t = f.tree_of[v];
        if (t >= 0 && t < f.tree_count()) members[t].push_back(static_cast<int>(v));
    }
    bool first = true;
    for (int t = 0; t < f.tree_count(); ++t) {
        if (!first) out << "\n";
        first = false;
        out << "t " << f.roots[t] << " :";
        for (int v : members[t]) out << " " << v;
    }
    for (auto [u, v] : f.arcs) {
        if (!first) out << "\n";
        first = false;
        out << "a " << u << " " << v;
    }
    return out.str();
}

OutForest parse_out_forest(std::string_view text, int host_order) {
    OutForest f;
    f.tree_of.assign(host_order, -1);
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string t(text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        std::istringstream in(t);
        std::string kind;
        if (!(in >> kind) || kind == "#") continue;
        if (kind == "t") {
            int root;
            std::string colon;
            if (!(in >> root >> colon) || colon != ":")
                throw ParseError(line_no, "expected 't <root> : <members...>'");
            int tree_id = f.tree_count();
            f.roots.push_back(root);
            int v;
            bool saw_root = false;
            while (in >> v) {
                if (v < 0 || v >= host_order)
                    throw ParseError(line_no, "tree member out of range");
                if (f.tree_of[v] != -1)
                    throw ParseError(line_no, "vertex in two trees");
                f.tree_of[v] = tree_id;
                if (v == root) saw_root = true;
            }
            if (root < 0 || root >= host_order || !saw_root)
                throw ParseError(line_no, "root missing from member list");
        } else if (kind == "a") {
            int u, v;
            if (!(in >> u >> v))
                throw ParseError(line_no, "expected 'a <u> <v>'");
            if (u < 0 || u >= host_order || v < 0 || v >= host_order)
                throw ParseError(line_no, "arc endpoint out of range");
            f.arcs.emplace_back(u, v);
        } else {
            throw ParseError(line_no, "unknown directive '" + kind + "'");
        }
    }
    for (int v = 0; v < host_order; ++v)
        if (f.tree_of[v] == -1)
            throw ParseError(line_no, "vertex " + std::to_string(v) +
                                          " not assigned to any tree");
    std::sort(f.arcs.begin(), f.arcs.end());
    return f;
}

}  // namespace steinerforge
