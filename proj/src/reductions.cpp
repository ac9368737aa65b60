#include "steinerforge/reductions.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace steinerforge {

CnfInstance::CnfInstance(int variable_count, std::vector<Clause> clauses)
    : variable_count_(variable_count), clauses_(std::move(clauses)) {
    if (variable_count_ < 1)
        throw std::invalid_argument("need at least one variable");
    for (const auto& clause : clauses_) {
        std::set<int> vars;
        for (const auto& lit : clause.lits) {
            if (lit.var < 0 || lit.var >= variable_count_)
                throw std::invalid_argument("literal variable out of range");
            vars.insert(lit.var);
        }
        if (vars.size() != 3)
            throw std::invalid_argument(
                "clause must use three distinct variables");
    }
}

CnfInstance parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    int vars = -1, expected_clauses = -1;
    std::vector<Clause> clauses;
    std::vector<Literal> pending;
    while (in >> tok) {
        if (tok == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (!(in >> fmt >> vars >> expected_clauses) || fmt != "cnf")
                throw std::runtime_error("dimacs: bad problem line");
            continue;
        }
        if (vars < 0) throw std::runtime_error("dimacs: clause before header");
        int lit;
        try {
            lit = std::stoi(tok);
        } catch (const std::exception&) {
            throw std::runtime_error("dimacs: bad literal '" + tok + "'");
        }
        if (lit == 0) {
            if (pending.size() != 3)
                throw std::runtime_error(
                    "dimacs: clause must have exactly three literals");
            clauses.push_back(Clause{{pending[0], pending[1], pending[2]}});
            pending.clear();
        } else {
            int var = std::abs(lit) - 1;
            if (var >= vars)
                throw std::runtime_error("dimacs: literal out of range");
            pending.push_back(Literal{var, lit < 0});
        }
    }
    if (!pending.empty())
        throw std::runtime_error("dimacs: unterminated clause");
    if (expected_clauses >= 0 &&
        static_cast<int>(clauses.size()) != expected_clauses)
        throw std::runtime_error("dimacs: clause count mismatch");
    return CnfInstance(vars, std::move(clauses));
}

bool nae_satisfies(const CnfInstance& I, const Assignment& a) {
    if (static_cast<int>(a.size()) != I.variable_count())
        throw std::invalid_argument("assignment size mismatch");
    for (const auto& clause : I.clauses()) {
        bool any_true = false, any_false = false;
        for (const auto& lit : clause.lits) {
            bool value = a[lit.var] != lit.negated;
            (value ? any_true : any_false) = true;
        }
        if (!any_true || !any_false) return false;
    }
    return true;
}

std::optional<Assignment> oracle_nae3sat(const CnfInstance& I) {
    const int n = I.variable_count();
    if (n > 22)
        throw std::invalid_argument(
            "oracle_nae3sat: instance too large for the exhaustive sweep");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        Assignment a(n);
        for (int v = 0; v < n; ++v) a[v] = (bits >> v) & 1;
        if (nae_satisfies(I, a)) return a;
    }
    return std::nullopt;
}

LinkageInstance::LinkageInstance(Digraph d, std::array<int, 4> terms)
    : digraph(std::move(d)), terminals(terms) {
    std::set<int> seen;
    for (int v : terminals) {
        if (v < 0 || v >= digraph.order())
            throw std::invalid_argument("terminal out of range");
        if (!seen.insert(v).second)
            throw std::invalid_argument("terminals must be distinct");
    }
}

namespace {

class TwoLinkageSearch {
public:
    TwoLinkageSearch(const Digraph& d, std::array<int, 4> terms,
                     const Budget& budget)
        : d_(d), terms_(terms), ticker_(budget) {}

    Outcome<std::pair<std::vector<int>, std::vector<int>>> run() {
        auto [s1, t1, s2, t2] = terms_;
        on_path_.assign(d_.order(), false);
        path_ = {s1};
        on_path_[s1] = true;
        on_path_[s2] = true;  // the second path owns its terminals
        on_path_[t2] = true;
        if (extend(s1, t1)) {
            return Outcome<std::pair<std::vector<int>, std::vector<int>>>::
                found({path_, second_});
        }
        if (budget_hit_)
            return Outcome<std::pair<std::vector<int>, std::vector<int>>>::
                timeout();
        return Outcome<std::pair<std::vector<int>, std::vector<int>>>::none();
    }

private:
    // All simple s1->t1 paths avoiding {s2, t2}; each complete candidate is
    // checked by plain reachability on the leftover vertices.
    bool extend(int v, int t1) {
        if (ticker_.expired()) {
            budget_hit_ = true;
            return false;
        }
        for (int w : d_.out(v)) {
            if (w == t1) {
                path_.push_back(t1);
                on_path_[t1] = true;
                if (second_path_exists()) return true;
                on_path_[t1] = false;
                path_.pop_back();
                if (budget_hit_) return false;
                continue;
            }
            if (on_path_[w]) continue;
            on_path_[w] = true;
            path_.push_back(w);
            if (extend(w, t1)) return true;
            path_.pop_back();
            on_path_[w] = false;
            if (budget_hit_) return false;
        }
        return false;
    }

    bool second_path_exists() {
        auto [s1, t1, s2, t2] = terms_;
        std::vector<int> parent(d_.order(), -2);
        std::queue<int> q;
        q.push(s2);
        parent[s2] = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : d_.out(v)) {
                if (parent[w] != -2) continue;
                if (on_path_[w] && w != t2) continue;
                parent[w] = v;
                if (w == t2) {
                    second_.clear();
                    for (int x = t2; x != -1; x = parent[x])
                        second_.push_back(x);
                    std::reverse(second_.begin(), second_.end());
                    return true;
                }
                q.push(w);
            }
        }
        return false;
    }

    const Digraph& d_;
    std::array<int, 4> terms_;
    BudgetTicker ticker_;
    std::vector<bool> on_path_;
    std::vector<int> path_, second_;
    bool budget_hit_ = false;
};

}  // namespace

Outcome<std::pair<std::vector<int>, std::vector<int>>> oracle_2linkage(
    const LinkageInstance& L, const Budget& budget) {
    return TwoLinkageSearch(L.digraph, L.terminals, budget).run();
}

namespace {

// Shared layout of the NAE gadget; index order is block, its pendants, next
// block, ..., then the clause receivers.
struct NaeLayout {
    // Per variable: x1, z1, y1, x2, z2, y2.
    std::vector<std::array<int, 6>> block;
    std::vector<int> pendant_of;        // vertex -> pendant, -1 if none
    std::vector<int> c, cp;             // per clause
    int order = 0;
    std::vector<Arc> arcs;
    std::map<int, std::string> labels;
};

constexpr const char* kBlockRole[6] = {"x", "z", "y", "x", "z", "y"};
constexpr int kBlockRow[6] = {1, 1, 1, 2, 2, 2};

NaeLayout nae_layout(const CnfInstance& I) {
    const int n = I.variable_count();
    NaeLayout L;
    L.block.resize(n);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        for (int slot = 0; slot < 6; ++slot) {
            L.block[i][slot] = next;
            L.labels[next] = std::string(kBlockRole[slot]) + "^" +
                             std::to_string(i + 1) + "_" +
                             std::to_string(kBlockRow[slot]);
            ++next;
        }
        for (int slot = 0; slot < 6; ++slot) {
            int u = L.block[i][slot];
            bool first_x = (i == 0) && (slot == 0 || slot == 3);
            bool last_y = (i == n - 1) && (slot == 2 || slot == 5);
            if (first_x || last_y) continue;
            L.pendant_of.resize(next + 1, -1);
            L.pendant_of[u] = next;
            L.labels[next] = L.labels[u] + "'";
            ++next;
        }
    }
    for (int j = 0; j < I.clause_count(); ++j) {
        L.c.push_back(next);
        L.labels[next] = "c_" + std::to_string(j + 1);
        ++next;
        L.cp.push_back(next);
        L.labels[next] = "c'_" + std::to_string(j + 1);
        ++next;
    }
    L.order = next;
    L.pendant_of.resize(L.order, -1);

    for (int i = 0; i < n; ++i) {
        auto [x1, z1, y1, x2, z2, y2] = L.block[i];
        L.arcs.insert(L.arcs.end(), {{x1, z1}, {z1, y1}, {x2, z2}, {z2, y2}});
        for (int a : {x1, z1, y1})
            for (int b : {x2, z2, y2}) L.arcs.emplace_back(a, b);
        if (i + 1 < n) {
            for (int from : {y1, y2})
                for (int slot : {0, 3})
                    L.arcs.emplace_back(from, L.block[i + 1][slot]);
        }
    }
    for (int u = 0; u < L.order; ++u)
        if (L.pendant_of[u] != -1) L.arcs.emplace_back(u, L.pendant_of[u]);
    for (int j = 0; j < I.clause_count(); ++j) {
        for (const auto& lit : I.clauses()[j].lits) {
            int sender = lit.negated ? L.block[lit.var][2]   // y^i_1
                                     : L.block[lit.var][5];  // y^i_2
            L.arcs.emplace_back(sender, L.c[j]);
            L.arcs.emplace_back(sender, L.cp[j]);
        }
    }
    return L;
}

}  // namespace

GadgetOutput build_nae_gadget(const CnfInstance& I) {
    NaeLayout L = nae_layout(I);
    GadgetOutput g;
    g.digraph = Digraph(L.order, L.arcs, L.labels);
    g.threshold = L.order - 2;
    std::ostringstream prov;
    prov << "nae3sat gadget: variables=" << I.variable_count()
         << " clauses=" << I.clause_count() << " threshold=" << *g.threshold;
    g.provenance = prov.str();
    ClassReport r = classify(g.digraph);
    if (!r.connected || !r.acyclic)
        throw std::logic_error("nae gadget must be connected and acyclic");
    return g;
}

Digraph lift_forest_gadget(const Digraph& d, int u) {
    if (u < 0 || u >= d.order())
        throw std::invalid_argument("lift target out of range");
    ClassReport r = classify(d);
    if (!r.connected || !r.acyclic)
        throw std::invalid_argument(
            "lift_forest_gadget: input must be connected and acyclic");
    const int x = d.order(), y = d.order() + 1;
    std::vector<Arc> arcs = d.arcs();
    arcs.emplace_back(x, y);
    arcs.emplace_back(y, u);
    return Digraph(d.order() + 2, std::move(arcs), d.labels());
}

Digraph to_one_perfect_gadget(const Digraph& d, OnePerfectMode mode,
                              int target) {
    if (target < 0 || target >= d.order())
        throw std::invalid_argument("gadget target out of range");
    const int v = d.order();
    std::vector<Arc> arcs = d.arcs();
    if (mode == OnePerfectMode::add_2cycle_pendant) {
        arcs.emplace_back(target, v);
        arcs.emplace_back(v, target);
    } else {
        arcs.emplace_back(v, target);
    }
    return Digraph(d.order() + 1, std::move(arcs), d.labels());
}

GadgetOutput build_linkage_kappa_gadget(const LinkageInstance& L, int k,
                                        int l) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (l < 1) throw std::invalid_argument("l must be at least 1");
    if (!classify(L.digraph).eulerian)
        throw std::invalid_argument(
            "build_linkage_kappa_gadget: base digraph must be eulerian");
    const int h = L.digraph.order();
    auto [s1, t1, s2, t2] = L.terminals;

    std::map<int, std::string> labels;
    for (int v = 0; v < h; ++v) labels[v] = "h_" + std::to_string(v);
    auto x = [&](int i) { return h + i - 1; };  // i in 1..k
    const int r1 = h + k, r2 = h + k + 1;
    for (int i = 1; i <= k; ++i) labels[x(i)] = "x_" + std::to_string(i);
    labels[r1] = "r_1";
    labels[r2] = "r_2";

    std::vector<Arc> arcs = L.digraph.arcs();
    arcs.insert(arcs.end(), {{x(k - 1), s1},
                             {t1, x(k)},
                             {x(k), s2},
                             {t2, x(1)},
                             {s1, r1},
                             {r1, t2},
                             {s2, r2},
                             {r2, t1}});
    int next = h + k + 2;
    if (l == 1) {
        for (int i = 1; i <= k - 2; ++i) arcs.emplace_back(x(i), x(i + 1));
    } else {
        // Every ring arc x_i x_{i+1} is carried by subdivided copies: l of
        // them towards x_2..x_{k-1}, l-1 on the last two hops.
        for (int i = 1; i <= k; ++i) {
            int copies = (i <= k - 2) ? l : l - 1;
            int to = (i == k) ? x(1) : x(i + 1);
            for (int j = 1; j <= copies; ++j) {
                int z = next++;
                labels[z] = "z^" + std::to_string(j) + "_{" +
                            std::to_string(i) + "," + std::to_string(i + 1) +
                            "}";
                arcs.emplace_back(x(i), z);
                arcs.emplace_back(z, to);
            }
        }
    }

    GadgetOutput g;
    g.digraph = Digraph(next, std::move(arcs), std::move(labels));
    for (int i = 1; i <= k; ++i) g.terminal_set.push_back(x(i));
    g.threshold = l;
    std::ostringstream prov;
    prov << "linkage-kappa gadget: base order " << h << ", k=" << k
         << ", l=" << l << ", terminals s1=" << s1 << " t1=" << t1
         << " s2=" << s2 << " t2=" << t2;
    g.provenance = prov.str();

    if (!classify(g.digraph).eulerian)
        throw std::logic_error("linkage gadget must be eulerian");
    for (int i = 1; i <= k; ++i)
        if (g.digraph.out_degree(x(i)) != l)
            throw std::logic_error("terminal out-degree must equal l");
    return g;
}

GadgetOutput split_vertices(const GadgetOutput& g) {
    const Digraph& d = g.digraph;
    const int n = d.order();
    std::vector<bool> in_h(n, false);
    for (int v = 0; v < n; ++v) {
        const std::string* tag = d.label(v);
        if (!tag)
            throw std::invalid_argument("split_vertices: missing role labels");
        in_h[v] = tag->rfind("h_", 0) == 0;
    }
    std::vector<int> minus(n, -1), plus(n, -1), single(n, -1);
    std::map<int, std::string> labels;
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (in_h[v]) {
            minus[v] = next;
            labels[next++] = *d.label(v) + "^-";
            plus[v] = next;
            labels[next++] = *d.label(v) + "^+";
        } else {
            single[v] = next;
            labels[next++] = *d.label(v);
        }
    }
    std::vector<Arc> arcs;
    for (int v = 0; v < n; ++v)
        if (in_h[v]) arcs.emplace_back(minus[v], plus[v]);
    for (auto [a, b] : d.arcs()) {
        int from = in_h[a] ? plus[a] : single[a];
        int to = in_h[b] ? minus[b] : single[b];
        arcs.emplace_back(from, to);
    }
    GadgetOutput out;
    out.digraph = Digraph(next, std::move(arcs), std::move(labels));
    for (int v : g.terminal_set) out.terminal_set.push_back(single[v]);
    out.threshold = g.threshold;
    out.provenance = g.provenance + "; vertices split for arc-disjoint packing";
    return out;
}

OutForest forest_from_assignment(const CnfInstance& I, const Assignment& a,
                                 const GadgetOutput& g) {
    if (!nae_satisfies(I, a))
        throw std::invalid_argument(
            "forest_from_assignment: assignment does not NAE-satisfy the "
            "instance");
    NaeLayout L = nae_layout(I);
    if (g.digraph != Digraph(L.order, L.arcs, L.labels))
        throw std::invalid_argument(
            "forest_from_assignment: gadget does not match the instance");

    // side 0 follows the truth assignment (row 1 of a true variable), side 1
    // is its complement; pendants ride along with their neighbours.
    std::vector<int> side(L.order, -1);
    for (int i = 0; i < I.variable_count(); ++i) {
        for (int slot = 0; slot < 6; ++slot) {
            bool row1 = slot < 3;
            side[L.block[i][slot]] = (row1 == a[i]) ? 0 : 1;
        }
    }
    for (int u = 0; u < L.order; ++u)
        if (L.pendant_of[u] != -1) side[L.pendant_of[u]] = side[u];
    for (int j = 0; j < I.clause_count(); ++j) {
        int senders_on_side0 = 0;
        for (const auto& lit : I.clauses()[j].lits) {
            int sender = lit.negated ? L.block[lit.var][2] : L.block[lit.var][5];
            if (side[sender] == 0) ++senders_on_side0;
        }
        if (senders_on_side0 != 1 && senders_on_side0 != 2)
            throw std::logic_error(
                "clause receiver must see one arc from one tree and two from "
                "the other");
        int clause_side = (senders_on_side0 == 1) ? 0 : 1;
        side[L.c[j]] = clause_side;
        side[L.cp[j]] = clause_side;  // same senders, same tree
    }

    // Tree ids ordered by smallest member: vertex 0 is x^1_1.
    int side_of_tree0 = side[0];
    OutForest f;
    f.tree_of.resize(L.order);
    for (int v = 0; v < L.order; ++v)
        f.tree_of[v] = (side[v] == side_of_tree0) ? 0 : 1;
    std::vector<int> indeg(L.order, 0);
    for (auto [u, v] : L.arcs)
        if (f.tree_of[u] == f.tree_of[v]) {
            f.arcs.emplace_back(u, v);
            ++indeg[v];
        }
    std::sort(f.arcs.begin(), f.arcs.end());
    f.roots.assign(2, -1);
    for (int v = 0; v < L.order; ++v)
        if (indeg[v] == 0) {
            if (f.roots[f.tree_of[v]] != -1)
                throw std::logic_error("tree must have a unique root");
            f.roots[f.tree_of[v]] = v;
        }
    return f;
}

}  // namespace steinerforge
