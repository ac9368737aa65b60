#include "steinerforge/symmetric_packing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace steinerforge {

std::vector<Arc> Skeleton::arc_list() const {
    std::vector<Arc> arcs;
    const int k = static_cast<int>(order.size());
    arcs.reserve(k);
    for (int i = 0; i < k; ++i)
        arcs.emplace_back(order[i], order[(i + 1) % k]);
    return arcs;
}

bool Skeleton::has_arc(int u, int v) const {
    const int k = static_cast<int>(order.size());
    for (int i = 0; i < k; ++i)
        if (order[i] == u && order[(i + 1) % k] == v) return true;
    return false;
}

std::vector<Skeleton> enumerate_skeletons(const std::vector<int>& S) {
    if (S.size() < 2)
        throw std::invalid_argument("skeletons need at least two terminals");
    std::vector<int> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("repeated terminal");
    // Fix the smallest terminal first; permute the rest.
    std::vector<int> rest(sorted.begin() + 1, sorted.end());
    std::vector<Skeleton> out;
    do {
        std::vector<int> order;
        order.reserve(sorted.size());
        order.push_back(sorted[0]);
        order.insert(order.end(), rest.begin(), rest.end());
        out.push_back(Skeleton{std::move(order)});
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

int ArcPartition::class_of(Arc a) const {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
    if (it == arcs.end() || *it != a)
        throw std::invalid_argument("arc not in D[S]");
    return cls[static_cast<std::size_t>(it - arcs.begin())];
}

ArcPartitionEnumerator::ArcPartitionEnumerator(std::vector<Arc> arcs_of_DS,
                                               int l)
    : num_classes_(l + 1) {
    if (l < 1) throw std::invalid_argument("need at least one cycle class");
    std::sort(arcs_of_DS.begin(), arcs_of_DS.end());
    current_.arcs = std::move(arcs_of_DS);
    current_.cls.assign(current_.arcs.size(), 0);
    total_ = 1;
    for (std::size_t i = 0; i < current_.arcs.size(); ++i)
        total_ *= static_cast<std::uint64_t>(num_classes_);
}

std::optional<ArcPartition> ArcPartitionEnumerator::next() {
    if (finished_) return std::nullopt;
    if (!started_) {
        started_ = true;
        return current_;
    }
    // Odometer increment, last position fastest.
    int i = static_cast<int>(current_.cls.size()) - 1;
    while (i >= 0 && current_.cls[i] == num_classes_ - 1) {
        current_.cls[i] = 0;
        --i;
    }
    if (i < 0) {
        finished_ = true;
        return std::nullopt;
    }
    ++current_.cls[i];
    return current_;
}

namespace {

class DisjointPathSearch {
public:
    DisjointPathSearch(const Digraph& d, const PathQuery& q,
                       const Budget& budget)
        : d_(d), q_(q), ticker_(budget) {
        blocked_.assign(d.order(), false);
        for (int v : q.forbidden) {
            check_vertex(v);
            blocked_[v] = true;
        }
        for (auto [s, t] : q.pairs) {
            check_vertex(s);
            check_vertex(t);
            blocked_[s] = true;
            blocked_[t] = true;
        }
        used_.assign(d.order(), false);
    }

    Outcome<std::vector<std::vector<int>>> run() {
        paths_.assign(q_.pairs.size(), {});
        if (solve(0)) return Outcome<std::vector<std::vector<int>>>::found(paths_);
        if (budget_hit_) return Outcome<std::vector<std::vector<int>>>::timeout();
        return Outcome<std::vector<std::vector<int>>>::none();
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= d_.order())
            throw std::invalid_argument("path query vertex out of range");
    }

    bool solve(std::size_t idx) {
        if (budget_hit_) return false;
        if (idx == q_.pairs.size()) return true;
        auto [s, t] = q_.pairs[idx];
        if (s == t) {
            paths_[idx] = {s};
            return solve(idx + 1);
        }
        current_ = {s};
        return extend(idx, s, t);
    }

    // Grow the current path towards t over unclaimed non-blocked vertices.
    bool extend(std::size_t idx, int v, int t) {
        if (ticker_.expired()) {
            budget_hit_ = true;
            return false;
        }
        for (int w : d_.out(v)) {
            if (w == t) {
                auto path = current_;
                path.push_back(t);
                paths_[idx] = path;
                std::vector<int> internals(current_.begin() + 1,
                                           current_.end());
                for (int x : internals) used_[x] = true;
                auto saved = current_;
                if (solve(idx + 1)) return true;
                current_ = saved;
                for (int x : internals) used_[x] = false;
                if (budget_hit_) return false;
                continue;
            }
            if (blocked_[w] || used_[w]) continue;
            if (std::find(current_.begin(), current_.end(), w) !=
                current_.end())
                continue;
            current_.push_back(w);
            if (extend(idx, w, t)) return true;
            current_.pop_back();
            if (budget_hit_) return false;
        }
        return false;
    }

    const Digraph& d_;
    const PathQuery& q_;
    BudgetTicker ticker_;
    std::vector<bool> blocked_, used_;
    std::vector<int> current_;
    std::vector<std::vector<int>> paths_;
    bool budget_hit_ = false;
};

}  // namespace

Outcome<std::vector<std::vector<int>>> disjoint_paths(const Digraph& d,
                                                      const PathQuery& q,
                                                      const Budget& budget) {
    return DisjointPathSearch(d, q, budget).run();
}

namespace {

std::vector<Arc> arcs_inside(const Digraph& d, const std::vector<int>& S) {
    std::vector<bool> in_s(d.order(), false);
    for (int v : S) in_s[v] = true;
    std::vector<Arc> arcs;
    for (auto [u, v] : d.arcs())
        if (in_s[u] && in_s[v]) arcs.emplace_back(u, v);
    return arcs;
}

Digraph delete_arcs(const Digraph& d, const std::vector<Arc>& gone) {
    std::set<Arc> drop(gone.begin(), gone.end());
    std::vector<Arc> arcs;
    for (auto a : d.arcs())
        if (!drop.count(a)) arcs.push_back(a);
    return Digraph(d.order(), std::move(arcs), d.labels());
}

}  // namespace

Outcome<std::vector<SCycle>> realize(const Digraph& d,
                                     const std::vector<int>& S,
                                     const ArcPartition& partition,
                                     const std::vector<Skeleton>& skels,
                                     const Budget& budget) {
    const int l = static_cast<int>(skels.size());
    if (l < 1) throw std::invalid_argument("realize: need at least one skeleton");
    std::vector<Arc> ds_arcs = arcs_inside(d, S);
    if (partition.arcs != ds_arcs)
        throw std::invalid_argument(
            "realize: partition does not label exactly the arcs of D[S]");
    for (int c : partition.cls)
        if (c < 0 || c > l)
            throw std::invalid_argument("realize: class out of range");

    // Feasibility filter: a direct arc assigned to cycle i must lie on its
    // skeleton. No path search runs when this fails.
    for (std::size_t a = 0; a < partition.arcs.size(); ++a) {
        int c = partition.cls[a];
        if (c >= 1 && !skels[c - 1].has_arc(partition.arcs[a].first,
                                            partition.arcs[a].second))
            return Outcome<std::vector<SCycle>>::none();
    }

    // Every skeleton arc not served by its own direct-arc class becomes one
    // (u,v) request against D - A[S].
    struct Segment {
        int cycle;
        Arc arc;
        bool direct;
        int pair_index = -1;
    };
    std::vector<Segment> segments;
    PathQuery q;
    q.forbidden = S;
    for (int i = 0; i < l; ++i) {
        for (Arc a : skels[i].arc_list()) {
            bool direct = false;
            auto it = std::lower_bound(partition.arcs.begin(),
                                       partition.arcs.end(), a);
            if (it != partition.arcs.end() && *it == a &&
                partition.cls[static_cast<std::size_t>(
                    it - partition.arcs.begin())] == i + 1)
                direct = true;
            Segment seg{i, a, direct};
            if (!direct) {
                seg.pair_index = static_cast<int>(q.pairs.size());
                q.pairs.push_back(a);
            }
            segments.push_back(seg);
        }
    }

    Digraph residual = delete_arcs(d, ds_arcs);
    auto paths = disjoint_paths(residual, q, budget);
    if (paths.timed_out()) return Outcome<std::vector<SCycle>>::timeout();
    if (!paths) return Outcome<std::vector<SCycle>>::none();

    // Splice direct arcs and found paths into the l cycles.
    std::vector<SCycle> cycles;
    for (int i = 0; i < l; ++i) {
        std::vector<int> verts;
        for (const auto& seg : segments) {
            if (seg.cycle != i) continue;
            verts.push_back(seg.arc.first);
            if (!seg.direct) {
                const auto& p = (*paths.value)[seg.pair_index];
                verts.insert(verts.end(), p.begin() + 1, p.end() - 1);
            }
        }
        cycles.push_back(SCycle::canonical(std::move(verts)));
    }

    // The family must come out internally disjoint and use exactly its
    // classes inside S; violations are construction bugs, not inputs.
    if (!check_disjointness(cycles, S, DisjointnessMode::internal))
        throw std::logic_error("realize: family not internally disjoint");
    for (int i = 0; i < l; ++i) {
        std::vector<Arc> used_inside;
        auto arcs = cycles[static_cast<std::size_t>(i)].arc_list();
        std::set<Arc> ds(ds_arcs.begin(), ds_arcs.end());
        for (Arc a : arcs)
            if (ds.count(a)) used_inside.push_back(a);
        std::vector<Arc> expected;
        for (std::size_t a = 0; a < partition.arcs.size(); ++a)
            if (partition.cls[a] == i + 1) expected.push_back(partition.arcs[a]);
        std::sort(used_inside.begin(), used_inside.end());
        if (used_inside != expected)
            throw std::logic_error("realize: cycle uses wrong D[S] arcs");
    }
    return Outcome<std::vector<SCycle>>::found(std::move(cycles));
}

Outcome<PackingCertificate> symmetric_kappa_at_least(const Digraph& d,
                                                     const std::vector<int>& S,
                                                     int l,
                                                     const Budget& budget) {
    if (!classify(d).symmetric)
        throw std::invalid_argument(
            "symmetric_kappa_at_least: input is not symmetric");
    if (l < 1) throw std::invalid_argument("l must be at least 1");
    if (S.size() < 2)
        throw std::invalid_argument("terminal set too small");

    const std::vector<Skeleton> skels = enumerate_skeletons(S);
    const std::vector<Arc> ds_arcs = arcs_inside(d, S);

    ArcPartitionEnumerator parts(ds_arcs, l);
    while (auto partition = parts.next()) {
        // Odometer over skeleton l-tuples, first position slowest.
        std::vector<std::size_t> pick(static_cast<std::size_t>(l), 0);
        while (true) {
            if (budget.expired())
                return Outcome<PackingCertificate>::timeout();
            std::vector<Skeleton> tuple;
            tuple.reserve(pick.size());
            for (std::size_t p : pick) tuple.push_back(skels[p]);
            auto got = realize(d, S, *partition, tuple, budget);
            if (got.timed_out()) return Outcome<PackingCertificate>::timeout();
            if (got) {
                PackingCertificate cert;
                cert.mode = DisjointnessMode::internal;
                cert.value = l;
                cert.cycles = std::move(*got.value);
                cert.exhaustive = true;
                return Outcome<PackingCertificate>::found(std::move(cert));
            }
            int pos = l - 1;
            while (pos >= 0 && pick[static_cast<std::size_t>(pos)] ==
                                   skels.size() - 1) {
                pick[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++pick[static_cast<std::size_t>(pos)];
        }
    }
    return Outcome<PackingCertificate>::none();
}

}  // namespace steinerforge
