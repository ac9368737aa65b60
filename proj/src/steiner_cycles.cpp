#include "steinerforge/steiner_cycles.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "steinerforge/symmetric_packing.hpp"

namespace steinerforge {

std::vector<Arc> SCycle::arc_list() const {
    std::vector<Arc> arcs;
    const int m = length();
    arcs.reserve(m);
    for (int i = 0; i < m; ++i)
        arcs.emplace_back(vertices[i], vertices[(i + 1) % m]);
    return arcs;
}

bool SCycle::contains(int v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool SCycle::contains_all(const std::vector<int>& vs) const {
    for (int v : vs)
        if (!contains(v)) return false;
    return true;
}

SCycle SCycle::canonical(std::vector<int> verts) {
    auto min_it = std::min_element(verts.begin(), verts.end());
    std::rotate(verts.begin(), min_it, verts.end());
    return SCycle{std::move(verts)};
}

namespace {

void validate_terminals(const Digraph& d, const std::vector<int>& S,
                        std::size_t min_size) {
    if (S.size() < min_size)
        throw std::invalid_argument("terminal set too small");
    std::set<int> seen;
    for (int v : S) {
        if (v < 0 || v >= d.order())
            throw std::invalid_argument("terminal out of range");
        if (!seen.insert(v).second)
            throw std::invalid_argument("repeated terminal");
    }
}

class CycleEnumerator {
public:
    CycleEnumerator(const Digraph& d, const std::vector<int>& S,
                    std::size_t cap, const Budget& budget)
        : d_(d), cap_(cap), ticker_(budget) {
        root_ = *std::min_element(S.begin(), S.end());
        is_terminal_.assign(d.order(), false);
        for (int v : S) is_terminal_[v] = true;
        terminal_count_ = static_cast<int>(S.size());
        on_path_.assign(d.order(), false);
    }

    CycleEnumeration run(bool* budget_hit) {
        path_ = {root_};
        on_path_[root_] = true;
        terminals_on_path_ = 1;
        extend();
        if (budget_hit) *budget_hit = budget_hit_;
        return {std::move(out_), truncated_};
    }

private:
    // Every unvisited terminal (and the root, for closing) must remain
    // reachable through unused vertices from the path head.
    bool viable(int head) {
        int needed = terminal_count_ - terminals_on_path_;
        std::vector<bool> seen(d_.order(), false);
        std::queue<int> q;
        q.push(head);
        seen[head] = true;
        bool root_ok = false;
        int found = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : d_.out(v)) {
                if (w == root_) root_ok = true;
                if (seen[w] || on_path_[w]) continue;
                seen[w] = true;
                if (is_terminal_[w]) ++found;
                q.push(w);
            }
        }
        return root_ok && found >= needed;
    }

    void extend() {
        if (truncated_ || budget_hit_) return;
        if (ticker_.expired()) {
            budget_hit_ = true;
            return;
        }
        int head = path_.back();
        for (int w : d_.out(head)) {
            if (w == root_ && path_.size() >= 2 &&
                terminals_on_path_ == terminal_count_) {
                if (out_.size() >= cap_) {
                    truncated_ = true;
                    return;
                }
                out_.push_back(SCycle::canonical(path_));
            }
            if (on_path_[w] || w == root_) continue;
            if (truncated_ || budget_hit_) return;
            on_path_[w] = true;
            path_.push_back(w);
            if (is_terminal_[w]) ++terminals_on_path_;
            if (viable(w)) extend();
            if (is_terminal_[w]) --terminals_on_path_;
            path_.pop_back();
            on_path_[w] = false;
        }
    }

    const Digraph& d_;
    std::size_t cap_;
    BudgetTicker ticker_;
    int root_ = 0;
    int terminal_count_ = 0;
    int terminals_on_path_ = 0;
    std::vector<bool> is_terminal_, on_path_;
    std::vector<int> path_;
    std::vector<SCycle> out_;
    bool truncated_ = false;
    bool budget_hit_ = false;
};

bool arc_disjoint(const SCycle& a, const SCycle& b) {
    auto arcs_a = a.arc_list();
    std::sort(arcs_a.begin(), arcs_a.end());
    for (auto arc : b.arc_list())
        if (std::binary_search(arcs_a.begin(), arcs_a.end(), arc))
            return false;
    return true;
}

bool compatible(const SCycle& a, const SCycle& b,
                const std::vector<bool>& is_terminal, DisjointnessMode mode) {
    if (!arc_disjoint(a, b)) return false;
    if (mode == DisjointnessMode::arc) return true;
    // Common vertices must be exactly the terminals (both contain S).
    for (int v : a.vertices)
        if (!is_terminal[v] && b.contains(v)) return false;
    return true;
}

}  // namespace

CycleEnumeration enumerate_s_cycles(const Digraph& d,
                                    const std::vector<int>& S,
                                    std::size_t cap) {
    validate_terminals(d, S, 2);
    return CycleEnumerator(d, S, cap, Budget::unlimited()).run(nullptr);
}

bool check_disjointness(const std::vector<SCycle>& cycles,
                        const std::vector<int>& S, DisjointnessMode mode) {
    int max_v = -1;
    for (const auto& c : cycles)
        for (int v : c.vertices) max_v = std::max(max_v, v);
    for (int v : S) max_v = std::max(max_v, v);
    std::vector<bool> is_terminal(max_v + 1, false);
    for (int v : S) is_terminal[v] = true;
    for (const auto& c : cycles)
        if (!c.contains_all(S))
            throw std::invalid_argument(
                "check_disjointness: cycle omits a terminal");
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = i + 1; j < cycles.size(); ++j)
            if (!compatible(cycles[i], cycles[j], is_terminal, mode))
                return false;
    return true;
}

namespace {

// Branch-and-bound over the enumerated cycles; candidates filter down the
// compatibility relation lazily.
class PackSearch {
public:
    PackSearch(const std::vector<SCycle>& cycles,
               const std::vector<bool>& is_terminal, DisjointnessMode mode,
               std::optional<int> target, const Budget& budget)
        : cycles_(cycles),
          is_terminal_(is_terminal),
          mode_(mode),
          target_(target),
          ticker_(budget) {}

    bool run(std::vector<int>& best, bool* budget_hit) {
        std::vector<int> all(cycles_.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = static_cast<int>(i);
        chosen_.clear();
        explore(all);
        best = best_;
        if (budget_hit) *budget_hit = budget_hit_;
        return done_;
    }

private:
    void explore(const std::vector<int>& candidates) {
        if (done_ || budget_hit_) return;
        if (ticker_.expired()) {
            budget_hit_ = true;
            return;
        }
        if (chosen_.size() > best_.size()) best_ = chosen_;
        if (target_ && static_cast<int>(chosen_.size()) >= *target_) {
            done_ = true;
            return;
        }
        if (target_) {
            if (chosen_.size() + candidates.size() <
                static_cast<std::size_t>(*target_))
                return;
        } else if (chosen_.size() + candidates.size() <= best_.size()) {
            return;
        }
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (done_ || budget_hit_) return;
            // Same bound with the shrinking candidate tail.
            if (target_) {
                if (chosen_.size() + (candidates.size() - k) <
                    static_cast<std::size_t>(*target_))
                    return;
            } else if (chosen_.size() + (candidates.size() - k) <=
                       best_.size()) {
                return;
            }
            int idx = candidates[k];
            std::vector<int> rest;
            rest.reserve(candidates.size() - k - 1);
            for (std::size_t j = k + 1; j < candidates.size(); ++j)
                if (compatible(cycles_[idx], cycles_[candidates[j]],
                               is_terminal_, mode_))
                    rest.push_back(candidates[j]);
            chosen_.push_back(idx);
            explore(rest);
            chosen_.pop_back();
        }
    }

    const std::vector<SCycle>& cycles_;
    const std::vector<bool>& is_terminal_;
    DisjointnessMode mode_;
    std::optional<int> target_;
    BudgetTicker ticker_;
    std::vector<int> chosen_, best_;
    bool done_ = false;
    bool budget_hit_ = false;
};

}  // namespace

PackingCertificate pack_cycles(const Digraph& d, const std::vector<int>& S,
                               DisjointnessMode mode,
                               std::optional<int> target, std::size_t cap,
                               const Budget& budget) {
    validate_terminals(d, S, 2);
    if (target && *target < 1)
        throw std::invalid_argument("target must be at least 1");
    bool enum_budget_hit = false;
    CycleEnumeration found =
        CycleEnumerator(d, S, cap, budget).run(&enum_budget_hit);

    std::vector<bool> is_terminal(d.order(), false);
    for (int v : S) is_terminal[v] = true;

    PackingCertificate cert;
    cert.mode = mode;
    bool pack_budget_hit = false;
    std::vector<int> best;
    bool reached_target =
        PackSearch(found.cycles, is_terminal, mode, target, budget)
            .run(best, &pack_budget_hit);
    for (int idx : best) cert.cycles.push_back(found.cycles[idx]);
    cert.value = static_cast<int>(best.size());
    bool cut_short = found.truncated || enum_budget_hit || pack_budget_hit;
    cert.exhaustive = target ? (reached_target || !cut_short) : !cut_short;
    return cert;
}

std::optional<bool> is_k_cyclic(const Digraph& d, int k, const Budget& budget) {
    if (k < 2 || k > d.order())
        throw std::invalid_argument("k must satisfy 2 <= k <= n");
    const bool symmetric = classify(d).symmetric;
    std::vector<int> subset(k);
    // Lexicographic k-subsets of 0..n-1.
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
        if (budget.expired()) return std::nullopt;
        bool has_cycle;
        if (symmetric) {
            auto out = symmetric_kappa_at_least(d, subset, 1, budget);
            if (out.timed_out()) return std::nullopt;
            has_cycle = static_cast<bool>(out);
        } else {
            auto cert = pack_cycles(d, subset, DisjointnessMode::internal, 1,
                                    kDefaultCycleCap, budget);
            if (!cert.exhaustive) return std::nullopt;
            has_cycle = cert.value >= 1;
        }
        if (!has_cycle) return false;
        int i = k - 1;
        while (i >= 0 && subset[i] == d.order() - k + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    return true;
}

std::string serialize_certificate(const PackingCertificate& c) {
    std::ostringstream out;
    out << "mode "
        << (c.mode == DisjointnessMode::internal ? "internal" : "arc");
    out << "\nvalue " << c.value;
    out << "\nexhaustive " << (c.exhaustive ? "true" : "false");
    for (const auto& cycle : c.cycles) {
        out << "\nc";
        for (int v : cycle.vertices) out << " " << v;
    }
    return out.str();
}

}  // namespace steinerforge
