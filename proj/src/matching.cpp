#include "steinerforge/matching.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace steinerforge {

namespace {

// Classic O(V^3) augmenting-path search with blossom contraction tracked
// through base[] pointers.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const UGraph& g)
        : g_(g), n_(g.order()), match_(n_, -1), parent_(n_), base_(n_) {}

    std::vector<int> run() {
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1) augment_from(v);
        return match_;
    }

private:
    int lowest_common_base(int a, int b) const {
        std::vector<bool> marked(n_, false);
        int cur = a;
        while (true) {
            cur = base_[cur];
            marked[cur] = true;
            if (match_[cur] == -1) break;
            cur = parent_[match_[cur]];
        }
        cur = b;
        while (!marked[base_[cur]]) cur = parent_[match_[base_[cur]]];
        return base_[cur];
    }

    void mark_path(int v, int b, int child, std::vector<bool>& in_blossom) {
        while (base_[v] != b) {
            in_blossom[base_[v]] = true;
            in_blossom[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    void augment_from(int root) {
        std::fill(parent_.begin(), parent_.end(), -1);
        std::iota(base_.begin(), base_.end(), 0);
        std::vector<bool> used(n_, false);
        used[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root ||
                    (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    // Odd cycle found; contract it to its base.
                    int b = lowest_common_base(v, to);
                    std::vector<bool> in_blossom(n_, false);
                    mark_path(v, b, to, in_blossom);
                    mark_path(to, b, v, in_blossom);
                    for (int i = 0; i < n_; ++i)
                        if (in_blossom[base_[i]]) {
                            base_[i] = b;
                            if (!used[i]) {
                                used[i] = true;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1) {
                        // Augmenting path reached an exposed vertex.
                        int u = to;
                        while (u != -1) {
                            int pv = parent_[u], ppv = match_[pv];
                            match_[u] = pv;
                            match_[pv] = u;
                            u = ppv;
                        }
                        return;
                    }
                    used[match_[to]] = true;
                    q.push(match_[to]);
                }
            }
        }
    }

    const UGraph& g_;
    int n_;
    std::vector<int> match_, parent_, base_;
};

}  // namespace

Matching maximum_matching(const UGraph& g) {
    std::vector<int> match = BlossomMatcher(g).run();
    Matching m;
    for (int v = 0; v < g.order(); ++v)
        if (match[v] > v) m.edges.emplace_back(v, match[v]);
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

}  // namespace steinerforge
