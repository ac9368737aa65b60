#include "steinerforge/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace steinerforge {

Digraph random_digraph(int n, double arc_prob, Rng& rng) {
    std::bernoulli_distribution flip(arc_prob);
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && flip(rng)) arcs.emplace_back(u, v);
    return Digraph(n, std::move(arcs));
}

Digraph random_tournament(int n, Rng& rng) {
    std::bernoulli_distribution flip(0.5);
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            arcs.emplace_back(flip(rng) ? Arc{u, v} : Arc{v, u});
    return Digraph(n, std::move(arcs));
}

Digraph random_semicomplete(int n, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            switch (pick(rng)) {
                case 0: arcs.emplace_back(u, v); break;
                case 1: arcs.emplace_back(v, u); break;
                default:
                    arcs.emplace_back(u, v);
                    arcs.emplace_back(v, u);
            }
        }
    return Digraph(n, std::move(arcs));
}

Digraph random_connected_symmetric(int n, Rng& rng, double edge_prob) {
    std::vector<Arc> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.emplace_back(parent(rng), v);
    }
    std::bernoulli_distribution flip(edge_prob);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng)) edges.emplace_back(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<Arc> arcs;
    for (auto [u, v] : edges) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    return Digraph(n, std::move(arcs));
}

Digraph random_eulerian(int n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("need at least two vertices");
    std::set<Arc> arcs;
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::uniform_int_distribution<int> len_dist(2, n);
    for (int attempts = 0; attempts < 10000; ++attempts) {
        int len = len_dist(rng);
        std::shuffle(verts.begin(), verts.end(), rng);
        std::vector<Arc> cycle;
        bool clean = true;
        for (int i = 0; i < len && clean; ++i) {
            Arc a{verts[i], verts[(i + 1) % len]};
            if (arcs.count(a)) clean = false;
            cycle.push_back(a);
        }
        if (!clean) continue;
        arcs.insert(cycle.begin(), cycle.end());
        Digraph d(n, {arcs.begin(), arcs.end()});
        if (classify(d).connected) return d;
    }
    throw std::runtime_error("random_eulerian: failed to build an instance");
}

}  // namespace steinerforge
