#include "steinerforge/matching.hpp"

#include "doctest.h"
#include "steinerforge/generators.hpp"
#include "test_support.hpp"

using namespace steinerforge;

namespace {

UGraph random_ugraph(int n, double p, Rng& rng) {
    std::bernoulli_distribution flip(p);
    std::vector<Arc> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng)) edges.emplace_back(u, v);
    return UGraph(n, std::move(edges));
}

bool is_valid_matching(const UGraph& g, const Matching& m) {
    std::vector<int> hits(g.order(), 0);
    for (auto [u, v] : m.edges) {
        if (!g.has_edge(u, v)) return false;
        ++hits[u];
        ++hits[v];
    }
    for (int h : hits)
        if (h > 1) return false;
    return true;
}

}  // namespace

TEST_CASE("matching fixtures") {
    UGraph path3(3, {{0, 1}, {1, 2}});
    Matching m = maximum_matching(path3);
    CHECK(m.size() == 1);
    CHECK_FALSE(m.perfect_for(path3));

    UGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Matching m4 = maximum_matching(c4);
    CHECK(m4.size() == 2);
    CHECK(m4.perfect_for(c4));

    UGraph empty(5);
    CHECK(maximum_matching(empty).size() == 0);
}

TEST_CASE("petersen graph has a perfect matching of size five") {
    UGraph p = sf_test::petersen_graph();
    REQUIRE(p.edge_count() == 15);
    CHECK(sf_test::brute_max_matching(p) == 5);
    Matching m = maximum_matching(p);
    CHECK(m.size() == 5);
    CHECK(is_valid_matching(p, m));
    CHECK(m.perfect_for(p));
}

TEST_CASE("blossom result equals exhaustive search on small graphs") {
    // Every graph on up to 4 vertices, then random graphs up to 8.
    for (int n = 0; n <= 4; ++n) {
        std::vector<Arc> all_edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
        const int m = static_cast<int>(all_edges.size());
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<Arc> edges;
            for (int e = 0; e < m; ++e)
                if (mask & (1u << e)) edges.push_back(all_edges[e]);
            UGraph g(n, std::move(edges));
            Matching found = maximum_matching(g);
            CHECK(is_valid_matching(g, found));
            CHECK(found.size() == sf_test::brute_max_matching(g));
        }
    }
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 5 + trial % 4;
        UGraph g = random_ugraph(n, 0.45, rng);
        Matching found = maximum_matching(g);
        CHECK(is_valid_matching(g, found));
        CHECK(found.size() == sf_test::brute_max_matching(g));
    }
}

TEST_CASE("adding an edge never shrinks the maximum matching") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 4 + trial % 5;
        UGraph g = random_ugraph(n, 0.3, rng);
        int before = maximum_matching(g).size();
        std::uniform_int_distribution<int> pick(0, n - 1);
        int u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        std::vector<Arc> edges = g.edges();
        edges.emplace_back(std::min(u, v), std::max(u, v));
        CHECK(maximum_matching(UGraph(n, std::move(edges))).size() >= before);
    }
}
