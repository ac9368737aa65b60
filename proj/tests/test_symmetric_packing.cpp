#include "steinerforge/symmetric_packing.hpp"

#include <numeric>
#include <set>

#include "doctest.h"
#include "steinerforge/generators.hpp"
#include "test_support.hpp"

using namespace steinerforge;

namespace {

std::uint64_t count_partitions(std::vector<Arc> arcs, int l) {
    ArcPartitionEnumerator it(std::move(arcs), l);
    std::uint64_t n = 0;
    while (it.next()) ++n;
    return n;
}

bool internals_are_private(const std::vector<std::vector<int>>& paths,
                           const std::vector<int>& forbidden) {
    std::set<int> taken(forbidden.begin(), forbidden.end());
    for (const auto& p : paths)
        for (std::size_t i = 1; i + 1 < p.size(); ++i)
            if (!taken.insert(p[i]).second) return false;
    return true;
}

}  // namespace

TEST_CASE("skeleton counts follow (k-1)!") {
    CHECK(enumerate_skeletons({0, 1}).size() == 1);
    CHECK(enumerate_skeletons({0, 1, 2}).size() == 2);
    CHECK(enumerate_skeletons({0, 1, 2, 3}).size() == 6);
    CHECK(enumerate_skeletons({0, 1, 2, 3, 4}).size() == 24);
    CHECK(enumerate_skeletons({4, 9, 2}).size() == 2);

    for (int k = 2; k <= 6; ++k) {
        std::vector<int> S(k);
        std::iota(S.begin(), S.end(), 0);
        auto skels = enumerate_skeletons(S);
        std::uint64_t bound = 1;
        for (int i = 0; i < k; ++i) bound *= static_cast<std::uint64_t>(k);
        CHECK(skels.size() <= bound);
        std::set<std::vector<int>> seen;
        for (const auto& s : skels) {
            CHECK(s.order[0] == 0);  // canonical rotation
            CHECK(seen.insert(s.order).second);
        }
    }
    CHECK_THROWS_AS(enumerate_skeletons({3}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_skeletons({3, 3}), std::invalid_argument);
}

TEST_CASE("arc partition streams have exactly (l+1)^m entries") {
    CHECK(count_partitions({{0, 1}, {1, 0}}, 1) == 4);
    CHECK(count_partitions({}, 3) == 1);
    CHECK(count_partitions({{0, 1}, {1, 0}}, 2) == 9);

    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        int m = trial % 6;
        int l = 1 + trial % 2;
        std::vector<Arc> arcs;
        for (int a = 0; a < m; ++a) arcs.emplace_back(a, a + 1);
        std::uint64_t expect = 1;
        for (int a = 0; a < m; ++a) expect *= static_cast<std::uint64_t>(l + 1);
        CHECK(count_partitions(arcs, l) == expect);
    }

    ArcPartitionEnumerator it({{0, 1}}, 1);
    auto first = it.next();
    REQUIRE(first.has_value());
    CHECK(first->cls == std::vector<int>{0});  // deterministic order
    auto second = it.next();
    REQUIRE(second.has_value());
    CHECK(second->cls == std::vector<int>{1});
    CHECK_FALSE(it.next().has_value());
}

TEST_CASE("disjoint_paths fixtures") {
    // A plain symmetric path a-b-c.
    Digraph p3(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    auto got = disjoint_paths(p3, {{{0, 2}}, {0, 2}});
    REQUIRE(static_cast<bool>(got));
    CHECK((*got.value)[0] == std::vector<int>{0, 1, 2});

    // Star: two requests compete for the single centre vertex.
    Digraph star(5, {{4, 0}, {0, 4}, {4, 1}, {1, 4}, {4, 2}, {2, 4},
                     {4, 3}, {3, 4}});
    auto blocked = disjoint_paths(star, {{{0, 1}, {2, 3}}, {0, 1, 2, 3}});
    CHECK(blocked.status == SearchStatus::none);

    Digraph k4 = sf_test::symmetric_complete(4);
    auto pair = disjoint_paths(k4, {{{0, 1}, {1, 0}}, {0, 1}});
    REQUIRE(static_cast<bool>(pair));
    CHECK(internals_are_private(*pair.value, {0, 1}));
    CHECK((*pair.value)[0].front() == 0);
    CHECK((*pair.value)[0].back() == 1);
    CHECK((*pair.value)[1].front() == 1);
    CHECK((*pair.value)[1].back() == 0);

    // Direct arcs and degenerate pairs are fine when no terminal blocks them.
    auto direct = disjoint_paths(k4, {{{2, 3}, {1, 1}}, {}});
    REQUIRE(static_cast<bool>(direct));
    CHECK((*direct.value)[0].front() == 2);
    CHECK((*direct.value)[0].back() == 3);
    CHECK((*direct.value)[1] == std::vector<int>{1});
    CHECK(internals_are_private(*direct.value, {1, 2, 3}));
}

TEST_CASE("disjoint_paths internals avoid endpoints of other pairs") {
    // 0 -> 4 -> 1 is the only 0..1 route, but 4 is an endpoint of pair two.
    Digraph d(6, {{0, 4}, {4, 1}, {4, 5}, {5, 4}});
    auto got = disjoint_paths(d, {{{0, 1}, {4, 5}}, {}});
    CHECK(got.status == SearchStatus::none);
}

TEST_CASE("realize splices direct arcs and path segments") {
    Digraph k4 = sf_test::symmetric_complete(4);
    std::vector<int> S = {0, 1};
    Skeleton two = enumerate_skeletons(S)[0];

    ArcPartition both_direct{{{0, 1}, {1, 0}}, {1, 1}};
    auto got = realize(k4, S, both_direct, {two, two});
    REQUIRE(static_cast<bool>(got));
    REQUIRE(got.value->size() == 2);
    CHECK((*got.value)[0].vertices == std::vector<int>{0, 1});
    CHECK((*got.value)[1].length() == 4);
    CHECK(check_disjointness(*got.value, S, DisjointnessMode::internal));

    // Filter: an arc assigned to a cycle whose skeleton does not carry it.
    std::vector<int> S3 = {0, 1, 2};
    auto skels3 = enumerate_skeletons(S3);
    Skeleton fwd = skels3[0];  // 0 -> 1 -> 2 -> 0
    ArcPartition bad{{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}},
                     {0, 0, 1, 0, 0, 0}};
    CHECK(realize(k4, S3, bad, {fwd}).status == SearchStatus::none);

    // Mismatched arc list is a usage error, not a search miss.
    ArcPartition wrong{{{0, 1}}, {1}};
    CHECK_THROWS_AS(realize(k4, S, wrong, {two, two}),
                    std::invalid_argument);
}

TEST_CASE("symmetric_kappa_at_least closed forms") {
    Digraph k4 = sf_test::symmetric_complete(4);
    auto two = symmetric_kappa_at_least(k4, {0, 1}, 2);
    REQUIRE(static_cast<bool>(two));
    CHECK(two.value->value == 2);
    CHECK(two.value->exhaustive);
    CHECK(check_disjointness(two.value->cycles, {0, 1},
                             DisjointnessMode::internal));

    CHECK(symmetric_kappa_at_least(k4, {0, 1}, 3).status ==
          SearchStatus::none);

    Digraph c5 = sf_test::symmetric_cycle(5);
    CHECK(static_cast<bool>(symmetric_kappa_at_least(c5, {0, 2}, 1)));
    CHECK(symmetric_kappa_at_least(c5, {0, 2}, 2).status ==
          SearchStatus::none);

    CHECK_THROWS_AS(
        symmetric_kappa_at_least(sf_test::directed_triangle(), {0, 1}, 1),
        std::invalid_argument);

    auto cut = symmetric_kappa_at_least(k4, {0, 1}, 2, Budget::seconds(0));
    CHECK(cut.status == SearchStatus::timeout);
}

TEST_CASE("structured decision agrees with brute force") {
    Rng rng(47);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + trial % 6;
        Digraph d = random_connected_symmetric(n, rng);
        std::vector<int> verts(n);
        std::iota(verts.begin(), verts.end(), 0);
        std::shuffle(verts.begin(), verts.end(), rng);
        for (int k : {2, 3}) {
            if (k > n) continue;
            std::vector<int> S(verts.begin(), verts.begin() + k);
            for (int l : {1, 2}) {
                auto fast = symmetric_kappa_at_least(d, S, l);
                REQUIRE_FALSE(fast.timed_out());
                auto brute =
                    pack_cycles(d, S, DisjointnessMode::internal, l);
                REQUIRE(brute.exhaustive);
                CHECK(static_cast<bool>(fast) == (brute.value >= l));
                if (fast) {
                    CHECK(check_disjointness(fast.value->cycles, S,
                                             DisjointnessMode::internal));
                }
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}
