#include "steinerforge/out_forest.hpp"

#include "doctest.h"
#include "steinerforge/generators.hpp"
#include "test_support.hpp"

using namespace steinerforge;

namespace {

// All trees of an i-perfect out-forest of a semicomplete digraph have at
// most two vertices.
bool trees_at_most_two(const OutForest& f) {
    std::vector<int> count(f.tree_count(), 0);
    for (int t : f.tree_of)
        if (++count[t] > 2) return false;
    return true;
}

}  // namespace

TEST_CASE("verify_out_forest on fixtures") {
    Digraph arc(2, {{0, 1}});
    OutForest f{{0, 0}, {0}, {{0, 1}}};
    ForestReport r = verify_out_forest(arc, f);
    CHECK(r.spanning);
    CHECK(r.trees_induced);
    CHECK(r.out_tree_valid);
    CHECK(r.even_degree_count == 0);
    CHECK(r.arc_count == 1);
    CHECK(r.is_i_perfect(0));

    OutForest singletons{{0, 1}, {0, 1}, {}};
    ForestReport s = verify_out_forest(sf_test::two_cycle(), singletons);
    CHECK(s.spanning);
    CHECK(s.out_tree_valid);
    CHECK(s.even_degree_count == 2);
    CHECK_FALSE(s.is_i_perfect(0));
    CHECK_FALSE(s.is_i_perfect(1));

    // Non-induced: the forest skips arc (0,1) inside one tree.
    Digraph tri = sf_test::directed_triangle();
    OutForest skip{{0, 0, 0}, {0}, {{0, 1}, {1, 2}}};
    ForestReport t = verify_out_forest(tri, skip);
    CHECK_FALSE(t.trees_induced);

    OutForest too_small{{0}, {0}, {}};
    CHECK_THROWS_AS(verify_out_forest(arc, too_small), std::invalid_argument);
}

TEST_CASE("max_i_perfect on fixtures") {
    auto best = max_i_perfect(sf_test::directed_triangle(), 1);
    REQUIRE(static_cast<bool>(best));
    CHECK(best.value->arc_count() == 1);
    ForestReport r = verify_out_forest(sf_test::directed_triangle(),
                                       *best.value);
    CHECK(r.is_i_perfect(1));

    auto single = max_i_perfect(Digraph(2, {{0, 1}}), 0);
    REQUIRE(static_cast<bool>(single));
    CHECK(single.value->arc_count() == 1);

    CHECK(max_i_perfect(sf_test::two_cycle(), 0).status ==
          SearchStatus::none);
    CHECK(max_i_perfect(sf_test::two_cycle(), 1).status ==
          SearchStatus::none);

    // Trivial orders.
    CHECK(static_cast<bool>(max_i_perfect(Digraph(0), 0)));
    CHECK(max_i_perfect(Digraph(0), 1).status == SearchStatus::none);
    CHECK(max_i_perfect(Digraph(1), 0).status == SearchStatus::none);
    CHECK(static_cast<bool>(max_i_perfect(Digraph(1), 1)));

    CHECK_THROWS_AS(max_i_perfect(Digraph(1), 2), std::invalid_argument);
}

TEST_CASE("max_i_perfect matches both brute-force oracles") {
    Rng rng(101);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + trial % 4;
        Digraph d = random_digraph(n, 0.45, rng);
        for (int i = 0; i <= 1; ++i) {
            auto arc_oracle = sf_test::brute_arc_subsets_max_i_perfect(d, i);
            auto part_oracle = sf_test::brute_partitions_max_i_perfect(d, i);
            CHECK(arc_oracle == part_oracle);
            auto got = max_i_perfect(d, i);
            REQUIRE_FALSE(got.timed_out());
            if (arc_oracle) {
                REQUIRE(static_cast<bool>(got));
                CHECK(got.value->arc_count() == *arc_oracle);
                CHECK(verify_out_forest(d, *got.value).is_i_perfect(i));
            } else {
                CHECK(got.status == SearchStatus::none);
            }
        }
    }
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + trial % 2;
        Digraph d = random_digraph(n, 0.4, rng);
        for (int i = 0; i <= 1; ++i) {
            auto oracle = sf_test::brute_partitions_max_i_perfect(d, i);
            auto got = max_i_perfect(d, i);
            REQUIRE_FALSE(got.timed_out());
            CHECK(static_cast<bool>(got) == oracle.has_value());
            if (oracle) CHECK(got.value->arc_count() == *oracle);
        }
    }
}

TEST_CASE("parity of the order follows from existence") {
    Rng rng(55);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + trial % 7;
        Digraph d = random_digraph(n, 0.4, rng);
        if (auto f = max_i_perfect(d, 0); f) CHECK(n % 2 == 0);
        if (auto f = max_i_perfect(d, 1); f) CHECK(n % 2 == 1);
    }
}

TEST_CASE("decide_i_perfect_min_arcs and the out-branching shortcut") {
    Digraph path(3, {{0, 1}, {1, 2}});
    CHECK(static_cast<bool>(decide_i_perfect_min_arcs(path, 1, 2)));
    CHECK(decide_i_perfect_min_arcs(path, 0, 2).status == SearchStatus::none);

    auto witness = decide_i_perfect_min_arcs(path, 1, 2);
    REQUIRE(static_cast<bool>(witness));
    ForestReport r = verify_out_forest(path, *witness.value);
    CHECK(r.is_i_perfect(1));
    CHECK(r.arc_count == 2);

    // min_arcs below the maximum still returns some witness.
    CHECK(static_cast<bool>(decide_i_perfect_min_arcs(path, 1, 0)));
    CHECK_THROWS_AS(decide_i_perfect_min_arcs(path, 1, 3),
                    std::invalid_argument);

    // Agreement with the exact maximiser on random inputs.
    Rng rng(77);
    for (int trial = 0; trial < 80; ++trial) {
        int n = 2 + trial % 5;
        Digraph d = random_digraph(n, 0.4, rng);
        for (int i = 0; i <= 1; ++i) {
            auto best = max_i_perfect(d, i);
            REQUIRE_FALSE(best.timed_out());
            for (int min_arcs = 0; min_arcs <= n - 1; ++min_arcs) {
                bool expect = static_cast<bool>(best) &&
                              best.value->arc_count() >= min_arcs;
                auto got = decide_i_perfect_min_arcs(d, i, min_arcs);
                REQUIRE_FALSE(got.timed_out());
                CHECK(static_cast<bool>(got) == expect);
                if (got)
                    CHECK(verify_out_forest(d, *got.value).is_i_perfect(i));
            }
        }
    }
}

TEST_CASE("semicomplete fast path on fixtures") {
    Rng rng(5);
    Digraph t4 = random_tournament(4, rng);
    auto perfect = semicomplete_i_perfect(t4, 0);
    REQUIRE(perfect.has_value());
    CHECK(verify_out_forest(t4, *perfect).is_i_perfect(0));
    CHECK(perfect->arc_count() == 2);  // always n/2 arcs

    CHECK_FALSE(semicomplete_i_perfect(sf_test::two_cycle(), 0).has_value());
    CHECK_FALSE(semicomplete_i_perfect(sf_test::two_cycle(), 1).has_value());

    auto tri = semicomplete_i_perfect(sf_test::directed_triangle(), 1);
    REQUIRE(tri.has_value());
    CHECK(verify_out_forest(sf_test::directed_triangle(), *tri)
              .is_i_perfect(1));
    CHECK(trees_at_most_two(*tri));

    CHECK_THROWS_AS(semicomplete_i_perfect(Digraph(3, {{0, 1}}), 0),
                    std::invalid_argument);
}

TEST_CASE("semicomplete fast path equals the exact search") {
    Rng rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + trial % 8;
        Digraph d = random_semicomplete(n, rng);
        for (int i = 0; i <= 1; ++i) {
            auto fast = semicomplete_i_perfect(d, i);
            auto exact = max_i_perfect(d, i);
            REQUIRE_FALSE(exact.timed_out());
            CHECK(fast.has_value() == static_cast<bool>(exact));
            if (fast) {
                CHECK(verify_out_forest(d, *fast).is_i_perfect(i));
                CHECK(trees_at_most_two(*fast));
                CHECK(trees_at_most_two(*exact.value));
            }
        }
    }
}

TEST_CASE("tournament parity, exhaustive on small orders") {
    // Every labeled tournament with n <= 5.
    for (int n = 1; n <= 5; ++n) {
        std::vector<Arc> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        const int m = static_cast<int>(pairs.size());
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<Arc> arcs;
            for (int e = 0; e < m; ++e)
                arcs.push_back(mask & (1u << e)
                                   ? pairs[e]
                                   : Arc{pairs[e].second, pairs[e].first});
            Digraph t(n, std::move(arcs));
            CHECK(static_cast<bool>(max_i_perfect(t, 0)) == (n % 2 == 0));
            CHECK(static_cast<bool>(max_i_perfect(t, 1)) == (n % 2 == 1));
        }
    }
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        Digraph t = random_tournament(6, rng);
        CHECK(static_cast<bool>(max_i_perfect(t, 0)));
        CHECK(max_i_perfect(t, 1).status == SearchStatus::none);
    }
}

TEST_CASE("symmetric digraphs of order at least two have no i-perfect forest") {
    Rng rng(42);
    for (int trial = 0; trial < 80; ++trial) {
        int n = 2 + trial % 7;
        Digraph d = random_connected_symmetric(n, rng);
        CHECK(max_i_perfect(d, 0).status == SearchStatus::none);
        CHECK(max_i_perfect(d, 1).status == SearchStatus::none);
    }
}

TEST_CASE("budget exhaustion is reported as timeout, not absence") {
    Rng rng(1);
    Digraph big = random_tournament(18, rng);
    auto out = max_i_perfect(big, 1, Budget::seconds(1e-4));
    CHECK(out.status == SearchStatus::timeout);
    auto dec = decide_i_perfect_min_arcs(big, 1, 2, Budget::seconds(1e-4));
    CHECK(dec.status == SearchStatus::timeout);
}

TEST_CASE("forest certificates round-trip") {
    Digraph path(3, {{0, 1}, {1, 2}});
    auto witness = decide_i_perfect_min_arcs(path, 1, 2);
    REQUIRE(static_cast<bool>(witness));
    std::string text = serialize_out_forest(*witness.value);
    OutForest parsed = parse_out_forest(text, path.order());
    CHECK(parsed.tree_of == witness.value->tree_of);
    CHECK(parsed.roots == witness.value->roots);
    CHECK(parsed.arcs == witness.value->arcs);

    CHECK_THROWS_AS(parse_out_forest("t 0 : 0\n", 2), ParseError);
    CHECK_THROWS_AS(parse_out_forest("t 0 : 0 1\nt 1 : 1", 2), ParseError);
}

TEST_CASE("report invariant: arcs equal vertices minus trees") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 6;
        Digraph d = random_digraph(n, 0.5, rng);
        for (int i = 0; i <= 1; ++i) {
            auto f = max_i_perfect(d, i);
            if (!f) continue;
            ForestReport r = verify_out_forest(d, *f.value);
            REQUIRE(r.out_tree_valid);
            REQUIRE(r.spanning);
            CHECK(r.arc_count == n - f.value->tree_count());
        }
    }
}
