#include "steinerforge/digraph.hpp"

#include "doctest.h"
#include "steinerforge/generators.hpp"
#include "test_support.hpp"

using namespace steinerforge;

TEST_CASE("parse accepts the basic directives") {
    Digraph d = parse_digraph("n 2\na 0 1");
    CHECK(d.order() == 2);
    CHECK(d.arcs() == std::vector<Arc>{{0, 1}});

    Digraph t = parse_digraph("# a triangle\nn 3\na 0 1\na 1 2\na 2 0");
    CHECK(t.arc_count() == 3);
    CHECK(t.has_arc(2, 0));

    Digraph labeled = parse_digraph("n 1\nl 0 root vertex");
    REQUIRE(labeled.label(0) != nullptr);
    CHECK(*labeled.label(0) == "root vertex");
}

TEST_CASE("parse rejects malformed input with line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_digraph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("n 2\na 0 1\na 0 1") == 3);   // duplicate arc
    CHECK(line_of("n 2\na 1 1") == 2);          // loop
    CHECK(line_of("n 2\na 0 2") == 2);          // out of range
    CHECK(line_of("a 0 1") == 1);               // missing header
    CHECK(line_of("n 2\nq 1") == 2);            // unknown directive
    CHECK(line_of("n x") == 1);
}

TEST_CASE("serialize is the deterministic inverse of parse") {
    CHECK(serialize_digraph(Digraph(2, {{0, 1}})) == "n 2\na 0 1");
    CHECK(serialize_digraph(Digraph(0)) == "n 0");
    CHECK(serialize_digraph(sf_test::directed_triangle()) ==
          "n 3\na 0 1\na 1 2\na 2 0");

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Digraph d = random_digraph(1 + trial % 8, 0.4, rng);
        CHECK(parse_digraph(serialize_digraph(d)) == d);
    }
    Digraph with_label(3, {{0, 1}}, {{1, "mid"}});
    CHECK(parse_digraph(serialize_digraph(with_label)) == with_label);
}

TEST_CASE("classify matches the definitions on fixtures") {
    ClassReport two = classify(sf_test::two_cycle());
    CHECK(two.symmetric);
    CHECK(two.eulerian);
    CHECK(two.strong);
    CHECK(two.semicomplete);
    CHECK_FALSE(two.tournament);

    ClassReport tri = classify(sf_test::directed_triangle());
    CHECK(tri.tournament);
    CHECK(tri.eulerian);
    CHECK(tri.strong);
    CHECK_FALSE(tri.acyclic);

    ClassReport empty = classify(Digraph(0));
    CHECK(empty.connected);
    ClassReport single = classify(Digraph(1));
    CHECK(single.strong);
    CHECK(single.connected);

    ClassReport path = classify(Digraph(3, {{0, 1}, {1, 2}}));
    CHECK(path.acyclic);
    CHECK(path.connected);
    CHECK_FALSE(path.strong);
    CHECK_FALSE(path.eulerian);
}

TEST_CASE("classify respects the report invariants on random digraphs") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Digraph d = random_digraph(1 + trial % 7, 0.35, rng);
        ClassReport r = classify(d);
        if (r.tournament) CHECK(r.semicomplete);
        if (r.strong) CHECK(r.connected);
        if (r.eulerian) CHECK(r.connected);
        if (r.tournament && r.symmetric) CHECK(d.arc_count() == 0);
        if (r.acyclic && d.order() > 1) CHECK_FALSE(r.strong);

        // Reversal preserves these flags.
        ClassReport rev = classify(reverse_digraph(d));
        CHECK(rev.symmetric == r.symmetric);
        CHECK(rev.eulerian == r.eulerian);
        CHECK(rev.semicomplete == r.semicomplete);
        CHECK(rev.connected == r.connected);
    }
}

TEST_CASE("underlying graph merges antiparallel arcs") {
    CHECK(underlying_graph(sf_test::two_cycle()).edges() ==
          std::vector<Arc>{{0, 1}});
    CHECK(underlying_graph(sf_test::directed_triangle()).edge_count() == 3);
    CHECK(underlying_graph(Digraph(4)).edge_count() == 0);
    CHECK(underlying_graph(Digraph(4)).order() == 4);

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Digraph d = random_digraph(2 + trial % 6, 0.4, rng);
        CHECK(underlying_graph(d) == underlying_graph(symmetric_closure(d)));
    }
}

TEST_CASE("induced keeps exactly the inner arcs") {
    Digraph tri = sf_test::directed_triangle();
    Digraph sub = induced(tri, {0, 1});
    CHECK(sub.order() == 2);
    CHECK(sub.arcs() == std::vector<Arc>{{0, 1}});

    CHECK(induced(tri, {0, 1, 2}) == tri);
    CHECK(induced(sf_test::two_cycle(), {0}).arc_count() == 0);
    CHECK_THROWS_AS(induced(tri, {0, 5}), std::invalid_argument);

    auto mapped = induced_mapped(Digraph(5, {{1, 3}, {3, 4}}), {1, 3, 4});
    CHECK(mapped.original == std::vector<int>{1, 3, 4});
    CHECK(mapped.graph.arcs() == std::vector<Arc>{{0, 1}, {1, 2}});
}

TEST_CASE("digraph type rejects invariant violations") {
    CHECK_THROWS_AS(Digraph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Digraph(2, {{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Digraph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Digraph(1, {}, {{4, "ghost"}}), std::invalid_argument);
}
