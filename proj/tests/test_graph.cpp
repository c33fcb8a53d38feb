#include <doctest.h>

#include <sstream>

#include "packbound/graph.hpp"

using namespace pb;

TEST_CASE("complement on the named small graphs") {
    CHECK(complement(complete_graph(3)) == empty_graph(3));
    CHECK(complement(empty_graph(1)) == empty_graph(1));
    // P3 with edges 01, 12 complements to the single edge 02; enumerate: of
    // the three pairs only (0,2) is absent from P3
    Graph p3 = path_graph(3);
    Graph c = complement(p3);
    CHECK(c.edge_count() == 1);
    CHECK(c.has_edge(0, 2));
}

TEST_CASE("complement is an involution") {
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = random_graph(2 + int(rng.next_below(11)), rng.next_double(), rng);
        CHECK(complement(complement(g)) == g);
    }
}

TEST_CASE("join basics") {
    CHECK(join(complete_graph(1), complete_graph(1)) == complete_graph(2));
    // join of two edgeless pairs is the 4-cycle 0-2-1-3-0
    Graph j = join(empty_graph(2), empty_graph(2));
    CHECK(j.vertex_count() == 4);
    CHECK(j.edge_count() == 4);
    CHECK(j.has_edge(0, 2));
    CHECK(j.has_edge(0, 3));
    CHECK(j.has_edge(1, 2));
    CHECK(j.has_edge(1, 3));
    CHECK_FALSE(j.has_edge(0, 1));
    CHECK_FALSE(j.has_edge(2, 3));

    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(1 + int(rng.next_below(8)), 0.4, rng);
        Graph h = random_graph(1 + int(rng.next_below(8)), 0.6, rng);
        CHECK(join(g, h).edge_count() ==
              g.edge_count() + h.edge_count() + g.vertex_count() * h.vertex_count());
    }
}

TEST_CASE("disjoint union and the De Morgan identity") {
    Graph u = disjoint_union(complete_graph(2), complete_graph(2));
    CHECK(u.vertex_count() == 4);
    CHECK(u.edge_count() == 2);
    Graph g = cycle_graph(5);
    CHECK(disjoint_union(g, empty_graph(0)) == g);

    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        Graph a = random_graph(1 + int(rng.next_below(7)), 0.5, rng);
        Graph b = random_graph(1 + int(rng.next_below(7)), 0.5, rng);
        CHECK(complement(disjoint_union(a, b)) == join(complement(a), complement(b)));
    }
}

TEST_CASE("independence number matches brute force") {
    CHECK(independence_number(cycle_graph(5)) == 2);
    CHECK(independence_number(cycle_graph(5)) == independence_number_bruteforce(cycle_graph(5)));
    CHECK(independence_number(empty_graph(9)) == 9);
    CHECK(independence_number(complete_graph(6)) == 1);
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + int(rng.next_below(16));
        Graph g = random_graph(n, 0.15 + 0.7 * rng.next_double(), rng);
        CHECK(independence_number(g) == independence_number_bruteforce(g));
    }
}

TEST_CASE("clique number") {
    CHECK(clique_number(complete_graph(4)) == 4);
    CHECK(clique_number(cycle_graph(5)) == 2);
    CHECK(clique_number(join(complete_graph(2), complete_graph(3))) == 5);
}

TEST_CASE("chromatic number matches brute force") {
    CHECK(chromatic_number(cycle_graph(5)) == 3);
    CHECK(chromatic_number(cycle_graph(5)) == chromatic_number_bruteforce(cycle_graph(5)));
    CHECK(chromatic_number(path_graph(4)) == 2);
    CHECK(chromatic_number(complete_graph(7)) == 7);
    Rng rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + int(rng.next_below(8));
        Graph g = random_graph(n, 0.2 + 0.6 * rng.next_double(), rng);
        CHECK(chromatic_number(g) == chromatic_number_bruteforce(g));
    }
}

TEST_CASE("sandwich relations among exact invariants") {
    Rng rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + int(rng.next_below(12));
        Graph g = random_graph(n, rng.next_double(), rng);
        CHECK(clique_number(g) <= chromatic_number(g));
        CHECK(independence_number(g) == clique_number(complement(g)));
    }
}

TEST_CASE("join additivity of clique and chromatic numbers") {
    Rng rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = random_graph(1 + int(rng.next_below(6)), 0.5, rng);
        Graph h = random_graph(1 + int(rng.next_below(6)), 0.5, rng);
        Graph j = join(g, h);
        CHECK(clique_number(j) == clique_number(g) + clique_number(h));
        CHECK(chromatic_number(j) == chromatic_number(g) + chromatic_number(h));
    }
}

TEST_CASE("homomorphism search") {
    // a proper coloring is exactly a homomorphism into a complete graph
    Rng rng(12);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = random_graph(1 + int(rng.next_below(7)), 0.5, rng);
        int chi = chromatic_number(g);
        auto hom = find_homomorphism(g, complete_graph(chi));
        REQUIRE(hom.has_value());
        CHECK(hom->valid());
        if (chi > 1) CHECK_FALSE(find_homomorphism(g, complete_graph(chi - 1)).has_value());
    }
    CHECK_FALSE(find_homomorphism(complete_graph(3), complete_graph(2)).has_value());
    Graph c5 = cycle_graph(5);
    auto id = find_homomorphism(c5, c5);
    REQUIRE(id.has_value());
    CHECK(id->valid());
}

TEST_CASE("homomorphism functoriality for clique and chromatic numbers") {
    Rng rng(13);
    int found = 0;
    for (int trial = 0; trial < 60 && found < 10; ++trial) {
        Graph g = random_graph(1 + int(rng.next_below(6)), 0.35, rng);
        Graph h = random_graph(1 + int(rng.next_below(7)), 0.7, rng);
        auto hom = find_homomorphism(g, h);
        if (!hom) continue;
        ++found;
        CHECK(clique_number(g) <= clique_number(h));
        CHECK(chromatic_number(g) <= chromatic_number(h));
    }
    CHECK(found >= 5);
}

TEST_CASE("size caps raise") {
    CHECK_THROWS_AS(independence_number(empty_graph(50)), SizeCapExceeded);
    CHECK_THROWS_AS(chromatic_number(empty_graph(30)), SizeCapExceeded);
    CHECK_THROWS_AS(find_homomorphism(empty_graph(11), empty_graph(3)), SizeCapExceeded);
    // caps are configuration values, not hard limits
    CHECK(independence_number(empty_graph(50), 64) == 50);
}

TEST_CASE("graph text format round trip") {
    Graph g = cycle_graph(6);
    std::stringstream ss;
    g.write(ss);
    Graph back = Graph::read(ss);
    CHECK(back == g);

    std::stringstream bad("3 1\n0 7\n");
    CHECK_THROWS(Graph::read(bad));
}

TEST_CASE("self-loops rejected") {
    Graph g(3);
    CHECK_THROWS(g.add_edge(1, 1));
}
