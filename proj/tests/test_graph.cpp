#include "doctest.h"

#include <cmath>

#include "cohesion/error.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/metrics.hpp"
#include "oracles.hpp"

using namespace cohesion;

namespace {

Graph cycle_graph(std::size_t n) {
    Graph g(n);
    for (Node i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (Node i = 0; i < n; ++i)
        for (Node j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("edge list parsing") {
    auto p3 = parse_edge_list("0 1\n1 2");
    CHECK(p3.graph.node_count() == 3);
    CHECK(p3.graph.edge_count() == 2);

    auto w = parse_edge_list("a b 2.0\nb a 2.0\n");
    CHECK(w.graph.node_count() == 2);
    CHECK(w.graph.edge_count() == 1);
    CHECK(w.graph.weight(0, 1) == 2.0);
    CHECK(w.labels == std::vector<std::string>{"a", "b"});

    auto commented = parse_edge_list("# header\n\nx y # trailing\n  y z 0.5\n");
    CHECK(commented.graph.edge_count() == 2);
    CHECK(commented.graph.weight(1, 2) == 0.5);
}

TEST_CASE("edge list errors carry line numbers") {
    try {
        parse_edge_list("0 1\n0 1 2 3\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.code() == ErrorCode::parse);
    }
    CHECK_THROWS_AS(parse_edge_list("0 1 abc\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1 -1\n"), ValidationError);
    CHECK_THROWS_AS(parse_edge_list("0 0\n"), ValidationError);
    CHECK_THROWS_AS(parse_edge_list("0 1 1\n1 0 2\n"), ValidationError);
}

TEST_CASE("edge list round trip is byte stable") {
    auto g = parse_edge_list("c a\nb c 2.5\nz a\n");
    const std::string once = to_edge_list(g.graph, g.labels);
    auto again = parse_edge_list(once);
    CHECK(again.graph == g.graph);
    CHECK(again.labels == g.labels);
    CHECK(to_edge_list(again.graph, again.labels) == once);

    Graph iso(4);
    iso.add_edge(0, 1);
    auto back = parse_edge_list(to_edge_list(iso));
    CHECK(back.graph == iso);
}

TEST_CASE("directed ties symmetrize by policy") {
    auto mutual = parse_edge_list("0 1 2\n1 0 3\n1 2\n", true, TiePolicy::mutual).graph.undirected();
    CHECK(mutual.edge_count() == 1);
    CHECK(mutual.weight(0, 1) == 2.0);
    auto any = parse_edge_list("0 1 2\n1 0 3\n1 2\n", true, TiePolicy::any).graph.undirected();
    CHECK(any.edge_count() == 2);
    CHECK(any.weight(0, 1) == 3.0);
}

TEST_CASE("density") {
    CHECK(density(complete_graph(4)) == 1.0);
    CHECK(density(cycle_graph(6)) == doctest::Approx(0.4));
    CHECK_THROWS_AS(density(Graph(1)), DomainError);
}

TEST_CASE("components") {
    CHECK(connected_components(complete_graph(5)).count == 1);
    Graph two(6);
    two.add_edge(0, 1), two.add_edge(1, 2), two.add_edge(0, 2);
    two.add_edge(3, 4), two.add_edge(4, 5), two.add_edge(3, 5);
    auto c = connected_components(two);
    CHECK(c.count == 2);
    CHECK(c.label == std::vector<std::size_t>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("distance summary") {
    auto k = distance_summary(complete_graph(7));
    CHECK(k.mean_distance == 1.0);
    CHECK(k.diameter == 1);
    auto c6 = distance_summary(cycle_graph(6));
    CHECK(c6.mean_distance == doctest::Approx(1.8));
    CHECK(c6.diameter == 3);
    Graph split(4);
    split.add_edge(0, 1);
    CHECK_FALSE(distance_summary(split).finite);
}

TEST_CASE("distance summary agrees with Floyd-Warshall") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(29);
        Graph g = oracle::gnp(n, 0.05 + 0.3 * rng.uniform(), rng);
        auto d = oracle::floyd_warshall(g);
        std::size_t sum = 0, worst = 0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (d[i][j] == oracle::kInf) finite = false;
                else sum += d[i][j], worst = std::max(worst, d[i][j]);
            }
        auto s = distance_summary(g);
        REQUIRE(s.finite == finite);
        if (finite) {
            CHECK(s.diameter == worst);
            CHECK(s.mean_distance == static_cast<double>(sum) / static_cast<double>(n * (n - 1) / 2));
        }
    }
}

TEST_CASE("vertex connectivity") {
    CHECK(vertex_connectivity(cycle_graph(8)) == 2);
    CHECK(vertex_connectivity(complete_graph(6)) == 5);
    Graph split(4);
    split.add_edge(0, 1), split.add_edge(2, 3);
    CHECK(vertex_connectivity(split) == 0);
    CHECK_THROWS_AS(vertex_connectivity(Graph(1)), DomainError);
}

TEST_CASE("vertex connectivity agrees with brute force and Whitney") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng.below(13);
        Graph g = oracle::gnp(n, 0.2 + 0.6 * rng.uniform(), rng);
        const std::size_t kappa = vertex_connectivity(g);
        CHECK(kappa == oracle::brute_force_kappa(g));
        CHECK(kappa <= g.min_degree());
        if (kappa >= 1 && kappa + 1 < n) {
            // removing any kappa-1 nodes keeps g connected
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + static_cast<long>(kappa - 1), true);
            do {
                CHECK(oracle::connected_without(g, pick));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
    }
}

TEST_CASE("longest chordless cycle") {
    auto c10 = longest_chordless_cycle(cycle_graph(10));
    REQUIRE(c10);
    CHECK(c10->length() == 10);
    CHECK(c10->nodes.front() == 0);
    CHECK(is_chordless(cycle_graph(10), *c10));

    CHECK_FALSE(longest_chordless_cycle(complete_graph(4), 6));

    Graph c8 = cycle_graph(8);
    c8.add_edge(0, 4);
    auto half = longest_chordless_cycle(c8);
    REQUIRE(half);
    CHECK(half->length() == 5);
    CHECK(half->nodes == std::vector<Node>{0, 1, 2, 3, 4});

    CHECK_THROWS_AS(longest_chordless_cycle(cycle_graph(41)), ResourceError);
    CHECK_THROWS_AS(longest_chordless_cycle(cycle_graph(12), 3, {40, 5}), ResourceError);
}

TEST_CASE("smallest cycle") {
    Graph g = cycle_graph(9);
    g.add_edge(0, 2);
    auto tri = smallest_cycle(g);
    REQUIRE(tri);
    CHECK(tri->nodes == std::vector<Node>{0, 1, 2});
    CHECK(smallest_cycle(cycle_graph(7))->length() == 7);

    Graph tree(5);
    tree.add_edge(0, 1), tree.add_edge(0, 2), tree.add_edge(2, 3), tree.add_edge(2, 4);
    CHECK_FALSE(smallest_cycle(tree));
}
