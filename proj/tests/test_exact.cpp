#include "saba/exact.hpp"
#include "saba/gen.hpp"

#include "support/graphs.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace saba;

TEST_CASE("spanning-tree oracle agrees with the matrix-tree determinant") {
    struct Known {
        const char* name;
        Graph g;
        uint64_t trees;
    };
    std::vector<Known> cases;
    cases.push_back({"triangle", testsupport::triangle(), 3});
    cases.push_back({"K4", testsupport::complete(4), 16}); // Cayley: 4^2
    cases.push_back({"P5", testsupport::path(5), 1});
    cases.push_back({"S5", testsupport::star(5), 1});
    cases.push_back({"K4-e", testsupport::fig1(), 8});
    for (const auto& c : cases) {
        oracle::MultiEdges edges;
        for (uint32_t e = 0; e < c.g.edge_count(); ++e) edges.push_back(c.g.edge(e));
        CHECK(oracle::count_spanning_trees(c.g.vertex_count(), edges) == c.trees);
        CHECK(oracle::matrix_tree_count(c.g) == c.trees);
    }
    // grid and Petersen: two independent counts must agree
    for (const auto& g : {testsupport::grid3x3(), testsupport::petersen()}) {
        oracle::MultiEdges edges;
        for (uint32_t e = 0; e < g.edge_count(); ++e) edges.push_back(g.edge(e));
        const uint64_t dc = oracle::count_spanning_trees(g.vertex_count(), edges);
        CHECK(oracle::matrix_tree_count(g) == dc);
        CHECK(dc > 0);
    }
}

TEST_CASE("exact_sc on symmetric graphs") {
    SECTION("triangle: every edge 2/3") {
        const auto sc = exact_sc(testsupport::triangle());
        REQUIRE(sc.size() == 3);
        for (double v : sc) CHECK(v == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SECTION("K4: every edge 1/2") {
        const auto sc = exact_sc(testsupport::complete(4));
        REQUIRE(sc.size() == 6);
        for (double v : sc) CHECK(v == Catch::Approx(0.5).epsilon(1e-12));
    }
    SECTION("bridges are 1") {
        for (const auto& g : {testsupport::path(5), testsupport::star(5)}) {
            for (double v : exact_sc(g)) CHECK(v == Catch::Approx(1.0).epsilon(1e-12));
        }
    }
    SECTION("K4 minus one edge") {
        const Graph g = testsupport::fig1();
        const auto sc = exact_sc(g);
        // 5/8 everywhere except the central edge {B,C} = 1/2
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edge(e);
            const double want = (u == 1 && v == 2) ? 0.5 : 0.625;
            CHECK(sc[e] == Catch::Approx(want).margin(1e-10));
        }
    }
}

TEST_CASE("exact_sc matches tree counting on every acceptance graph") {
    for (const auto& [name, g] : testsupport::acceptance_graphs()) {
        INFO(name);
        const auto sc = exact_sc(g);
        const auto frac = oracle::spanning_centrality(g);
        double sum = 0.0;
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            const double want = boost::rational_cast<double>(frac[e]);
            CHECK(std::abs(sc[e] - want) <= 1e-9);
            sum += sc[e];
        }
        CHECK(std::abs(sum - (g.vertex_count() - 1.0)) <= 1e-9);
    }
}

TEST_CASE("exact_sc on a larger random graph satisfies the tree-sum identity") {
    const Graph g = saba::make_random_connected(120, 240, 5);
    const auto sc = exact_sc(g);
    double sum = 0.0;
    for (double v : sc) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0 + 1e-12);
        sum += v;
    }
    CHECK(sum == Catch::Approx(g.vertex_count() - 1.0).margin(1e-8));
}

TEST_CASE("exact_sc contract errors") {
    CHECK_THROWS_AS(exact_sc(Graph::from_edges(4, {{0, 1}, {2, 3}})), std::runtime_error);
    ExactOptions tight;
    tight.max_vertices = 3;
    CHECK_THROWS_AS(exact_sc(testsupport::complete(5), tight), std::invalid_argument);
}
