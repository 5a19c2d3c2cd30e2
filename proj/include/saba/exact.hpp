#pragma once

#include "saba/common.hpp"
#include "saba/graph.hpp"

#include <Eigen/Dense>

#include <vector>

namespace saba {

struct ExactOptions {
    uint32_t max_vertices = 2000;
    bool cross_check_small = true; // enumeration cross-check when n <= 12
};

namespace detail {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(uint32_t n) : parent(n) {
        for (uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Enumerate all (n-1)-subsets of edges, counting spanning trees and, per
// edge, the trees containing it.
inline void enumerate_spanning_trees(const Graph& g, uint64_t& total,
                                     std::vector<uint64_t>& per_edge) {
    const uint32_t n = g.vertex_count();
    const auto m = static_cast<uint32_t>(g.edge_count());
    total = 0;
    per_edge.assign(m, 0);
    if (n < 2 || m < n - 1) return;

    const uint32_t k = n - 1;
    std::vector<uint32_t> pick(k);
    for (uint32_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        UnionFind uf(n);
        bool tree = true;
        for (uint32_t i = 0; i < k && tree; ++i) {
            auto [u, v] = g.edge(pick[i]);
            tree = uf.unite(u, v);
        }
        if (tree) {
            ++total;
            for (uint32_t i = 0; i < k; ++i) ++per_edge[pick[i]];
        }
        // next combination
        uint32_t i = k;
        while (i > 0 && pick[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (uint32_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

} // namespace detail

/// Exact spanning centrality of every edge: the effective resistance between
/// the edge's endpoints, computed from the inverse of the grounded Laplacian.
/// For n <= 12 a spanning-subset enumeration independently cross-checks every
/// value. Edge order follows the graph's dense edge ids.
inline std::vector<double> exact_sc(const Graph& g, const ExactOptions& options = {}) {
    check_data(is_connected(g), "exact_sc: spanning centrality requires a connected graph");
    const uint32_t n = g.vertex_count();
    const auto m = static_cast<uint32_t>(g.edge_count());
    check_arg(n <= options.max_vertices, "exact_sc: graph exceeds the oracle vertex limit");

    // Grounded Laplacian: drop the last row/column, invert.
    const uint32_t ground = n - 1;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (uint32_t u = 0; u + 1 < n; ++u) {
        lap(u, u) = static_cast<double>(g.degree(u));
        for (uint32_t v : g.neighbors(u))
            if (v != ground) lap(u, v) -= 1.0;
    }
    Eigen::MatrixXd inv = lap.llt().solve(Eigen::MatrixXd::Identity(n - 1, n - 1));

    auto entry = [&](uint32_t a, uint32_t b) -> double {
        if (a == ground || b == ground) return 0.0;
        return inv(a, b);
    };

    std::vector<double> sc(m);
    for (uint32_t e = 0; e < m; ++e) {
        auto [u, v] = g.edge(e);
        sc[e] = entry(u, u) + entry(v, v) - 2.0 * entry(u, v);
    }

    if (options.cross_check_small && n <= 12 && m <= 24) {
        uint64_t total = 0;
        std::vector<uint64_t> containing;
        detail::enumerate_spanning_trees(g, total, containing);
        check_data(total > 0, "exact_sc: no spanning tree found (inconsistent state)");
        for (uint32_t e = 0; e < m; ++e) {
            const double by_enum =
                static_cast<double>(containing[e]) / static_cast<double>(total);
            check_data(std::abs(sc[e] - by_enum) <= 1e-9,
                       "exact_sc: resistance/enumeration cross-check failed");
        }
    }
    return sc;
}

} // namespace saba
