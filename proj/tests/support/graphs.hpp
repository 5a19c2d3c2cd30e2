#pragma once

#include "saba/graph.hpp"

#include <utility>
#include <vector>

// Named small graphs used across the test suite.

namespace testsupport {

using saba::Graph;
using EdgeList = std::vector<std::pair<uint32_t, uint32_t>>;

inline Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph path(uint32_t n) {
    EdgeList e;
    for (uint32_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph::from_edges(n, std::move(e));
}

inline Graph star(uint32_t leaves) {
    EdgeList e;
    for (uint32_t v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph::from_edges(leaves + 1, std::move(e));
}

inline Graph complete(uint32_t n) {
    EdgeList e;
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, std::move(e));
}

// The four-vertex, five-edge graph: A=0, B=1, C=2, D=3; K4 minus edge {A,D}.
inline Graph fig1() {
    return Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
}

inline Graph grid3x3() {
    EdgeList e;
    for (uint32_t r = 0; r < 3; ++r)
        for (uint32_t c = 0; c < 3; ++c) {
            const uint32_t v = 3 * r + c;
            if (c + 1 < 3) e.emplace_back(v, v + 1);
            if (r + 1 < 3) e.emplace_back(v, v + 3);
        }
    return Graph::from_edges(9, std::move(e));
}

inline Graph petersen() {
    EdgeList e;
    for (uint32_t i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);          // outer cycle
        e.emplace_back(i, i + 5);                // spokes
        e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return Graph::from_edges(10, std::move(e));
}

struct NamedGraph {
    const char* name;
    Graph graph;
};

// The acceptance set: every graph the exact oracle and the epsilon contract
// are checked on.
inline std::vector<NamedGraph> acceptance_graphs() {
    std::vector<NamedGraph> all;
    all.push_back({"triangle", triangle()});
    all.push_back({"P5", path(5)});
    all.push_back({"S5", star(5)});
    all.push_back({"K4", complete(4)});
    all.push_back({"K4-e", fig1()});
    all.push_back({"grid3x3", grid3x3()});
    all.push_back({"petersen", petersen()});
    return all;
}

} // namespace testsupport
