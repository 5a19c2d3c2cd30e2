#pragma once

#include "saba/common.hpp"
#include "saba/graph.hpp"
#include "saba/rng.hpp"

#include <utility>
#include <vector>

// Seeded synthetic graph generators for benchmarks and tests.

namespace saba {

/// Preferential-attachment (scale-free) graph: starts from an
/// (attach+1)-clique, then every new vertex links to `attach` distinct
/// existing vertices sampled proportionally to degree.
inline Graph make_scale_free(uint32_t n, uint32_t attach, uint64_t seed) {
    check_arg(attach >= 1 && n >= attach + 1, "make_scale_free: need n >= attach + 1");
    Lcg64 rng(substream(seed, 0x5caefee));
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    std::vector<uint32_t> endpoints; // degree-proportional sampling pool
    for (uint32_t u = 0; u <= attach; ++u)
        for (uint32_t v = u + 1; v <= attach; ++v) {
            pairs.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<uint32_t> picked;
    for (uint32_t v = attach + 1; v < n; ++v) {
        picked.clear();
        while (picked.size() < attach) {
            uint32_t u = endpoints[scaled_index(rng.next(), static_cast<uint32_t>(endpoints.size()))];
            bool dup = false;
            for (uint32_t w : picked) dup |= (w == u);
            if (!dup) picked.push_back(u);
        }
        for (uint32_t u : picked) {
            pairs.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    return Graph::from_edges(n, std::move(pairs));
}

/// Connected random graph: random recursive tree plus `extra` distinct
/// random non-tree edges (self-loops/duplicates resampled).
inline Graph make_random_connected(uint32_t n, uint32_t extra, uint64_t seed) {
    check_arg(n >= 2, "make_random_connected: need n >= 2");
    Lcg64 rng(substream(seed, 0xc0113c7));
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t v = 1; v < n; ++v)
        pairs.emplace_back(scaled_index(rng.next(), v), v);
    const uint64_t max_edges = static_cast<uint64_t>(n) * (n - 1) / 2;
    uint32_t budget = static_cast<uint32_t>(std::min<uint64_t>(extra, max_edges - (n - 1)));
    uint32_t added = 0;
    while (added < budget) {
        uint32_t a = scaled_index(rng.next(), n);
        uint32_t b = scaled_index(rng.next(), n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        bool dup = false;
        for (auto [x, y] : pairs) dup |= (x == a && y == b) || (x == b && y == a);
        if (dup) continue;
        pairs.emplace_back(a, b);
        ++added;
    }
    return Graph::from_edges(n, std::move(pairs));
}

} // namespace saba
