#pragma once

#include "saba/common.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace saba {

struct LoadOptions {
    char comment_char = '#';
};

// =============================================================================
// Graph: immutable CSR adjacency of a simple undirected graph
// =============================================================================
//
// Vertex ids are dense 32-bit integers assigned in first-appearance order of
// the input labels. Each undirected edge is stored in both directions;
// neighbour slices are sorted ascending and duplicate-free. Immutable after
// construction; safe for unrestricted concurrent reads.
class Graph {
public:
    [[nodiscard]] uint32_t vertex_count() const noexcept { return n_; }
    [[nodiscard]] uint64_t edge_count() const noexcept { return m_; }

    [[nodiscard]] uint32_t degree(uint32_t u) const {
        check_arg(u < n_, "degree: vertex out of range");
        return offsets_[u + 1] - offsets_[u];
    }

    /// Sorted ascending neighbour slice of u.
    [[nodiscard]] std::span<const uint32_t> neighbors(uint32_t u) const {
        check_arg(u < n_, "neighbors: vertex out of range");
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }

    [[nodiscard]] bool has_edge(uint32_t u, uint32_t v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// Dense id in [0, m) of the undirected edge {u, v}; requires adjacency.
    [[nodiscard]] uint32_t edge_index(uint32_t u, uint32_t v) const {
        auto nb = neighbors(u);
        auto it = std::lower_bound(nb.begin(), nb.end(), v);
        check_arg(it != nb.end() && *it == v, "edge_index: not an edge");
        return slot_edge_[offsets_[u] + static_cast<uint32_t>(it - nb.begin())];
    }

    /// Directed slot index of (u -> v) in the flat adjacency array.
    [[nodiscard]] uint32_t slot_of(uint32_t u, uint32_t v) const {
        auto nb = neighbors(u);
        auto it = std::lower_bound(nb.begin(), nb.end(), v);
        check_arg(it != nb.end() && *it == v, "slot_of: not an edge");
        return offsets_[u] + static_cast<uint32_t>(it - nb.begin());
    }

    // Raw CSR access for walk kernels.
    [[nodiscard]] const uint32_t* offsets_data() const noexcept { return offsets_.data(); }
    [[nodiscard]] const uint32_t* adjacency_data() const noexcept { return adjacency_.data(); }
    [[nodiscard]] const std::vector<uint32_t>& offsets() const noexcept { return offsets_; }
    [[nodiscard]] const std::vector<uint32_t>& adjacency() const noexcept { return adjacency_; }

    /// Undirected edge id of directed slot s.
    [[nodiscard]] uint32_t slot_edge(uint32_t s) const noexcept { return slot_edge_[s]; }

    /// Endpoints (u, v) with u < v (internal ids) of edge e.
    [[nodiscard]] std::pair<uint32_t, uint32_t> edge(uint32_t e) const { return edges_[e]; }

    /// Original input label of internal vertex u.
    [[nodiscard]] uint64_t original_id(uint32_t u) const { return original_ids_[u]; }

    [[nodiscard]] uint32_t max_degree() const noexcept { return max_degree_; }

    /// Build from explicit endpoint pairs (internal ids). Canonicalizes:
    /// drops self-loops, merges duplicates/reversals, materialises both
    /// directions. n is max(n_hint, largest id + 1); vertices without edges
    /// are allowed.
    static Graph from_edges(uint32_t n_hint, std::vector<std::pair<uint32_t, uint32_t>> pairs) {
        uint32_t n = n_hint;
        for (auto& [a, b] : pairs) {
            if (a > b) std::swap(a, b);
            n = std::max({n, a + 1, b + 1});
        }
        std::erase_if(pairs, [](const auto& p) { return p.first == p.second; });
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        check_data(n > 0, "empty graph");

        Graph g;
        g.n_ = n;
        g.m_ = pairs.size();
        g.edges_ = std::move(pairs);
        g.original_ids_.resize(n);
        for (uint32_t u = 0; u < n; ++u) g.original_ids_[u] = u;
        g.build_csr();
        return g;
    }

    /// Parse a SNAP-style edge list: whitespace-separated label pairs, one
    /// per line; lines starting with the comment character are skipped.
    /// Labels are remapped to [0, n) in first-appearance order.
    static Graph load_edge_list(std::istream& in, const LoadOptions& options = {}) {
        std::unordered_map<uint64_t, uint32_t> remap;
        std::vector<uint64_t> labels;
        std::vector<std::pair<uint32_t, uint32_t>> pairs;

        auto intern = [&](uint64_t label) -> uint32_t {
            auto [it, fresh] = remap.try_emplace(label, static_cast<uint32_t>(labels.size()));
            if (fresh) labels.push_back(label);
            return it->second;
        };

        std::string line;
        uint64_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == options.comment_char) continue;

            uint64_t ids[2];
            for (int tok = 0; tok < 2; ++tok) {
                size_t end = line.find_first_of(" \t\r", pos);
                std::string token = line.substr(pos, end == std::string::npos ? end : end - pos);
                try {
                    size_t used = 0;
                    ids[tok] = std::stoull(token, &used);
                    check_data(used == token.size() && !token.empty() && token[0] != '-',
                               "parse error at line " + std::to_string(line_no) +
                                   ": non-integer token '" + token + "'");
                } catch (const std::invalid_argument&) {
                    check_data(false, "parse error at line " + std::to_string(line_no) +
                                          ": non-integer token '" + token + "'");
                } catch (const std::out_of_range&) {
                    check_data(false, "parse error at line " + std::to_string(line_no) +
                                          ": vertex id out of range");
                }
                pos = line.find_first_not_of(" \t\r", end);
                check_data(tok == 1 || pos != std::string::npos,
                           "parse error at line " + std::to_string(line_no) + ": expected two vertex ids");
            }
            check_data(pos == std::string::npos,
                       "parse error at line " + std::to_string(line_no) + ": trailing tokens");
            if (ids[0] == ids[1]) continue; // self-loop: dropped before interning
            const uint32_t a = intern(ids[0]);
            const uint32_t b = intern(ids[1]);
            pairs.emplace_back(a, b);
        }
        check_data(!labels.empty() && !pairs.empty(), "empty graph");

        Graph g = from_edges(static_cast<uint32_t>(labels.size()), std::move(pairs));
        check_data(g.edge_count() >= 1, "empty graph (no edges after canonicalization)");
        g.original_ids_ = std::move(labels);
        return g;
    }

    /// Emit as an edge list with original labels, ordered so that labels
    /// first appear in internal-id order: reloading the output reproduces
    /// this graph's ids, offsets and adjacency exactly.
    void write_edge_list(std::ostream& out) const {
        std::vector<char> introduced(n_, 0);
        std::vector<char> emitted(m_, 0);
        for (uint32_t k = 0; k < n_; ++k) {
            if (introduced[k]) continue;
            const auto nb = neighbors(k);
            uint32_t partner = n_;
            for (uint32_t j : nb) {
                if (introduced[j]) {
                    partner = j;
                    break;
                }
            }
            if (partner == n_) {
                check_data(!nb.empty(), "write_edge_list: isolated vertices are not expressible");
                partner = nb.front(); // introduced immediately after k
                out << original_ids_[k] << ' ' << original_ids_[partner] << '\n';
                introduced[partner] = 1;
            } else {
                out << original_ids_[partner] << ' ' << original_ids_[k] << '\n';
            }
            introduced[k] = 1;
            emitted[edge_index(k, partner)] = 1;
        }
        for (uint32_t e = 0; e < m_; ++e) {
            if (emitted[e]) continue;
            out << original_ids_[edges_[e].first] << ' ' << original_ids_[edges_[e].second]
                << '\n';
        }
    }

private:
    void build_csr() {
        const uint64_t dir = 2 * m_;
        check_data(dir <= 0xffffffffull, "graph too large: 2m must fit in 32 bits");
        offsets_.assign(n_ + 1, 0);
        for (auto [u, v] : edges_) {
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (uint32_t u = 0; u < n_; ++u) offsets_[u + 1] += offsets_[u];

        adjacency_.resize(dir);
        slot_edge_.resize(dir);
        std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
        // edges_ is sorted by (u, v); the reverse direction needs a second,
        // target-sorted pass so every neighbour slice ends up ascending.
        for (uint32_t e = 0; e < m_; ++e) {
            auto [u, v] = edges_[e];
            // forward slots (u -> v) arrive in ascending v per u already,
            // but interleave with reverse slots; place both and sort slices.
            adjacency_[cursor[u]] = v;
            slot_edge_[cursor[u]] = e;
            ++cursor[u];
            adjacency_[cursor[v]] = u;
            slot_edge_[cursor[v]] = e;
            ++cursor[v];
        }
        std::vector<std::pair<uint32_t, uint32_t>> slice;
        for (uint32_t u = 0; u < n_; ++u) {
            uint32_t lo = offsets_[u], hi = offsets_[u + 1];
            slice.clear();
            for (uint32_t s = lo; s < hi; ++s) slice.emplace_back(adjacency_[s], slot_edge_[s]);
            std::sort(slice.begin(), slice.end());
            for (uint32_t s = lo; s < hi; ++s) {
                adjacency_[s] = slice[s - lo].first;
                slot_edge_[s] = slice[s - lo].second;
            }
            max_degree_ = std::max(max_degree_, hi - lo);
        }
    }

    uint32_t n_ = 0;
    uint64_t m_ = 0;
    uint32_t max_degree_ = 0;
    std::vector<uint32_t> offsets_;
    std::vector<uint32_t> adjacency_;
    std::vector<uint32_t> slot_edge_;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
    std::vector<uint64_t> original_ids_;
};

/// True iff a traversal from vertex 0 reaches all n vertices.
inline bool is_connected(const Graph& g) {
    const uint32_t n = g.vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<uint32_t> queue{0};
    seen[0] = 1;
    uint32_t reached = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        for (uint32_t v : g.neighbors(queue[head])) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push_back(v);
            }
        }
    }
    return reached == n;
}

/// 2-colouring: returns (is_bipartite, side per vertex). Sides are defined
/// per connected component (component roots on side 0).
inline std::pair<bool, std::vector<char>> bipartition(const Graph& g) {
    const uint32_t n = g.vertex_count();
    std::vector<char> side(n, -1);
    std::vector<uint32_t> queue;
    for (uint32_t root = 0; root < n; ++root) {
        if (side[root] != -1) continue;
        side[root] = 0;
        queue.assign(1, root);
        for (size_t head = 0; head < queue.size(); ++head) {
            uint32_t u = queue[head];
            for (uint32_t v : g.neighbors(u)) {
                if (side[v] == -1) {
                    side[v] = static_cast<char>(1 - side[u]);
                    queue.push_back(v);
                } else if (side[v] == side[u]) {
                    return {false, {}};
                }
            }
        }
    }
    return {true, std::move(side)};
}

} // namespace saba
