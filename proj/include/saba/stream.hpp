#pragma once

#include "saba/common.hpp"
#include "saba/graph.hpp"
#include "saba/rng.hpp"
#include "saba/walker.hpp"

#include <ostream>
#include <vector>

namespace saba {

// Raw-stream export for external randomness testing. Words are recorded per
// path and merged step-major: within one start vertex the stream holds, for
// each step, the word of every walk at that step — i.e. a walk's consecutive
// words sit a stride of K apart, K = walks per vertex.

struct StreamSpec {
    std::vector<uint32_t> starts;
    uint64_t walks_per_vertex = 1;
    uint32_t length = 2;
    SelectorKind selector = SelectorKind::Scaled;
    uint64_t master_seed = 42;
    HashSpec hash{};
};

/// Emit the raw pre-selection 32-bit words of the campaign as little-endian
/// binary. Returns the number of words written.
inline uint64_t rng_stream(const Graph& g, const StreamSpec& spec, std::ostream& out) {
    const uint64_t K = spec.walks_per_vertex;
    const uint32_t L = spec.length;
    check_arg(K >= 1, "rng_stream: walks_per_vertex must be >= 1");
    check_arg(L >= 1, "rng_stream: length must be >= 1");
    check_arg(!spec.starts.empty(), "rng_stream: no start vertices");
    for (uint32_t v : spec.starts) detail::require_walkable(g, v, L);
    if (L == 1) return 0; // no selections, no words

    const uint32_t* off = g.offsets_data();
    const uint32_t* adj = g.adjacency_data();
    std::vector<uint32_t> words(K * (L - 1));
    std::vector<unsigned char> bytes(words.size() * 4);
    uint64_t total = 0;

    for (uint32_t v : spec.starts) {
        const uint64_t vseed = substream(spec.master_seed, v);
        for (uint64_t k = 0; k < K; ++k) {
            uint32_t cur = v;
            if (spec.selector == SelectorKind::NaiveMod) {
                Lcg64 rng(counter_hash(vseed, k));
                for (uint32_t l = 1; l < L; ++l) {
                    const uint32_t base = off[cur];
                    const uint32_t deg = off[cur + 1] - base;
                    const uint32_t raw = rng.next();
                    words[(l - 1) * K + k] = raw;
                    cur = adj[base + raw % deg];
                }
            } else {
                const auto seed = static_cast<uint32_t>(counter_hash(vseed, k) >> 32);
                for (uint32_t l = 1; l < L; ++l) {
                    const uint32_t base = off[cur];
                    const uint32_t deg = off[cur + 1] - base;
                    const uint32_t raw = seed ^ spec.hash.state(cur, l);
                    words[(l - 1) * K + k] = raw;
                    const uint32_t idx = (spec.selector == SelectorKind::Scaled)
                                             ? scaled_index(raw, deg)
                                             : raw % deg;
                    cur = adj[base + idx];
                }
            }
        }
        for (size_t i = 0; i < words.size(); ++i) {
            bytes[4 * i + 0] = static_cast<unsigned char>(words[i] & 0xff);
            bytes[4 * i + 1] = static_cast<unsigned char>((words[i] >> 8) & 0xff);
            bytes[4 * i + 2] = static_cast<unsigned char>((words[i] >> 16) & 0xff);
            bytes[4 * i + 3] = static_cast<unsigned char>((words[i] >> 24) & 0xff);
        }
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        check_data(out.good(), "rng_stream: sink write failure");
        total += words.size();
    }
    return total;
}

} // namespace saba
