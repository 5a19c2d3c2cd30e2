#pragma once

#include "saba/common.hpp"
#include "saba/graph.hpp"
#include "saba/rng.hpp"

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Random-walk generation under four interchangeable strategies:
//   naive       scalar walks, per-walk LCG stream, modulus selection
//   vector-mod  lane-batched walks, per-lane LCG stream, modulus selection
//   hash        lane-batched walks, stateless scaled selection, seeds as generated
//   saba        lane-batched walks, stateless scaled selection, seeds sorted
// Lane batching is an execution-order optimization only: for fixed selector
// and seeds all strategies emit the same multiset of walks.

namespace saba {

enum class WalkMode { Naive, VectorMod, Hash, Saba };

inline const char* to_string(WalkMode m) noexcept {
    switch (m) {
        case WalkMode::Naive: return "naive";
        case WalkMode::VectorMod: return "vector-mod";
        case WalkMode::Hash: return "hash";
        case WalkMode::Saba: return "saba";
    }
    return "?";
}

inline WalkMode parse_walk_mode(const std::string& s) {
    if (s == "naive") return WalkMode::Naive;
    if (s == "vector-mod") return WalkMode::VectorMod;
    if (s == "hash") return WalkMode::Hash;
    if (s == "saba") return WalkMode::Saba;
    throw std::invalid_argument("unknown walk mode: " + s);
}

inline constexpr bool is_lane_mode(WalkMode m) noexcept { return m != WalkMode::Naive; }

inline constexpr uint32_t kMaxLanes = 64;

struct Walk {
    std::vector<uint32_t> vertices;
    uint64_t walk_id = 0;
    uint32_t seed = 0;
};

// =============================================================================
// Branch statistics collection
// =============================================================================

struct BranchCollector {
    uint32_t lanes = 8;
    std::vector<uint64_t> histogram;      // histogram[c] = bouquet-steps with c distinct lanes
    std::vector<uint64_t> per_step;       // Σ distinct at walk step l (index l-1)
    uint64_t total_distinct = 0;
    uint64_t samples = 0;                 // bouquet-steps recorded
    uint64_t lane_steps = 0;
    uint64_t degree_sum = 0;              // Σ degree(cur) before each selection

    BranchCollector() = default;
    BranchCollector(uint32_t lane_count, uint32_t length)
        : lanes(lane_count), histogram(lane_count + 1, 0), per_step(length > 0 ? length - 1 : 0, 0) {}

    void record(uint32_t step, std::span<const uint32_t> curs, uint64_t degsum) {
        std::array<uint32_t, kMaxLanes> tmp;
        const uint32_t act = static_cast<uint32_t>(curs.size());
        for (uint32_t i = 0; i < act; ++i) {
            uint32_t x = curs[i];
            uint32_t j = i;
            while (j > 0 && tmp[j - 1] > x) {
                tmp[j] = tmp[j - 1];
                --j;
            }
            tmp[j] = x;
        }
        uint32_t distinct = act > 0 ? 1 : 0;
        for (uint32_t i = 1; i < act; ++i) distinct += (tmp[i] != tmp[i - 1]);
        histogram[distinct] += 1;
        per_step[step - 1] += distinct;
        total_distinct += distinct;
        samples += 1;
        lane_steps += act;
        degree_sum += degsum;
    }

    void merge(const BranchCollector& other) {
        for (size_t c = 0; c < histogram.size() && c < other.histogram.size(); ++c)
            histogram[c] += other.histogram[c];
        for (size_t s = 0; s < per_step.size() && s < other.per_step.size(); ++s)
            per_step[s] += other.per_step[s];
        total_distinct += other.total_distinct;
        samples += other.samples;
        lane_steps += other.lane_steps;
        degree_sum += other.degree_sum;
    }
};

struct BranchingStats {
    uint32_t lanes = 0;
    std::vector<uint64_t> histogram;
    uint64_t samples = 0;
    double mean = 0.0;
    uint32_t p1 = 0, p10 = 0, p25 = 0;
    double mean_candidate_degree = 0.0;   // β̂: average degree at selection time
};

/// Aggregate a distinct-count histogram (index = distinct lanes per
/// bouquet-step) into ascending-order percentiles and the mean.
inline BranchingStats branching_stats(std::span<const uint64_t> histogram) {
    uint64_t total = 0;
    double weighted = 0.0;
    for (size_t c = 0; c < histogram.size(); ++c) {
        total += histogram[c];
        weighted += static_cast<double>(c) * static_cast<double>(histogram[c]);
    }
    check_arg(total > 0, "branching_stats: empty trace");

    auto percentile = [&](double q) -> uint32_t {
        uint64_t rank = static_cast<uint64_t>(std::ceil(q * static_cast<double>(total)));
        if (rank == 0) rank = 1;
        uint64_t cum = 0;
        for (size_t c = 0; c < histogram.size(); ++c) {
            cum += histogram[c];
            if (cum >= rank) return static_cast<uint32_t>(c);
        }
        return static_cast<uint32_t>(histogram.size() - 1);
    };

    BranchingStats st;
    st.lanes = static_cast<uint32_t>(histogram.size() > 0 ? histogram.size() - 1 : 0);
    st.histogram.assign(histogram.begin(), histogram.end());
    st.samples = total;
    st.mean = weighted / static_cast<double>(total);
    st.p1 = percentile(0.01);
    st.p10 = percentile(0.10);
    st.p25 = percentile(0.25);
    return st;
}

/// Aggregate a raw trace of per-bouquet-step distinct counts.
inline BranchingStats branching_stats(std::span<const uint32_t> trace, uint32_t lanes) {
    check_arg(!trace.empty(), "branching_stats: empty trace");
    std::vector<uint64_t> hist(lanes + 1, 0);
    for (uint32_t c : trace) {
        check_arg(c >= 1 && c <= lanes, "branching_stats: count out of range");
        ++hist[c];
    }
    return branching_stats(std::span<const uint64_t>(hist));
}

// =============================================================================
// Walk kernels
// =============================================================================

namespace detail {

// Scalar walk over a per-walk LCG word stream, modulus selection.
template <class Visit>
inline void walk_stream_lcg(const Graph& g, uint32_t start, uint32_t len, uint64_t stream_seed,
                            Visit&& visit) {
    const uint32_t* off = g.offsets_data();
    const uint32_t* adj = g.adjacency_data();
    Lcg64 rng(stream_seed);
    uint32_t cur = start;
    visit(0u, cur);
    for (uint32_t l = 1; l < len; ++l) {
        const uint32_t base = off[cur];
        const uint32_t deg = off[cur + 1] - base;
        cur = adj[base + rng.next() % deg];
        visit(l, cur);
    }
}

// Scalar walk with stateless hash selection.
template <SelectorKind S, class Visit>
inline void walk_stream_hashed(const Graph& g, uint32_t start, uint32_t len, uint32_t seed,
                               const HashSpec& h, Visit&& visit) {
    const uint32_t* off = g.offsets_data();
    const uint32_t* adj = g.adjacency_data();
    uint32_t cur = start;
    visit(0u, cur);
    for (uint32_t l = 1; l < len; ++l) {
        const uint32_t base = off[cur];
        const uint32_t deg = off[cur + 1] - base;
        const uint32_t raw = seed ^ h.state(cur, l);
        const uint32_t idx = (S == SelectorKind::Scaled) ? scaled_index(raw, deg) : raw % deg;
        cur = adj[base + idx];
        visit(l, cur);
    }
}

// Lockstep bouquet with stateless hash selection. keys are
// (seed << 32) | original-walk-index; visit(lane, step, vertex).
template <SelectorKind S, class Visit>
inline void bouquet_hashed(const Graph& g, uint32_t start, uint32_t len,
                           std::span<const uint64_t> keys, const HashSpec& h, Visit&& visit,
                           BranchCollector* bc) {
    const uint32_t* off = g.offsets_data();
    const uint32_t* adj = g.adjacency_data();
    const uint32_t act = static_cast<uint32_t>(keys.size());
    std::array<uint32_t, kMaxLanes> cur;
    std::array<uint32_t, kMaxLanes> seed;
    for (uint32_t b = 0; b < act; ++b) {
        cur[b] = start;
        seed[b] = static_cast<uint32_t>(keys[b] >> 32);
        visit(b, 0u, start);
    }
    for (uint32_t l = 1; l < len; ++l) {
        uint64_t degsum = 0;
        for (uint32_t b = 0; b < act; ++b) {
            const uint32_t c = cur[b];
            const uint32_t base = off[c];
            const uint32_t deg = off[c + 1] - base;
            degsum += deg;
            const uint32_t raw = seed[b] ^ h.state(c, l);
            const uint32_t idx = (S == SelectorKind::Scaled) ? scaled_index(raw, deg) : raw % deg;
            const uint32_t nxt = adj[base + idx];
            cur[b] = nxt;
            visit(b, l, nxt);
        }
        if (bc) bc->record(l, std::span<const uint32_t>(cur.data(), act), degsum);
    }
}

// Lockstep bouquet over per-lane LCG streams, modulus selection.
template <class Visit>
inline void bouquet_lcg(const Graph& g, uint32_t start, uint32_t len,
                        std::span<const uint64_t> stream_seeds, Visit&& visit,
                        BranchCollector* bc) {
    const uint32_t* off = g.offsets_data();
    const uint32_t* adj = g.adjacency_data();
    const uint32_t act = static_cast<uint32_t>(stream_seeds.size());
    std::array<uint32_t, kMaxLanes> cur;
    std::array<uint64_t, kMaxLanes> state;
    for (uint32_t b = 0; b < act; ++b) {
        cur[b] = start;
        state[b] = Lcg64(stream_seeds[b]).state;
        visit(b, 0u, start);
    }
    for (uint32_t l = 1; l < len; ++l) {
        uint64_t degsum = 0;
        for (uint32_t b = 0; b < act; ++b) {
            const uint32_t c = cur[b];
            const uint32_t base = off[c];
            const uint32_t deg = off[c + 1] - base;
            degsum += deg;
            state[b] = state[b] * 0x5851f42d4c957f2dull + 0x14057b7ef767814full;
            const uint32_t raw = static_cast<uint32_t>(state[b] >> 32);
            const uint32_t nxt = adj[base + raw % deg];
            cur[b] = nxt;
            visit(b, l, nxt);
        }
        if (bc) bc->record(l, std::span<const uint32_t>(cur.data(), act), degsum);
    }
}

inline void require_walkable(const Graph& g, uint32_t start, uint32_t length) {
    check_arg(length >= 1, "walk length must be >= 1");
    check_arg(start < g.vertex_count(), "start vertex out of range");
    check_arg(length == 1 || g.degree(start) >= 1, "cannot walk from an isolated vertex");
}

} // namespace detail

// =============================================================================
// Single walks and bouquets
// =============================================================================

/// One walk of exactly `length` vertices from `start`.
inline Walk random_walk(const Graph& g, uint32_t start, uint32_t length, SelectorKind selector,
                        uint32_t seed, const HashSpec& hash = {}) {
    detail::require_walkable(g, start, length);
    Walk w;
    w.seed = seed;
    w.vertices.reserve(length);
    auto collect = [&](uint32_t, uint32_t v) { w.vertices.push_back(v); };
    switch (selector) {
        case SelectorKind::NaiveMod:
            detail::walk_stream_lcg(g, start, length, seed, collect);
            break;
        case SelectorKind::XorMod:
            detail::walk_stream_hashed<SelectorKind::XorMod>(g, start, length, seed, hash, collect);
            break;
        case SelectorKind::Scaled:
            detail::walk_stream_hashed<SelectorKind::Scaled>(g, start, length, seed, hash, collect);
            break;
    }
    return w;
}

/// B lockstep walks from `start`, one per seed; each lane is bitwise
/// identical to random_walk with the same (seed, selector).
inline std::vector<Walk> random_bouquet(const Graph& g, uint32_t start, uint32_t length,
                                        uint32_t width, const SeedSet& seeds,
                                        SelectorKind selector, const HashSpec& hash = {}) {
    check_arg(width >= 1 && width <= kMaxLanes, "bouquet width must be in [1, 64]");
    check_arg(seeds.seeds.size() >= width, "seed set smaller than bouquet width");
    detail::require_walkable(g, start, length);

    std::vector<Walk> walks(width);
    for (uint32_t b = 0; b < width; ++b) {
        walks[b].walk_id = b;
        walks[b].seed = seeds.seeds[b];
        walks[b].vertices.reserve(length);
    }
    auto collect = [&](uint32_t lane, uint32_t, uint32_t v) { walks[lane].vertices.push_back(v); };

    if (selector == SelectorKind::NaiveMod) {
        std::array<uint64_t, kMaxLanes> streams;
        for (uint32_t b = 0; b < width; ++b) streams[b] = seeds.seeds[b];
        detail::bouquet_lcg(g, start, length, std::span<const uint64_t>(streams.data(), width),
                            collect, nullptr);
    } else {
        std::array<uint64_t, kMaxLanes> keys;
        for (uint32_t b = 0; b < width; ++b)
            keys[b] = (static_cast<uint64_t>(seeds.seeds[b]) << 32) | b;
        if (selector == SelectorKind::XorMod)
            detail::bouquet_hashed<SelectorKind::XorMod>(
                g, start, length, std::span<const uint64_t>(keys.data(), width), hash, collect, nullptr);
        else
            detail::bouquet_hashed<SelectorKind::Scaled>(
                g, start, length, std::span<const uint64_t>(keys.data(), width), hash, collect, nullptr);
    }
    return walks;
}

// =============================================================================
// Walk campaigns
// =============================================================================

template <class S>
concept CampaignSink = requires(S s, typename S::Shard sh, uint64_t id, uint32_t step, uint32_t v) {
    { s.make_shard() } -> std::convertible_to<typename S::Shard>;
    sh.visit(id, step, v);
    s.absorb(sh);
};

/// Per-vertex visit counter; the campaign sink used by the benchmarks.
struct VisitCountSink {
    struct Shard {
        std::vector<uint64_t> counts;
        void visit(uint64_t, uint32_t, uint32_t v) noexcept { ++counts[v]; }
    };

    std::vector<uint64_t> counts;

    explicit VisitCountSink(uint32_t n) : counts(n, 0) {}
    [[nodiscard]] Shard make_shard() const { return Shard{std::vector<uint64_t>(counts.size(), 0)}; }
    void absorb(Shard& sh) {
        for (size_t i = 0; i < counts.size(); ++i) counts[i] += sh.counts[i];
    }
};

struct CampaignConfig {
    uint64_t walks_per_vertex = 2048;
    uint32_t length = 10;
    WalkMode mode = WalkMode::Saba;
    uint32_t lanes = 8;
    int threads = 0;      // 0 = all hardware threads
    uint64_t master_seed = 42;
    bool collect_stats = false;
    HashSpec hash{};
};

struct DistinctProxy {
    std::vector<uint64_t> per_step;
    uint64_t total = 0;
};

struct CampaignReport {
    double seconds = 0.0;
    uint64_t total_steps = 0;   // n * K * (L - 1)
    uint64_t total_events = 0;  // n * K * L
    int threads_used = 1;
    bool has_stats = false;
    BranchingStats branching;
    DistinctProxy proxy;
};

inline int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    return 1;
#endif
}

namespace detail {

template <class Shard>
inline void campaign_vertex_naive(const Graph& g, uint32_t v, uint64_t K, uint32_t L,
                                  uint64_t vseed, Shard& shard) {
    const uint64_t base_id = static_cast<uint64_t>(v) * K;
    for (uint64_t k = 0; k < K; ++k) {
        walk_stream_lcg(g, v, L, counter_hash(vseed, k),
                        [&](uint32_t step, uint32_t vert) { shard.visit(base_id + k, step, vert); });
    }
}

template <class Shard>
inline void campaign_vertex_vector_mod(const Graph& g, uint32_t v, uint64_t K, uint32_t L,
                                       uint32_t lanes, uint64_t vseed, Shard& shard,
                                       BranchCollector* bc) {
    const uint64_t base_id = static_cast<uint64_t>(v) * K;
    std::array<uint64_t, kMaxLanes> streams;
    for (uint64_t k0 = 0; k0 < K; k0 += lanes) {
        const uint32_t act = static_cast<uint32_t>(std::min<uint64_t>(lanes, K - k0));
        for (uint32_t b = 0; b < act; ++b) streams[b] = counter_hash(vseed, k0 + b);
        bouquet_lcg(g, v, L, std::span<const uint64_t>(streams.data(), act),
                    [&](uint32_t lane, uint32_t step, uint32_t vert) {
                        shard.visit(base_id + k0 + lane, step, vert);
                    },
                    bc);
    }
}

template <bool Sorted, class Shard>
inline void campaign_vertex_scaled(const Graph& g, uint32_t v, uint64_t K, uint32_t L,
                                   uint32_t lanes, uint64_t vseed, const HashSpec& hash,
                                   std::vector<uint64_t>& keys, Shard& shard,
                                   BranchCollector* bc) {
    const uint64_t base_id = static_cast<uint64_t>(v) * K;
    keys.resize(K);
    for (uint64_t k = 0; k < K; ++k)
        keys[k] = ((counter_hash(vseed, k) >> 32) << 32) | k;
    if constexpr (Sorted) std::sort(keys.begin(), keys.end());
    for (uint64_t k0 = 0; k0 < K; k0 += lanes) {
        const uint32_t act = static_cast<uint32_t>(std::min<uint64_t>(lanes, K - k0));
        bouquet_hashed<SelectorKind::Scaled>(
            g, v, L, std::span<const uint64_t>(keys.data() + k0, act), hash,
            [&](uint32_t lane, uint32_t step, uint32_t vert) {
                shard.visit(base_id + (keys[k0 + lane] & 0xffffffffull), step, vert);
            },
            bc);
    }
}

} // namespace detail

/// Generate exactly K walks of length L from every vertex, streaming each
/// visited vertex to the sink. Workers own disjoint vertices and private
/// sink shards; shards merge in thread order after the loop.
template <CampaignSink Sink>
CampaignReport run_walk_campaign(const Graph& g, const CampaignConfig& cfg, Sink& sink) {
    const uint32_t n = g.vertex_count();
    const uint64_t K = cfg.walks_per_vertex;
    const uint32_t L = cfg.length;
    check_arg(K >= 1, "walks_per_vertex must be >= 1");
    check_arg(L >= 1, "length must be >= 1");
    check_arg(cfg.lanes >= 1 && cfg.lanes <= kMaxLanes && std::has_single_bit(cfg.lanes),
              "lanes must be a power of two in [1, 64]");
    if (L > 1) {
        for (uint32_t v = 0; v < n; ++v)
            check_arg(g.degree(v) >= 1, "campaign requires degree >= 1 at every vertex when L > 1");
    }

    const int threads = resolve_threads(cfg.threads);
    const bool stats = cfg.collect_stats && is_lane_mode(cfg.mode) && L > 1;

    std::vector<typename Sink::Shard> shards;
    shards.reserve(threads);
    for (int t = 0; t < threads; ++t) shards.push_back(sink.make_shard());
    std::vector<BranchCollector> collectors;
    if (stats)
        for (int t = 0; t < threads; ++t) collectors.emplace_back(cfg.lanes, L);

    const auto t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
#ifdef _OPENMP
        const int rank = omp_get_thread_num();
#else
        const int rank = 0;
#endif
        auto& shard = shards[rank];
        BranchCollector* bc = stats ? &collectors[rank] : nullptr;
        std::vector<uint64_t> keys;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
        for (int64_t vi = 0; vi < static_cast<int64_t>(n); ++vi) {
            const uint32_t v = static_cast<uint32_t>(vi);
            const uint64_t vseed = substream(cfg.master_seed, v);
            switch (cfg.mode) {
                case WalkMode::Naive:
                    detail::campaign_vertex_naive(g, v, K, L, vseed, shard);
                    break;
                case WalkMode::VectorMod:
                    detail::campaign_vertex_vector_mod(g, v, K, L, cfg.lanes, vseed, shard, bc);
                    break;
                case WalkMode::Hash:
                    detail::campaign_vertex_scaled<false>(g, v, K, L, cfg.lanes, vseed, cfg.hash,
                                                          keys, shard, bc);
                    break;
                case WalkMode::Saba:
                    detail::campaign_vertex_scaled<true>(g, v, K, L, cfg.lanes, vseed, cfg.hash,
                                                         keys, shard, bc);
                    break;
            }
        }
    }
    const auto t1 = std::chrono::steady_clock::now();

    for (int t = 0; t < threads; ++t) sink.absorb(shards[t]);

    CampaignReport report;
    report.seconds = std::chrono::duration<double>(t1 - t0).count();
    report.total_steps = static_cast<uint64_t>(n) * K * (L - 1);
    report.total_events = static_cast<uint64_t>(n) * K * L;
    report.threads_used = threads;
    if (stats) {
        BranchCollector all = collectors[0];
        for (int t = 1; t < threads; ++t) all.merge(collectors[t]);
        report.has_stats = true;
        report.branching = branching_stats(std::span<const uint64_t>(all.histogram));
        report.branching.mean_candidate_degree =
            all.lane_steps > 0 ? static_cast<double>(all.degree_sum) / static_cast<double>(all.lane_steps)
                               : 0.0;
        report.proxy.per_step = all.per_step;
        report.proxy.total = all.total_distinct;
    }
    return report;
}

} // namespace saba
