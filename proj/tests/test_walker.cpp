#include "saba/gen.hpp"
#include "saba/walker.hpp"

#include "support/graphs.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

using namespace saba;

namespace {

struct TraceSink {
    struct Event {
        uint64_t id;
        uint32_t step;
        uint32_t vertex;
        auto operator<=>(const Event&) const = default;
    };
    struct Shard {
        std::vector<Event> events;
        void visit(uint64_t id, uint32_t step, uint32_t v) { events.push_back({id, step, v}); }
    };
    std::vector<Event> events;
    Shard make_shard() const { return {}; }
    void absorb(Shard& sh) {
        events.insert(events.end(), sh.events.begin(), sh.events.end());
    }
};

std::vector<uint64_t> campaign_counts(const Graph& g, WalkMode mode, uint64_t K, uint32_t L,
                                      uint64_t seed, int threads = 1, uint32_t lanes = 8) {
    CampaignConfig cfg;
    cfg.walks_per_vertex = K;
    cfg.length = L;
    cfg.mode = mode;
    cfg.lanes = lanes;
    cfg.threads = threads;
    cfg.master_seed = seed;
    VisitCountSink sink(g.vertex_count());
    run_walk_campaign(g, cfg, sink);
    return sink.counts;
}

} // namespace

TEST_CASE("random_walk basics") {
    const Graph fig1 = testsupport::fig1();

    SECTION("L=1 is just the start vertex") {
        const Walk w = random_walk(fig1, 2, 1, SelectorKind::Scaled, 77);
        CHECK(w.vertices == std::vector<uint32_t>{2});
    }
    SECTION("forced moves on a single edge") {
        const Graph p2 = testsupport::path(2);
        for (auto sel : {SelectorKind::NaiveMod, SelectorKind::XorMod, SelectorKind::Scaled}) {
            const Walk w = random_walk(p2, 0, 3, sel, 123);
            CHECK(w.vertices == std::vector<uint32_t>{0, 1, 0});
        }
    }
    SECTION("deterministic re-run") {
        const Walk a = random_walk(fig1, 0, 3, SelectorKind::Scaled, 42);
        const Walk b = random_walk(fig1, 0, 3, SelectorKind::Scaled, 42);
        CHECK(a.vertices == b.vertices);
        CHECK(a.vertices.size() == 3);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(random_walk(fig1, 0, 0, SelectorKind::Scaled, 1),
                        std::invalid_argument);
        const Graph iso = Graph::from_edges(3, {{0, 1}}); // vertex 2 isolated
        CHECK_THROWS_AS(random_walk(iso, 2, 2, SelectorKind::Scaled, 1), std::invalid_argument);
        CHECK(random_walk(iso, 2, 1, SelectorKind::Scaled, 1).vertices.size() == 1);
    }
}

TEST_CASE("random_bouquet lanes replay random_walk bitwise") {
    const Graph g = make_scale_free(300, 4, 5);
    for (auto sel : {SelectorKind::NaiveMod, SelectorKind::XorMod, SelectorKind::Scaled}) {
        const SeedSet seeds = gen_sorted_seeds(8, 99);
        const auto walks = random_bouquet(g, 7, 12, 8, seeds, sel);
        REQUIRE(walks.size() == 8);
        for (uint32_t b = 0; b < 8; ++b) {
            const Walk solo = random_walk(g, 7, 12, sel, seeds.seeds[b]);
            CHECK(walks[b].vertices == solo.vertices);
        }
    }

    SECTION("degenerate width 1") {
        const SeedSet seeds = gen_sorted_seeds(1, 3);
        const auto walks = random_bouquet(g, 0, 5, 1, seeds, SelectorKind::Scaled);
        CHECK(walks[0].vertices == random_walk(g, 0, 5, SelectorKind::Scaled, seeds.seeds[0]).vertices);
    }
    SECTION("equal seeds give identical lanes") {
        SeedSet seeds;
        seeds.seeds = {123456u, 123456u};
        const auto walks = random_bouquet(g, 1, 9, 2, seeds, SelectorKind::Scaled);
        CHECK(walks[0].vertices == walks[1].vertices);
    }
}

TEST_CASE("campaign event counts") {
    const Graph g = testsupport::fig1();

    SECTION("K=1, L=1: one event per vertex") {
        TraceSink sink;
        CampaignConfig cfg;
        cfg.walks_per_vertex = 1;
        cfg.length = 1;
        cfg.mode = WalkMode::Saba;
        cfg.threads = 1;
        const CampaignReport rep = run_walk_campaign(g, cfg, sink);
        CHECK(sink.events.size() == g.vertex_count());
        CHECK(rep.total_steps == 0);
        std::set<uint32_t> starts;
        for (const auto& e : sink.events) starts.insert(e.vertex);
        CHECK(starts.size() == g.vertex_count());
    }
    SECTION("exact walk counts with partial lanes") {
        // K = 13 with 8 lanes leaves a 5-lane tail bouquet
        TraceSink sink;
        CampaignConfig cfg;
        cfg.walks_per_vertex = 13;
        cfg.length = 4;
        cfg.mode = WalkMode::Saba;
        cfg.threads = 1;
        const CampaignReport rep = run_walk_campaign(g, cfg, sink);
        CHECK(rep.total_steps == g.vertex_count() * 13 * 3);
        CHECK(sink.events.size() == g.vertex_count() * 13 * 4);
        // every walk id appears exactly L times
        std::map<uint64_t, uint32_t> per_id;
        for (const auto& e : sink.events) ++per_id[e.id];
        CHECK(per_id.size() == g.vertex_count() * 13);
        for (const auto& [id, cnt] : per_id) CHECK(cnt == 4);
    }
}

TEST_CASE("campaign modes produce identical visit totals for matched randomness") {
    const Graph g = make_scale_free(400, 5, 21);

    SECTION("naive == vector-mod (same per-walk LCG streams)") {
        const auto a = campaign_counts(g, WalkMode::Naive, 64, 7, 9);
        const auto b = campaign_counts(g, WalkMode::VectorMod, 64, 7, 9);
        CHECK(a == b);
    }
    SECTION("hash == saba (sorting is a reordering)") {
        const auto a = campaign_counts(g, WalkMode::Hash, 64, 7, 9);
        const auto b = campaign_counts(g, WalkMode::Saba, 64, 7, 9);
        CHECK(a == b);
    }
    SECTION("totals are thread-invariant") {
        for (WalkMode m : {WalkMode::Naive, WalkMode::Saba}) {
            const auto t1 = campaign_counts(g, m, 32, 6, 4, 1);
            const auto t4 = campaign_counts(g, m, 32, 6, 4, 4);
            CHECK(t1 == t4);
        }
    }
    SECTION("lane width does not change totals") {
        const auto l8 = campaign_counts(g, WalkMode::Saba, 64, 7, 9, 1, 8);
        const auto l16 = campaign_counts(g, WalkMode::Saba, 64, 7, 9, 1, 16);
        CHECK(l8 == l16);
    }
}

TEST_CASE("campaign trace: adjacency and lockstep") {
    const Graph g = make_random_connected(120, 150, 31);
    TraceSink sink;
    CampaignConfig cfg;
    cfg.walks_per_vertex = 16;
    cfg.length = 6;
    // hash mode: bouquets cover consecutive walk ids, so id/8 recovers them
    cfg.mode = WalkMode::Hash;
    cfg.lanes = 8;
    cfg.threads = 1;
    run_walk_campaign(g, cfg, sink);

    // reconstruct walks, check every consecutive pair is an edge
    std::map<uint64_t, std::vector<std::pair<uint32_t, uint32_t>>> walks;
    for (const auto& e : sink.events) walks[e.id].push_back({e.step, e.vertex});
    for (auto& [id, path] : walks) {
        std::sort(path.begin(), path.end());
        REQUIRE(path.size() == 6);
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            CHECK(path[i].first + 1 == path[i + 1].first);
            CHECK(g.has_edge(path[i].second, path[i + 1].second));
        }
    }

    // lockstep: within one bouquet (8 consecutive walk ids of a vertex, saba
    // order is per-bouquet), all step-l events precede step-(l+1) events
    std::map<uint64_t, std::vector<std::pair<uint32_t, size_t>>> order; // id -> (step, pos)
    for (size_t pos = 0; pos < sink.events.size(); ++pos)
        order[sink.events[pos].id / 8].push_back({sink.events[pos].step, pos});
    for (auto& [bouquet, evs] : order) {
        for (uint32_t l = 0; l + 1 < 6; ++l) {
            size_t max_l = 0, min_l1 = ~size_t(0);
            for (auto [step, pos] : evs) {
                if (step == l) max_l = std::max(max_l, pos);
                if (step == l + 1) min_l1 = std::min(min_l1, pos);
            }
            CHECK(max_l < min_l1);
        }
    }
}

TEST_CASE("branching statistics") {
    SECTION("empty trace is an error") {
        std::vector<uint64_t> hist(9, 0);
        CHECK_THROWS_AS(branching_stats(std::span<const uint64_t>(hist)), std::invalid_argument);
        CHECK_THROWS_AS(branching_stats(std::span<const uint32_t>(), 8), std::invalid_argument);
    }
    SECTION("percentiles and mean from a known histogram") {
        // 100 steps: 2 ones, 10 twos, 30 fours, 58 eights
        std::vector<uint64_t> hist(9, 0);
        hist[1] = 2;
        hist[2] = 10;
        hist[4] = 30;
        hist[8] = 58;
        const BranchingStats st = branching_stats(std::span<const uint64_t>(hist));
        CHECK(st.samples == 100);
        CHECK(st.p1 == 1);
        CHECK(st.p10 == 2);
        CHECK(st.p25 == 4);
        CHECK(st.mean == Catch::Approx((2.0 + 20 + 120 + 464) / 100.0));
    }
    SECTION("all lanes forced equal: distinct count 1 at every step") {
        const Graph p2 = testsupport::path(2);
        CampaignConfig cfg;
        cfg.walks_per_vertex = 64;
        cfg.length = 5;
        cfg.mode = WalkMode::Saba;
        cfg.collect_stats = true;
        cfg.threads = 1;
        VisitCountSink sink(2);
        const CampaignReport rep = run_walk_campaign(p2, cfg, sink);
        REQUIRE(rep.has_stats);
        CHECK(rep.branching.mean == 1.0);
        CHECK(rep.branching.p1 == 1);
        CHECK(rep.branching.p25 == 1);
    }
    SECTION("uniform 8-way choice matches the distinct-sample model") {
        // complete graph K9: every step selects uniformly among 8 targets;
        // step-1 lanes share one source, so E[distinct] = 8 (1 - (7/8)^8)
        const Graph k9 = testsupport::complete(9);
        CampaignConfig cfg;
        cfg.walks_per_vertex = 4096;
        cfg.length = 2; // step 1 only
        cfg.mode = WalkMode::Hash;
        cfg.collect_stats = true;
        cfg.threads = 1;
        VisitCountSink sink(9);
        const CampaignReport rep = run_walk_campaign(k9, cfg, sink);
        REQUIRE(rep.has_stats);
        CHECK(rep.branching.mean == Catch::Approx(5.2511).margin(0.12));
    }
}

TEST_CASE("saba clusters bouquets: fewer distinct lanes than hash") {
    const Graph g = make_scale_free(2000, 8, 17);
    auto run = [&](WalkMode mode) {
        CampaignConfig cfg;
        cfg.walks_per_vertex = 2048;
        cfg.length = 10;
        cfg.mode = mode;
        cfg.collect_stats = true;
        cfg.threads = 1;
        VisitCountSink sink(g.vertex_count());
        return run_walk_campaign(g, cfg, sink);
    };
    const CampaignReport hash = run(WalkMode::Hash);
    const CampaignReport saba = run(WalkMode::Saba);
    REQUIRE(hash.has_stats);
    REQUIRE(saba.has_stats);
    CHECK(saba.branching.mean < hash.branching.mean);

    // step-1 clustering: same seed multiset, sorted grouping touches fewer
    // distinct selections per bouquet
    CHECK(saba.proxy.per_step[0] <= hash.proxy.per_step[0]);
    // same walks overall
    CHECK(saba.proxy.per_step.size() == hash.proxy.per_step.size());
}

TEST_CASE("campaign validates configuration") {
    const Graph g = testsupport::triangle();
    VisitCountSink sink(3);
    CampaignConfig cfg;
    cfg.walks_per_vertex = 0;
    CHECK_THROWS_AS(run_walk_campaign(g, cfg, sink), std::invalid_argument);
    cfg.walks_per_vertex = 1;
    cfg.length = 0;
    CHECK_THROWS_AS(run_walk_campaign(g, cfg, sink), std::invalid_argument);
    cfg.length = 2;
    cfg.lanes = 7;
    CHECK_THROWS_AS(run_walk_campaign(g, cfg, sink), std::invalid_argument);
    cfg.lanes = 8;
    const Graph iso = Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}});
    VisitCountSink sink2(4);
    CHECK_THROWS_AS(run_walk_campaign(iso, cfg, sink2), std::invalid_argument);
}
