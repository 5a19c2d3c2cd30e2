#pragma once

#include "saba/aesc.hpp"
#include "saba/common.hpp"
#include "saba/graph.hpp"
#include "saba/walker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

// Desk-scale benchmark harness: synthetic walk campaigns across modes and
// AESC timing across epsilon/thread grids. Timings cover computation only;
// graph loading happens before the harness is entered.

namespace saba {

// =============================================================================
// Distinct-sample model
// =============================================================================

struct DistinctRatio {
    double exact = 0.0;   // (beta/alpha) (1 - (1 - 1/beta)^alpha)
    double approx = 0.0;  // (beta/alpha) (1 - e^{-alpha/beta})
};

/// Expected ratio of distinct items to samples when alpha items are drawn
/// uniformly from beta bins; both the exact form and the exponential
/// approximation.
inline DistinctRatio expected_distinct_ratio(uint64_t alpha, uint64_t beta) {
    check_arg(alpha >= 1, "expected_distinct_ratio: alpha must be >= 1");
    check_arg(beta >= 1, "expected_distinct_ratio: beta must be >= 1");
    const double a = static_cast<double>(alpha);
    const double b = static_cast<double>(beta);
    DistinctRatio r;
    r.exact = (b / a) * (1.0 - std::pow(1.0 - 1.0 / b, a));
    r.approx = (b / a) * (1.0 - std::exp(-a / b));
    return r;
}

/// Software stand-in for hardware cache-miss counters: per-step and total
/// counts of distinct lane vertices across the campaign's bouquet steps.
inline DistinctProxy distinct_access_proxy(const CampaignReport& report) {
    check_arg(report.has_stats, "distinct_access_proxy: campaign ran without stats collection");
    return report.proxy;
}

// =============================================================================
// Benchmark configuration and report
// =============================================================================

enum class ExperimentKind { Synthetic, Aesc };

struct BenchConfig {
    ExperimentKind kind = ExperimentKind::Synthetic;
    std::vector<WalkMode> modes{WalkMode::Naive, WalkMode::Saba};
    std::vector<uint64_t> walks{2048};
    std::vector<uint32_t> lengths{10};
    std::vector<double> epsilons{0.05};
    std::vector<int> thread_counts{0};
    uint32_t reps = 3;
    uint32_t lanes = 8;
    uint64_t master_seed = 42;
    double delta = 0.05;             // aesc experiments
    uint32_t power_iterations = 30;  // aesc experiments
};

struct BenchRow {
    WalkMode mode = WalkMode::Naive;
    uint64_t walks = 0;       // synthetic only
    uint32_t length = 0;      // synthetic only
    double epsilon = 0.0;     // aesc only
    int threads = 0;
    uint32_t reps_used = 0;
    double seconds_median = 0.0;
    double steps_per_sec = 0.0;
    double speedup_vs_naive = 0.0;  // 0 when no naive baseline in the report
    bool timer_warning = false;
    bool has_branch = false;
    BranchingStats branch;
    uint64_t distinct_proxy = 0;
};

struct BenchReport {
    std::string graph_name;
    ExperimentKind kind = ExperimentKind::Synthetic;
    uint32_t vertices = 0;
    uint64_t edges = 0;
    std::vector<BenchRow> rows;
};

namespace detail {

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t k = v.size();
    return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

template <class RunOnce>
inline std::pair<double, std::pair<uint32_t, bool>> timed_median(uint32_t reps, RunOnce&& run) {
    uint32_t used = std::max(1u, reps);
    bool warned = false;
    for (;;) {
        std::vector<double> times;
        times.reserve(used);
        for (uint32_t r = 0; r < used; ++r) times.push_back(run());
        const double med = median_of(times);
        // sub-millisecond medians are below timer confidence: repeat more
        if (med < 1e-3 && used < 48) {
            used = std::min<uint32_t>(48, used * 4);
            warned = true;
            continue;
        }
        return {med, {used, warned}};
    }
}

} // namespace detail

/// Execute the configuration grid. Synthetic rows time walk generation with a
/// per-vertex visit-count sink (stats collected in a separate untimed pass);
/// aesc rows time the full aesc() call. Speedups are computed against the
/// naive row with matching parameters from this same report.
inline BenchReport run_benchmark(const Graph& g, const std::string& graph_name,
                                 const BenchConfig& cfg) {
    check_arg(!cfg.modes.empty(), "run_benchmark: no modes");
    check_arg(cfg.reps >= 1, "run_benchmark: reps must be >= 1");
    BenchReport report;
    report.graph_name = graph_name;
    report.kind = cfg.kind;
    report.vertices = g.vertex_count();
    report.edges = g.edge_count();

    if (cfg.kind == ExperimentKind::Synthetic) {
        check_arg(!cfg.walks.empty() && !cfg.lengths.empty() && !cfg.thread_counts.empty(),
                  "run_benchmark: empty synthetic grid");
        for (int threads : cfg.thread_counts)
            for (uint64_t K : cfg.walks)
                for (uint32_t L : cfg.lengths)
                    for (WalkMode mode : cfg.modes) {
                        CampaignConfig cc;
                        cc.walks_per_vertex = K;
                        cc.length = L;
                        cc.mode = mode;
                        cc.lanes = cfg.lanes;
                        cc.threads = threads;
                        cc.master_seed = cfg.master_seed;
                        cc.collect_stats = false;

                        BenchRow row;
                        row.mode = mode;
                        row.walks = K;
                        row.length = L;
                        row.threads = threads;
                        auto [med, used_warn] = detail::timed_median(cfg.reps, [&] {
                            VisitCountSink sink(g.vertex_count());
                            return run_walk_campaign(g, cc, sink).seconds;
                        });
                        row.seconds_median = med;
                        row.reps_used = used_warn.first;
                        row.timer_warning = used_warn.second;
                        const double steps = static_cast<double>(g.vertex_count()) *
                                             static_cast<double>(K) * static_cast<double>(L - 1);
                        row.steps_per_sec = med > 0 ? steps / med : 0.0;

                        if (is_lane_mode(mode) && L > 1) {
                            cc.collect_stats = true;
                            VisitCountSink sink(g.vertex_count());
                            const CampaignReport cr = run_walk_campaign(g, cc, sink);
                            row.has_branch = cr.has_stats;
                            row.branch = cr.branching;
                            row.distinct_proxy = cr.proxy.total;
                        }
                        report.rows.push_back(std::move(row));
                    }
    } else {
        check_arg(!cfg.epsilons.empty() && !cfg.thread_counts.empty(),
                  "run_benchmark: empty aesc grid");
        for (int threads : cfg.thread_counts)
            for (double eps : cfg.epsilons)
                for (WalkMode mode : cfg.modes) {
                    AescConfig ac;
                    ac.epsilon = eps;
                    ac.delta = cfg.delta;
                    ac.power_iterations = cfg.power_iterations;
                    ac.mode = mode;
                    ac.master_seed = cfg.master_seed;
                    ac.threads = threads;
                    ac.lanes = cfg.lanes;

                    BenchRow row;
                    row.mode = mode;
                    row.epsilon = eps;
                    row.threads = threads;
                    uint64_t walk_steps = 0;
                    auto [med, used_warn] = detail::timed_median(cfg.reps, [&] {
                        const auto t0 = std::chrono::steady_clock::now();
                        const CentralityEstimate est = aesc(g, ac);
                        const auto t1 = std::chrono::steady_clock::now();
                        walk_steps = est.total_walk_steps;
                        return std::chrono::duration<double>(t1 - t0).count();
                    });
                    row.seconds_median = med;
                    row.reps_used = used_warn.first;
                    row.timer_warning = used_warn.second;
                    row.steps_per_sec =
                        med > 0 ? static_cast<double>(walk_steps) / med : 0.0;
                    report.rows.push_back(std::move(row));
                }
    }

    // speedups against the matching naive row of this report
    for (BenchRow& row : report.rows) {
        for (const BenchRow& base : report.rows) {
            if (base.mode != WalkMode::Naive) continue;
            const bool match = cfg.kind == ExperimentKind::Synthetic
                                   ? (base.walks == row.walks && base.length == row.length &&
                                      base.threads == row.threads)
                                   : (base.epsilon == row.epsilon && base.threads == row.threads);
            if (match && base.seconds_median > 0) {
                row.speedup_vs_naive = base.seconds_median / row.seconds_median;
                break;
            }
        }
    }
    return report;
}

// =============================================================================
// Report rendering
// =============================================================================

inline void write_report_text(std::ostream& out, const BenchReport& r) {
    out << "benchmark: " << r.graph_name << "  (n=" << r.vertices << ", m=" << r.edges
        << ", kind=" << (r.kind == ExperimentKind::Synthetic ? "synthetic" : "aesc") << ")\n";
    char buf[256];
    for (const BenchRow& row : r.rows) {
        if (r.kind == ExperimentKind::Synthetic)
            std::snprintf(buf, sizeof(buf),
                          "  %-10s K=%-6llu L=%-3u threads=%-2d  %10.6f s  %12.3e steps/s",
                          to_string(row.mode), static_cast<unsigned long long>(row.walks),
                          row.length, row.threads, row.seconds_median, row.steps_per_sec);
        else
            std::snprintf(buf, sizeof(buf),
                          "  %-10s eps=%-7g threads=%-2d  %10.6f s  %12.3e walk-steps/s",
                          to_string(row.mode), row.epsilon, row.threads, row.seconds_median,
                          row.steps_per_sec);
        out << buf;
        if (row.speedup_vs_naive > 0) {
            std::snprintf(buf, sizeof(buf), "  speedup=%.2fx", row.speedup_vs_naive);
            out << buf;
        }
        if (row.has_branch) {
            std::snprintf(buf, sizeof(buf), "  branch p1/p10/p25=%u/%u/%u mean=%.2f proxy=%llu",
                          row.branch.p1, row.branch.p10, row.branch.p25, row.branch.mean,
                          static_cast<unsigned long long>(row.distinct_proxy));
            out << buf;
        }
        if (row.timer_warning) out << "  [timer: reps auto-increased to " << row.reps_used << "]";
        out << '\n';
    }
}

/// Machine-readable rows: `RESULT key=value ...`, one line per config point.
inline void write_report_machine(std::ostream& out, const BenchReport& r) {
    char buf[128];
    for (const BenchRow& row : r.rows) {
        out << "RESULT graph=" << r.graph_name << " mode=" << to_string(row.mode);
        if (r.kind == ExperimentKind::Synthetic)
            out << " K=" << row.walks << " L=" << row.length << " epsilon=-";
        else
            out << " K=- L=-"
                << " epsilon=" << row.epsilon;
        std::snprintf(buf, sizeof(buf), " threads=%d seconds_median=%.9g steps_per_sec=%.9g",
                      row.threads, row.seconds_median, row.steps_per_sec);
        out << buf;
        if (row.speedup_vs_naive > 0) {
            std::snprintf(buf, sizeof(buf), " speedup_vs_naive=%.6g", row.speedup_vs_naive);
            out << buf;
        } else {
            out << " speedup_vs_naive=-";
        }
        if (row.has_branch) {
            std::snprintf(buf, sizeof(buf),
                          " branch_p1=%u branch_p10=%u branch_p25=%u branch_mean=%.6g"
                          " distinct_proxy=%llu",
                          row.branch.p1, row.branch.p10, row.branch.p25, row.branch.mean,
                          static_cast<unsigned long long>(row.distinct_proxy));
            out << buf;
        } else {
            out << " branch_p1=- branch_p10=- branch_p25=- branch_mean=- distinct_proxy=-";
        }
        out << '\n';
    }
}

} // namespace saba
