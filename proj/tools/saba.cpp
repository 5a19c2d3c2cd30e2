// saba: approximate all-edges spanning centrality with bouquet random walks.
//
// Subcommands:
//   aesc      approximate spanning centrality of every edge (TSV output)
//   exact     exact spanning centrality via the Laplacian oracle (TSV output)
//   bench     synthetic walk and aesc benchmarks across modes
//   rng-dump  raw little-endian 32-bit selector words to stdout
//   stats     graph summary and optional campaign branching statistics
//
// Run metadata goes to stderr; primary output to stdout or --out.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include "saba/aesc.hpp"
#include "saba/bench.hpp"
#include "saba/exact.hpp"
#include "saba/gen.hpp"
#include "saba/graph.hpp"
#include "saba/stream.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr const char* kVersion = "saba 1.0.0";

saba::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    saba::check_data(in.good(), "cannot open graph file: " + path);
    saba::Graph g = saba::Graph::load_edge_list(in);
    std::cerr << "# graph " << path << ": n=" << g.vertex_count() << " m=" << g.edge_count()
              << " max_degree=" << g.max_degree()
              << (saba::is_connected(g) ? " connected" : " disconnected") << "\n";
    return g;
}

saba::SelectorKind parse_selector(const std::string& s) {
    if (s == "naive") return saba::SelectorKind::NaiveMod;
    if (s == "xor") return saba::SelectorKind::XorMod;
    if (s == "scaled") return saba::SelectorKind::Scaled;
    throw std::invalid_argument("unknown selector: " + s);
}

void write_values(const std::string& out_path, const saba::Graph& g,
                  std::span<const double> values) {
    if (out_path.empty()) {
        saba::write_centrality_tsv(std::cout, g, values);
    } else {
        std::ofstream out(out_path);
        saba::check_data(out.good(), "cannot open output file: " + out_path);
        saba::write_centrality_tsv(out, g, values);
        saba::check_data(out.good(), "write failure: " + out_path);
    }
}

struct AescArgs {
    std::string graph, out;
    saba::AescConfig cfg;
    std::string mode = "saba";
};

int run_aesc(const AescArgs& a) {
    saba::AescConfig cfg = a.cfg;
    cfg.mode = saba::parse_walk_mode(a.mode);
    saba::Graph g = load_graph(a.graph);
    std::cerr << "# aesc epsilon=" << cfg.epsilon << " delta=" << cfg.delta
              << " omega=" << cfg.power_iterations << " gamma=" << cfg.candidate_nodes
              << " mode=" << saba::to_string(cfg.mode) << " threads=" << cfg.threads
              << " lanes=" << cfg.lanes << " seed=" << cfg.master_seed << "\n";
    const saba::CentralityEstimate est = saba::aesc(g, cfg);
    if (est.plan.clamped)
        std::cerr << "# warning: decay estimate lambda=" << est.plan.lambda_hat
                  << " forced the truncation clamp (tau_max)\n";
    std::cerr << "# plan: lambda_hat=" << est.plan.lambda_hat << " max_tau=" << est.plan.max_tau
              << " walk_pairs=" << est.total_walk_pairs << " walk_steps=" << est.total_walk_steps
              << " seconds=" << est.seconds << "\n";
    write_values(a.out, g, est.s_hat);
    return 0;
}

int run_exact(const std::string& graph, const std::string& out, uint32_t max_n) {
    saba::Graph g = load_graph(graph);
    saba::ExactOptions opt;
    opt.max_vertices = max_n;
    const std::vector<double> sc = saba::exact_sc(g, opt);
    write_values(out, g, sc);
    return 0;
}

struct BenchArgs {
    std::string graph, experiment = "synthetic", report_path;
    std::vector<std::string> modes{"naive", "saba"};
    saba::BenchConfig cfg;
};

int run_bench(const BenchArgs& a) {
    saba::BenchConfig cfg = a.cfg;
    cfg.kind = a.experiment == "aesc" ? saba::ExperimentKind::Aesc
                                      : saba::ExperimentKind::Synthetic;
    if (a.experiment != "aesc" && a.experiment != "synthetic")
        throw std::invalid_argument("unknown experiment: " + a.experiment);
    cfg.modes.clear();
    for (const std::string& m : a.modes) cfg.modes.push_back(saba::parse_walk_mode(m));
    saba::Graph g = load_graph(a.graph);
    const saba::BenchReport report = saba::run_benchmark(g, a.graph, cfg);
    saba::write_report_text(std::cout, report);
    saba::write_report_machine(std::cout, report);
    if (!a.report_path.empty()) {
        std::ofstream out(a.report_path);
        saba::check_data(out.good(), "cannot open report file: " + a.report_path);
        saba::write_report_machine(out, report);
    }
    return 0;
}

struct DumpArgs {
    std::string graph, selector = "scaled";
    uint64_t walks = 1;
    uint32_t length = 2;
    uint64_t seed = 42;
    uint32_t start = 0;
    bool all_starts = false;
};

int run_rng_dump(const DumpArgs& a) {
    saba::Graph g = a.graph.empty()
                        ? saba::make_scale_free(1024, 8, 1234567) // fixed demo graph
                        : load_graph(a.graph);
    if (a.graph.empty())
        std::cerr << "# rng-dump: using built-in scale-free demo graph (n=1024)\n";
    saba::StreamSpec spec;
    spec.selector = parse_selector(a.selector);
    spec.walks_per_vertex = a.walks;
    spec.length = a.length;
    spec.master_seed = a.seed;
    if (a.all_starts) {
        spec.starts.resize(g.vertex_count());
        for (uint32_t v = 0; v < g.vertex_count(); ++v) spec.starts[v] = v;
    } else {
        spec.starts = {a.start};
    }
    const uint64_t words = saba::rng_stream(g, spec, std::cout);
    std::cout.flush();
    std::cerr << "# rng-dump: " << words << " words (" << 4 * words << " bytes)\n";
    return 0;
}

struct StatsArgs {
    std::string graph, mode = "saba";
    uint64_t walks = 0;
    uint32_t length = 10;
    uint32_t lanes = 8;
    uint64_t seed = 42;
    int threads = 0;
};

int run_stats(const StatsArgs& a) {
    saba::Graph g = load_graph(a.graph);
    uint64_t deg_sum = 0;
    uint32_t dmin = ~0u;
    for (uint32_t v = 0; v < g.vertex_count(); ++v) {
        deg_sum += g.degree(v);
        dmin = std::min(dmin, g.degree(v));
    }
    std::cout << "vertices " << g.vertex_count() << "\n"
              << "edges " << g.edge_count() << "\n"
              << "degree_min " << dmin << "\n"
              << "degree_avg " << static_cast<double>(deg_sum) / g.vertex_count() << "\n"
              << "degree_max " << g.max_degree() << "\n"
              << "connected " << (saba::is_connected(g) ? "yes" : "no") << "\n"
              << "bipartite " << (saba::bipartition(g).first ? "yes" : "no") << "\n";
    if (a.walks == 0) return 0;

    saba::CampaignConfig cc;
    cc.walks_per_vertex = a.walks;
    cc.length = a.length;
    cc.mode = saba::parse_walk_mode(a.mode);
    cc.lanes = a.lanes;
    cc.threads = a.threads;
    cc.master_seed = a.seed;
    cc.collect_stats = true;
    saba::check_arg(saba::is_lane_mode(cc.mode), "stats: branching requires a lane-batched mode");
    saba::VisitCountSink sink(g.vertex_count());
    const saba::CampaignReport cr = saba::run_walk_campaign(g, cc, sink);
    std::cout << "campaign_mode " << saba::to_string(cc.mode) << "\n"
              << "campaign_steps " << cr.total_steps << "\n"
              << "campaign_seconds " << cr.seconds << "\n";
    if (cr.has_stats) {
        std::cout << "branch_p1 " << cr.branching.p1 << "\n"
                  << "branch_p10 " << cr.branching.p10 << "\n"
                  << "branch_p25 " << cr.branching.p25 << "\n"
                  << "branch_mean " << cr.branching.mean << "\n"
                  << "distinct_proxy " << cr.proxy.total << "\n"
                  << "candidate_degree_mean " << cr.branching.mean_candidate_degree << "\n";
        const auto model = saba::expected_distinct_ratio(
            cc.lanes, std::max<uint64_t>(1, static_cast<uint64_t>(
                                                cr.branching.mean_candidate_degree + 0.5)));
        std::cout << "model_distinct_exact " << model.exact * cc.lanes << "\n"
                  << "model_distinct_approx " << model.approx * cc.lanes << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spanning-centrality approximation with bouquet random walks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // aesc
    AescArgs aesc_args;
    auto* cmd_aesc = app.add_subcommand("aesc", "approximate spanning centrality of every edge");
    cmd_aesc->add_option("--graph", aesc_args.graph, "edge-list file (SNAP format)")->required();
    cmd_aesc->add_option("--epsilon", aesc_args.cfg.epsilon, "absolute error threshold")
        ->capture_default_str();
    cmd_aesc->add_option("--delta", aesc_args.cfg.delta, "failure probability")
        ->capture_default_str();
    cmd_aesc->add_option("--omega", aesc_args.cfg.power_iterations,
                         "decay-estimation power iterations")
        ->capture_default_str();
    cmd_aesc->add_option("--gamma", aesc_args.cfg.candidate_nodes,
                         "candidate-node count (interface parity; unused)")
        ->capture_default_str();
    cmd_aesc->add_option("--mode", aesc_args.mode, "walker mode: naive|vector-mod|hash|saba")
        ->capture_default_str();
    cmd_aesc->add_option("--threads", aesc_args.cfg.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    cmd_aesc->add_option("--lanes", aesc_args.cfg.lanes, "bouquet width (power of two)")
        ->capture_default_str();
    cmd_aesc->add_option("--seed", aesc_args.cfg.master_seed, "master seed")
        ->capture_default_str();
    cmd_aesc->add_option("--out", aesc_args.out, "output TSV path (default: stdout)");
    cmd_aesc->add_option("--tau-max", aesc_args.cfg.max_truncation, "truncation clamp")
        ->capture_default_str();
    cmd_aesc->add_flag("--per-edge-tau", aesc_args.cfg.per_edge_tau,
                       "per-edge truncation lengths");
    cmd_aesc->add_option("--switch-cap", aesc_args.cfg.switch_depth_cap,
                         "cap the propagation depth (forces the walk phase; -1 = off)")
        ->capture_default_str();

    // exact
    std::string exact_graph, exact_out;
    uint32_t exact_max_n = 2000;
    auto* cmd_exact = app.add_subcommand("exact", "exact spanning centrality (small graphs)");
    cmd_exact->add_option("--graph", exact_graph, "edge-list file (SNAP format)")->required();
    cmd_exact->add_option("--out", exact_out, "output TSV path (default: stdout)");
    cmd_exact->add_option("--max-n", exact_max_n, "oracle vertex limit")->capture_default_str();

    // bench
    BenchArgs bench_args;
    auto* cmd_bench = app.add_subcommand("bench", "walk and aesc benchmarks");
    cmd_bench->add_option("--graph", bench_args.graph, "edge-list file (SNAP format)")->required();
    cmd_bench->add_option("--experiment", bench_args.experiment, "synthetic|aesc")
        ->capture_default_str();
    cmd_bench->add_option("--mode", bench_args.modes, "modes: naive,vector-mod,hash,saba")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--walks", bench_args.cfg.walks, "walks per vertex (synthetic)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--length", bench_args.cfg.lengths, "walk lengths (synthetic)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--epsilon", bench_args.cfg.epsilons, "error thresholds (aesc)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--threads", bench_args.cfg.thread_counts, "thread counts")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--lanes", bench_args.cfg.lanes, "bouquet width (power of two)")
        ->capture_default_str();
    cmd_bench->add_option("--reps", bench_args.cfg.reps, "repetitions per point (median)")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bench_args.cfg.master_seed, "master seed")
        ->capture_default_str();
    cmd_bench->add_option("--delta", bench_args.cfg.delta, "failure probability (aesc)")
        ->capture_default_str();
    cmd_bench->add_option("--report", bench_args.report_path,
                          "write machine-readable RESULT lines to this file");

    // rng-dump
    DumpArgs dump_args;
    auto* cmd_dump = app.add_subcommand(
        "rng-dump", "raw little-endian 32-bit selector words to stdout");
    cmd_dump->add_option("--selector", dump_args.selector, "naive|xor|scaled")
        ->capture_default_str();
    cmd_dump->add_option("--walks", dump_args.walks, "walks per start vertex")
        ->capture_default_str();
    cmd_dump->add_option("--length", dump_args.length, "walk length (L-1 words per walk)")
        ->capture_default_str();
    cmd_dump->add_option("--seed", dump_args.seed, "master seed")->capture_default_str();
    cmd_dump->add_option("--graph", dump_args.graph,
                         "edge-list file (default: built-in scale-free demo graph)");
    cmd_dump->add_option("--start", dump_args.start, "start vertex")->capture_default_str();
    cmd_dump->add_flag("--all-starts", dump_args.all_starts, "walk from every vertex");

    // stats
    StatsArgs stats_args;
    auto* cmd_stats = app.add_subcommand("stats", "graph summary and branching statistics");
    cmd_stats->add_option("--graph", stats_args.graph, "edge-list file (SNAP format)")->required();
    cmd_stats->add_option("--walks", stats_args.walks,
                          "walks per vertex (0 = graph summary only)")
        ->capture_default_str();
    cmd_stats->add_option("--length", stats_args.length, "walk length")->capture_default_str();
    cmd_stats->add_option("--mode", stats_args.mode, "lane mode: vector-mod|hash|saba")
        ->capture_default_str();
    cmd_stats->add_option("--lanes", stats_args.lanes, "bouquet width")->capture_default_str();
    cmd_stats->add_option("--seed", stats_args.seed, "master seed")->capture_default_str();
    cmd_stats->add_option("--threads", stats_args.threads, "worker threads (0 = all cores)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e); // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        std::cerr << "# " << kVersion << "\n";
        if (cmd_aesc->parsed()) return run_aesc(aesc_args);
        if (cmd_exact->parsed()) return run_exact(exact_graph, exact_out, exact_max_n);
        if (cmd_bench->parsed()) return run_bench(bench_args);
        if (cmd_dump->parsed()) return run_rng_dump(dump_args);
        if (cmd_stats->parsed()) return run_stats(stats_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
