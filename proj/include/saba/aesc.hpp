#pragma once

#include "saba/common.hpp"
#include "saba/graph.hpp"
#include "saba/rng.hpp"
#include "saba/walker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Approximate all-edges spanning centrality.
//
// Per source v_i the estimator accumulates, for every incident edge {v_i,v_j},
// the truncated series g(i,j) = sum_{t=0..tau} [ p_t(v_i|v_i)/d(v_i)
// - p_t(v_j|v_i)/d(v_j) ]; then s(e) = g(i,j) + g(j,i) equals the edge's
// effective resistance up to the truncation tail. Terms t = 0..tau~ come
// exactly from the landing-probability propagation; terms beyond tau~ are
// estimated by two-way truncated random walks whose vertices are scored by
// p_tau~(x|v_i)/d(x) (unbiased by reversibility). On bipartite graphs the
// alternating eigencomponent never decays; tau is forced odd (its partial sum
// is then exactly zero) and its limit weight 1/(2m) is added per direction.

namespace saba {

// =============================================================================
// Configuration and result types
// =============================================================================

struct AescConfig {
    double epsilon = 0.05;           // absolute error threshold
    double delta = 0.05;             // failure probability
    uint32_t power_iterations = 30;  // omega: decay-estimation iterations
    uint32_t candidate_nodes = 0;    // gamma: accepted for interface parity, not consumed
    WalkMode mode = WalkMode::Saba;
    uint64_t master_seed = 42;
    int threads = 0;                 // 0 = all hardware threads
    uint32_t lanes = 8;
    uint32_t max_truncation = 128;   // tau_max clamp
    bool per_edge_tau = false;
    int64_t switch_depth_cap = -1;   // cap on tau~ (forces the walk phase); <0 = off
    HashSpec hash{};
};

struct TruncationPlan {
    std::vector<uint32_t> tau;        // per edge id, odd
    std::vector<uint32_t> tau_tilde;  // per source, filled by aesc()
    double lambda_hat = 0.0;
    bool clamped = false;
    uint32_t max_tau = 0;
};

struct LandingProbs {
    uint32_t source = 0;
    uint32_t depth = 0;
    std::vector<uint32_t> support;    // ascending vertex ids
    std::vector<double> prob;         // parallel to support

    [[nodiscard]] double prob_of(uint32_t v) const {
        auto it = std::lower_bound(support.begin(), support.end(), v);
        if (it == support.end() || *it != v) return 0.0;
        return prob[static_cast<size_t>(it - support.begin())];
    }
    [[nodiscard]] double sum() const {
        double s = 0.0;
        for (double p : prob) s += p;
        return s;
    }
};

struct WalkBudget {
    uint64_t n_walks = 0;  // traversal-phase crossover threshold
    uint64_t n_req = 0;    // per-edge two-way walk pairs
};

struct CentralityEstimate {
    std::vector<double> s_hat;   // per edge id
    std::vector<double> g_hat;   // per directed adjacency slot
    AescConfig config;
    TruncationPlan plan;
    bool bipartite = false;
    uint64_t total_walk_pairs = 0;
    uint64_t total_walk_steps = 0;
    double seconds = 0.0;
};

// =============================================================================
// Walk budget (NWalks substitute)
// =============================================================================

namespace detail {

inline double walks_needed_raw(int64_t tau_eff, double epsilon, double delta, uint32_t degree,
                               uint64_t edge_count) {
    if (tau_eff <= 0) return 0.0;
    const double scale = 0.5 * epsilon * static_cast<double>(degree); // epsilon' * d_i
    const double t = static_cast<double>(tau_eff);
    return std::ceil((2.0 * t * t / (scale * scale)) *
                     std::log(4.0 * static_cast<double>(edge_count) / delta));
}

} // namespace detail

/// Hoeffding walk count: n_req = ceil( 2 tau_eff^2 / (eps/2 * d_i)^2 * ln(4m/delta) ).
/// The per-pair statistic lies in [-tau_eff/d_i, tau_eff/d_i] because
/// p_tau~(x|v_i)/d(x) <= 1/d(v_i) for every x (reversibility).
inline uint64_t walk_budget(uint32_t tau_effective, double epsilon, double delta, uint32_t degree,
                            uint64_t edge_count) {
    check_arg(tau_effective >= 1, "walk_budget: tau_effective must be >= 1");
    check_arg(degree >= 1, "walk_budget: degree must be >= 1");
    check_arg(epsilon > 0.0 && epsilon < 1.0, "walk_budget: epsilon must be in (0,1)");
    check_arg(delta > 0.0 && delta < 1.0, "walk_budget: delta must be in (0,1)");
    const double v = detail::walks_needed_raw(tau_effective, epsilon, delta, degree, edge_count);
    check_arg(v < 9.0e18, "walk_budget: budget overflows");
    return static_cast<uint64_t>(v);
}

// =============================================================================
// Truncation plan (CalculateTau substitute)
// =============================================================================

namespace detail {

// Largest-magnitude eigenvalue of D^{-1/2} A D^{-1/2} after deflating the
// closed-form +-1 eigenvectors; omega steps of power iteration from a fixed
// deterministic start vector.
inline double estimate_decay(const Graph& g, uint32_t iterations, bool bipartite,
                             const std::vector<char>& side) {
    const uint32_t n = g.vertex_count();
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    std::vector<double> phi(n), inv_sqrt_d(n);
    for (uint32_t v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(v));
        phi[v] = std::sqrt(d / two_m);
        inv_sqrt_d[v] = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    auto sign = [&](uint32_t v) -> double { return (bipartite && side[v]) ? -1.0 : 1.0; };

    std::vector<double> x(n), y(n), z(n);
    for (uint32_t v = 0; v < n; ++v)
        x[v] = static_cast<double>(counter_hash(0x0ddc0ffeeull, v) >> 11) * 0x1.0p-53 - 0.5;

    auto project = [&](std::vector<double>& w) {
        double dot_phi = 0.0, dot_psi = 0.0;
        for (uint32_t v = 0; v < n; ++v) {
            dot_phi += w[v] * phi[v];
            if (bipartite) dot_psi += w[v] * sign(v) * phi[v];
        }
        for (uint32_t v = 0; v < n; ++v) {
            w[v] -= dot_phi * phi[v];
            if (bipartite) w[v] -= dot_psi * sign(v) * phi[v];
        }
    };
    auto norm = [&](const std::vector<double>& w) {
        double s = 0.0;
        for (double t : w) s += t * t;
        return std::sqrt(s);
    };

    project(x);
    double nx = norm(x);
    if (nx < 1e-12) return 0.0;
    for (double& t : x) t /= nx;

    double lambda = 0.0;
    for (uint32_t it = 0; it < iterations; ++it) {
        for (uint32_t v = 0; v < n; ++v) z[v] = x[v] * inv_sqrt_d[v];
        for (uint32_t u = 0; u < n; ++u) {
            double acc = 0.0;
            for (uint32_t v : g.neighbors(u)) acc += z[v];
            y[u] = acc * inv_sqrt_d[u];
        }
        project(y);
        const double ny = norm(y);
        if (ny < 1e-15) return 0.0;
        lambda = ny;
        for (uint32_t v = 0; v < n; ++v) x[v] = y[v] / ny;
    }
    return std::min(lambda, 1.0);
}

inline uint32_t make_odd_clamped(double raw, uint32_t max_truncation, bool& clamped) {
    uint32_t t = raw < 1.0 ? 1u
                           : static_cast<uint32_t>(std::min(
                                 raw, static_cast<double>(std::numeric_limits<uint32_t>::max() - 1)));
    t |= 1u; // odd: the alternating bipartite component sums to zero
    if (t > max_truncation) {
        t = max_truncation;
        if ((t & 1u) == 0) t -= 1;
        clamped = true;
    }
    return std::max(t, 1u);
}

} // namespace detail

/// Truncated walk lengths: tau = ceil( ln(4 d_max / (eps (1-lambda))) / ln(1/lambda) ),
/// forced odd, clamped to [1, tau_max]. With per_edge_tau, d_max is replaced by
/// max(d_i, d_j) per edge. lambda is estimated by power iteration (omega steps).
inline TruncationPlan truncated_lengths(const Graph& g, double epsilon, uint32_t power_iterations,
                                        uint32_t max_truncation = 128, bool per_edge = false) {
    check_arg(epsilon > 0.0 && epsilon < 1.0, "truncated_lengths: epsilon must be in (0,1)");
    check_arg(power_iterations >= 1, "truncated_lengths: omega must be >= 1");
    check_arg(max_truncation >= 1, "truncated_lengths: tau_max must be >= 1");
    check_data(is_connected(g), "truncated_lengths: graph must be connected");

    auto [bip, side] = bipartition(g);
    TruncationPlan plan;
    plan.lambda_hat = detail::estimate_decay(g, power_iterations, bip, side);
    const auto m = static_cast<uint32_t>(g.edge_count());
    plan.tau.resize(m);

    auto tau_for = [&](double dmax) -> uint32_t {
        if (plan.lambda_hat >= 1.0 - 1e-6) {
            // near-degenerate decay estimate: no useful geometric bound
            plan.clamped = true;
            uint32_t t = max_truncation;
            if (t > 1 && (t & 1u) == 0) t -= 1;
            return t;
        }
        if (plan.lambda_hat <= 1e-9) return 1;
        const double raw = std::ceil(std::log(4.0 * dmax / (epsilon * (1.0 - plan.lambda_hat))) /
                                     std::log(1.0 / plan.lambda_hat));
        return detail::make_odd_clamped(raw, max_truncation, plan.clamped);
    };

    if (per_edge) {
        for (uint32_t e = 0; e < m; ++e) {
            auto [u, v] = g.edge(e);
            plan.tau[e] = tau_for(static_cast<double>(std::max(g.degree(u), g.degree(v))));
        }
    } else {
        const uint32_t t = tau_for(static_cast<double>(g.max_degree()));
        std::fill(plan.tau.begin(), plan.tau.end(), t);
    }
    plan.max_tau = *std::max_element(plan.tau.begin(), plan.tau.end());
    return plan;
}

// =============================================================================
// Landing-probability propagation
// =============================================================================

// Dense per-thread state with epoch-stamped resets (no O(n) clearing between
// sources).
struct PropagationWorkspace {
    std::vector<double> val[2];
    std::vector<uint32_t> stamp[2];
    std::vector<uint32_t> support[2];
    std::vector<double> rho_val;
    std::vector<uint32_t> rho_stamp;
    uint32_t epoch = 0;

    void ensure(uint32_t n) {
        if (val[0].size() < n) {
            for (int s = 0; s < 2; ++s) {
                val[s].resize(n);
                stamp[s].assign(n, 0);
            }
            rho_val.resize(n);
            rho_stamp.assign(n, 0);
            epoch = 0;
        }
    }
    uint32_t next_epoch() {
        if (epoch >= std::numeric_limits<uint32_t>::max() - 2) {
            std::fill(stamp[0].begin(), stamp[0].end(), 0u);
            std::fill(stamp[1].begin(), stamp[1].end(), 0u);
            std::fill(rho_stamp.begin(), rho_stamp.end(), 0u);
            epoch = 0;
        }
        return ++epoch;
    }
};

// p_l(. | source), advanced one depth at a time by distributing every support
// vertex's mass equally over its neighbours.
class LandingPropagator {
public:
    LandingPropagator(const Graph& g, uint32_t source, PropagationWorkspace& ws)
        : g_(&g), ws_(&ws), source_(source) {
        check_arg(source < g.vertex_count(), "LandingPropagator: source out of range");
        ws.ensure(g.vertex_count());
        cur_ = 0;
        epoch_ = ws.next_epoch();
        ws.support[0].clear();
        ws.support[0].push_back(source);
        ws.val[0][source] = 1.0;
        ws.stamp[0][source] = epoch_;
        support_degree_ = g.degree(source);
    }

    void step() {
        const auto& sup_c = ws_->support[cur_];
        const auto& val_c = ws_->val[cur_];
        const int nx = 1 - cur_;
        const uint32_t ep = ws_->next_epoch();
        auto& sup_n = ws_->support[nx];
        auto& val_n = ws_->val[nx];
        auto& st_n = ws_->stamp[nx];
        sup_n.clear();
        uint64_t degsum = 0;
        for (uint32_t v : sup_c) {
            const double share = val_c[v] / static_cast<double>(g_->degree(v));
            for (uint32_t x : g_->neighbors(v)) {
                if (st_n[x] != ep) {
                    st_n[x] = ep;
                    val_n[x] = share;
                    sup_n.push_back(x);
                    degsum += g_->degree(x);
                } else {
                    val_n[x] += share;
                }
            }
        }
        cur_ = nx;
        epoch_ = ep;
        ++depth_;
        support_degree_ = degsum;
    }

    [[nodiscard]] uint32_t depth() const noexcept { return depth_; }
    [[nodiscard]] uint32_t source() const noexcept { return source_; }
    [[nodiscard]] uint64_t support_degree_sum() const noexcept { return support_degree_; }
    [[nodiscard]] std::span<const uint32_t> support() const noexcept {
        return ws_->support[cur_];
    }
    [[nodiscard]] double prob_of(uint32_t v) const noexcept {
        return ws_->stamp[cur_][v] == epoch_ ? ws_->val[cur_][v] : 0.0;
    }
    [[nodiscard]] double sum() const noexcept {
        double s = 0.0;
        for (uint32_t v : ws_->support[cur_]) s += ws_->val[cur_][v];
        return s;
    }

private:
    const Graph* g_;
    PropagationWorkspace* ws_;
    uint32_t source_;
    int cur_ = 0;
    uint32_t epoch_ = 0;
    uint32_t depth_ = 0;
    uint64_t support_degree_ = 0;
};

namespace detail {

// Source-level walk budget at depth l: the sum of per-incident-edge walk
// counts at the remaining truncation. This is the traversal-phase crossover
// threshold the propagation loop tests against.
inline double source_budget_sum(const Graph& g, uint32_t src, const TruncationPlan& plan,
                                double epsilon, double delta, uint32_t l) {
    const uint32_t* off = g.offsets_data();
    const uint32_t deg = g.degree(src);
    const uint64_t m = g.edge_count();
    double total = 0.0;
    for (uint32_t s = off[src]; s < off[src] + deg; ++s) {
        const int64_t tau_eff =
            static_cast<int64_t>(plan.tau[g.slot_edge(s)]) - static_cast<int64_t>(l);
        total += walks_needed_raw(tau_eff, epsilon, delta, deg, m);
    }
    return total;
}

// Walk-budget crossover loop: propagate while the support's degree sum is
// below the recomputed walk budget; call hook(l) after each new depth.
// Returns tau~.
template <class PerDepth>
inline uint32_t advance_to_switch(const Graph& g, LandingPropagator& prop,
                                  const TruncationPlan& plan, double epsilon, double delta,
                                  int64_t cap, PerDepth&& hook) {
    const uint32_t src = prop.source();
    const uint32_t* off = g.offsets_data();
    const uint32_t deg = g.degree(src);
    uint32_t tau_src = 0;
    for (uint32_t s = off[src]; s < off[src] + deg; ++s)
        tau_src = std::max(tau_src, plan.tau[g.slot_edge(s)]);

    uint32_t l = 0;
    while (l < tau_src && (cap < 0 || static_cast<int64_t>(l) < cap)) {
        if (static_cast<double>(prop.support_degree_sum()) >=
            source_budget_sum(g, src, plan, epsilon, delta, l))
            break;
        prop.step();
        ++l;
        hook(l);
    }
    return l;
}

} // namespace detail

/// Run the propagation phase for one source: returns the landing distribution
/// at the switch depth tau~ together with tau~ itself.
inline std::pair<LandingProbs, uint32_t> propagate_landing_probabilities(
    const Graph& g, uint32_t source, const TruncationPlan& plan, double epsilon, double delta,
    int64_t switch_depth_cap = -1) {
    check_data(is_connected(g), "propagate_landing_probabilities: graph must be connected");
    PropagationWorkspace ws;
    LandingPropagator prop(g, source, ws);
    const uint32_t tt = detail::advance_to_switch(g, prop, plan, epsilon, delta,
                                                  switch_depth_cap, [](uint32_t) {});
    LandingProbs lp;
    lp.source = source;
    lp.depth = tt;
    lp.support.assign(prop.support().begin(), prop.support().end());
    std::sort(lp.support.begin(), lp.support.end());
    lp.prob.resize(lp.support.size());
    for (size_t i = 0; i < lp.support.size(); ++i) lp.prob[i] = prop.prob_of(lp.support[i]);
    return {std::move(lp), tt};
}

// =============================================================================
// Walk-phase estimation
// =============================================================================

namespace detail {

struct RhoTable {
    const double* val = nullptr;
    const uint32_t* stamp = nullptr;
    uint32_t epoch = 0;
    [[nodiscard]] double value(uint32_t v) const noexcept {
        return stamp[v] == epoch ? val[v] : 0.0;
    }
};

// Walk pairs are processed in fixed-size blocks so per-edge memory stays
// bounded no matter how large the budget is; within a block, saba sorts the
// block's seeds. Per-pair scores do not depend on the blocking or ordering.
inline constexpr uint64_t kPairBlock = uint64_t(1) << 20;

// Generate walks k in [k_begin, k_end) of `len` vertices from `start` under
// the mode drive; buf[k - k_begin] accumulates the rho-score of walk k's
// steps 1..len-1. Walk k's stream index is 2k+side so the two directions use
// disjoint seeds.
inline void run_estimation_side(const Graph& g, WalkMode mode, uint32_t lanes,
                                const HashSpec& hash, uint32_t start, uint32_t len,
                                uint64_t k_begin, uint64_t k_end, uint64_t edge_seed,
                                uint32_t side, const RhoTable& rho, std::vector<uint64_t>& keys,
                                double* buf) {
    const uint64_t count = k_end - k_begin;
    switch (mode) {
        case WalkMode::Naive: {
            for (uint64_t k = 0; k < count; ++k) {
                double acc = 0.0;
                walk_stream_lcg(g, start, len,
                                counter_hash(edge_seed, 2 * (k_begin + k) + side),
                                [&](uint32_t step, uint32_t v) {
                                    if (step) acc += rho.value(v);
                                });
                buf[k] = acc;
            }
            return;
        }
        case WalkMode::VectorMod: {
            std::array<uint64_t, kMaxLanes> streams;
            for (uint64_t k0 = 0; k0 < count; k0 += lanes) {
                const uint32_t act = static_cast<uint32_t>(std::min<uint64_t>(lanes, count - k0));
                for (uint32_t b = 0; b < act; ++b)
                    streams[b] = counter_hash(edge_seed, 2 * (k_begin + k0 + b) + side);
                bouquet_lcg(g, start, len, std::span<const uint64_t>(streams.data(), act),
                            [&](uint32_t lane, uint32_t step, uint32_t v) {
                                if (step) buf[k0 + lane] += rho.value(v);
                            },
                            nullptr);
            }
            return;
        }
        case WalkMode::Hash:
        case WalkMode::Saba: {
            keys.resize(count);
            for (uint64_t k = 0; k < count; ++k)
                keys[k] = ((counter_hash(edge_seed, 2 * (k_begin + k) + side) >> 32) << 32) | k;
            if (mode == WalkMode::Saba) std::sort(keys.begin(), keys.end());
            for (uint64_t k0 = 0; k0 < count; k0 += lanes) {
                const uint32_t act = static_cast<uint32_t>(std::min<uint64_t>(lanes, count - k0));
                bouquet_hashed<SelectorKind::Scaled>(
                    g, start, len, std::span<const uint64_t>(keys.data() + k0, act), hash,
                    [&](uint32_t lane, uint32_t step, uint32_t v) {
                        if (step) buf[keys[k0 + lane] & 0xffffffffull] += rho.value(v);
                    },
                    nullptr);
            }
            return;
        }
    }
}

struct PairBuffers {
    std::vector<double> abuf, bbuf;
    std::vector<uint64_t> keys;
};

// All n_req two-way pairs for one directed edge, blocked; returns
// sum_k (a_k - b_k) / n_req accumulated in original pair order.
inline double run_two_way_pairs(const Graph& g, WalkMode mode, uint32_t lanes,
                                const HashSpec& hash, uint32_t v_i, uint32_t v_j, uint32_t len,
                                uint64_t n_req, uint64_t edge_seed, const RhoTable& rho,
                                PairBuffers& ws) {
    const double inv_n = 1.0 / static_cast<double>(n_req);
    double acc = 0.0;
    for (uint64_t k0 = 0; k0 < n_req; k0 += kPairBlock) {
        const uint64_t k1 = std::min(n_req, k0 + kPairBlock);
        ws.abuf.assign(k1 - k0, 0.0);
        ws.bbuf.assign(k1 - k0, 0.0);
        run_estimation_side(g, mode, lanes, hash, v_i, len, k0, k1, edge_seed, 0, rho, ws.keys,
                            ws.abuf.data());
        run_estimation_side(g, mode, lanes, hash, v_j, len, k0, k1, edge_seed, 1, rho, ws.keys,
                            ws.bbuf.data());
        for (uint64_t k = 0; k < k1 - k0; ++k) acc += (ws.abuf[k] - ws.bbuf[k]) * inv_n;
    }
    return acc;
}

} // namespace detail

/// Walk-phase contribution for one directed edge (v_i -> v_j): runs n_req
/// two-way pairs of tau_eff-step walks scored against the landing
/// distribution (divided by the visited vertex's degree) and returns
/// sum_k X_k / n_req. Pure function of (landing, seeds, mode).
inline double estimate_edge(const Graph& g, uint32_t v_i, uint32_t v_j,
                            const LandingProbs& landing, uint32_t tau_eff, uint64_t n_req,
                            WalkMode mode, uint64_t edge_seed, uint32_t lanes = 8,
                            const HashSpec& hash = {}) {
    check_arg(tau_eff >= 1, "estimate_edge: tau_eff must be >= 1");
    check_arg(n_req >= 1, "estimate_edge: n_req must be >= 1");
    const uint32_t n = g.vertex_count();

    // dense stamped rho = p / degree
    std::vector<double> rho_val(n, 0.0);
    std::vector<uint32_t> rho_stamp(n, 0);
    for (size_t i = 0; i < landing.support.size(); ++i) {
        const uint32_t v = landing.support[i];
        rho_val[v] = landing.prob[i] / static_cast<double>(g.degree(v));
        rho_stamp[v] = 1;
    }
    const detail::RhoTable rho{rho_val.data(), rho_stamp.data(), 1};
    detail::PairBuffers ws;
    return detail::run_two_way_pairs(g, mode, lanes, hash, v_i, v_j, tau_eff + 1, n_req,
                                     edge_seed, rho, ws);
}

// =============================================================================
// Full pipeline
// =============================================================================

namespace detail {

struct AescWorkspace {
    PropagationWorkspace prop;
    PairBuffers pairs;
};

inline void aesc_source(const Graph& g, const AescConfig& cfg, const TruncationPlan& plan,
                        const std::vector<double>& inv_deg, double bip_init, uint32_t source,
                        AescWorkspace& ws, double* g_hat, uint32_t* tau_tilde,
                        uint64_t& pair_count, uint64_t& step_count) {
    const uint32_t* off = g.offsets_data();
    const uint32_t* adj = g.adjacency_data();
    const uint32_t lo = off[source], hi = off[source + 1];
    const uint32_t deg_i = hi - lo;
    const uint64_t m = g.edge_count();

    // depth-0 term (1/d_i) plus the bipartite limit weight
    for (uint32_t s = lo; s < hi; ++s) g_hat[s] = inv_deg[source] + bip_init;

    LandingPropagator prop(g, source, ws.prop);
    const uint32_t tt = advance_to_switch(
        g, prop, plan, cfg.epsilon, cfg.delta, cfg.switch_depth_cap, [&](uint32_t l) {
            const double pi = prop.prob_of(source) * inv_deg[source];
            for (uint32_t s = lo; s < hi; ++s) {
                if (l > plan.tau[g.slot_edge(s)]) continue;
                const uint32_t j = adj[s];
                g_hat[s] += pi - prop.prob_of(j) * inv_deg[j];
            }
        });
    tau_tilde[source] = tt;

    // walk phase over edges whose truncation exceeds the switch depth
    bool any = false;
    for (uint32_t s = lo; s < hi && !any; ++s) any = plan.tau[g.slot_edge(s)] > tt;
    if (!any) return;

    // rho = p_tau~ / degree, stamped for O(1) score lookups
    const uint32_t ep = ws.prop.next_epoch();
    for (uint32_t v : prop.support()) {
        ws.prop.rho_val[v] = prop.prob_of(v) * inv_deg[v];
        ws.prop.rho_stamp[v] = ep;
    }
    const RhoTable rho{ws.prop.rho_val.data(), ws.prop.rho_stamp.data(), ep};
    const uint64_t src_seed = substream(substream(cfg.master_seed, 0x41455343ull), source);

    WalkBudget budget;
    budget.n_walks = static_cast<uint64_t>(
        source_budget_sum(g, source, plan, cfg.epsilon, cfg.delta, tt));
    for (uint32_t s = lo; s < hi; ++s) {
        const int64_t tau_eff =
            static_cast<int64_t>(plan.tau[g.slot_edge(s)]) - static_cast<int64_t>(tt);
        if (tau_eff <= 0) continue;
        const uint32_t j = adj[s];
        budget.n_req =
            walk_budget(static_cast<uint32_t>(tau_eff), cfg.epsilon, cfg.delta, deg_i, m);
        const uint64_t n_req = budget.n_req;
        // an uncapped crossover always yields n_req below the support degree
        // sum; only a forced switch depth can demand unreasonable budgets
        check_arg(cfg.switch_depth_cap < 0 ||
                      n_req * static_cast<uint64_t>(tau_eff) <= (uint64_t(1) << 26),
                  "aesc: walk budget infeasible (switch_depth_cap too aggressive for epsilon)");

        const uint64_t edge_seed = substream(src_seed, s);
        const auto len = static_cast<uint32_t>(tau_eff + 1);
        g_hat[s] += run_two_way_pairs(g, cfg.mode, cfg.lanes, cfg.hash, source, j, len, n_req,
                                      edge_seed, rho, ws.pairs);
        pair_count += n_req;
        step_count += 2 * n_req * static_cast<uint64_t>(tau_eff);
    }
}

} // namespace detail

/// Approximate spanning centrality of every edge with the |s - SC| <= epsilon
/// contract (probability >= 1 - delta). Deterministic for fixed (config,
/// master_seed) regardless of thread count.
inline CentralityEstimate aesc(const Graph& g, const AescConfig& cfg) {
    check_arg(cfg.epsilon > 0.0 && cfg.epsilon < 1.0, "aesc: epsilon must be in (0,1)");
    check_arg(cfg.delta > 0.0 && cfg.delta < 1.0, "aesc: delta must be in (0,1)");
    check_arg(cfg.power_iterations >= 1, "aesc: omega must be >= 1");
    check_arg(cfg.lanes >= 1 && cfg.lanes <= kMaxLanes && std::has_single_bit(cfg.lanes),
              "aesc: lanes must be a power of two in [1, 64]");
    check_data(is_connected(g), "aesc: spanning centrality requires a connected graph");

    const uint32_t n = g.vertex_count();
    const auto m = static_cast<uint32_t>(g.edge_count());

    CentralityEstimate est;
    est.config = cfg;
    est.plan = truncated_lengths(g, cfg.epsilon / 2.0, cfg.power_iterations, cfg.max_truncation,
                                 cfg.per_edge_tau);
    est.plan.tau_tilde.assign(n, 0);
    est.bipartite = bipartition(g).first;
    est.g_hat.assign(2 * static_cast<size_t>(m), 0.0);

    std::vector<double> inv_deg(n);
    for (uint32_t v = 0; v < n; ++v) inv_deg[v] = 1.0 / static_cast<double>(g.degree(v));
    const double bip_init = est.bipartite ? 1.0 / (2.0 * static_cast<double>(m)) : 0.0;

    const int threads = resolve_threads(cfg.threads);
    std::vector<uint64_t> pairs_by_thread(threads, 0), steps_by_thread(threads, 0);

    // exceptions must not escape the parallel region; rethrown after it
    std::exception_ptr failure;

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
        detail::AescWorkspace ws;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
        for (int64_t vi = 0; vi < static_cast<int64_t>(n); ++vi) {
            if (failure) continue;
            try {
                detail::aesc_source(g, cfg, est.plan, inv_deg, bip_init,
                                    static_cast<uint32_t>(vi), ws, est.g_hat.data(),
                                    est.plan.tau_tilde.data(), pairs_by_thread[rank],
                                    steps_by_thread[rank]);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(saba_aesc_failure)
#endif
                if (!failure) failure = std::current_exception();
            }
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (failure) std::rethrow_exception(failure);
    est.seconds = std::chrono::duration<double>(t1 - t0).count();
    for (int t = 0; t < threads; ++t) {
        est.total_walk_pairs += pairs_by_thread[t];
        est.total_walk_steps += steps_by_thread[t];
    }

    est.s_hat.resize(m);
    for (uint32_t e = 0; e < m; ++e) {
        auto [u, v] = g.edge(e);
        est.s_hat[e] = est.g_hat[g.slot_of(u, v)] + est.g_hat[g.slot_of(v, u)];
    }
    return est;
}

/// TSV writer shared by the `aesc` and `exact` outputs: one line per edge,
/// `u<TAB>v<TAB>value`, original input ids with u < v, ascending (u, v),
/// 6 significant digits.
inline void write_centrality_tsv(std::ostream& out, const Graph& g,
                                 std::span<const double> values) {
    check_arg(values.size() == g.edge_count(), "write_centrality_tsv: value count != edge count");
    struct Row {
        uint64_t u, v;
        double val;
    };
    std::vector<Row> rows(values.size());
    for (uint32_t e = 0; e < values.size(); ++e) {
        auto [a, b] = g.edge(e);
        uint64_t u = g.original_id(a), v = g.original_id(b);
        if (u > v) std::swap(u, v);
        rows[e] = {u, v, values[e]};
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& x, const Row& y) { return x.u < y.u || (x.u == y.u && x.v < y.v); });
    char buf[64];
    for (const Row& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.6g", r.val);
        out << r.u << '\t' << r.v << '\t' << buf << '\n';
    }
}

} // namespace saba
