#pragma once

// Shared fixtures and oracles for the test suites. Everything random goes
// through the library's counter RNG so any failure reproduces exactly from
// the printed seed. No Catch dependency; the acceptance runner uses these too.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <hodgerank/hodgerank.hpp>

namespace testutil {

using namespace hodgerank;

namespace streams {
inline constexpr std::uint64_t structure = 101; // spanning tree + extra edges
inline constexpr std::uint64_t weight = 102;
inline constexpr std::uint64_t flowval = 103;
inline constexpr std::uint64_t potential = 104;
} // namespace streams

inline IdIndex vertex_ids(int n) {
    IdIndex ids;
    for (int i = 0; i < n; ++i) ids.intern("v" + std::to_string(i));
    return ids;
}

/// Random potential with entries in [-5, 5).
inline std::vector<double> random_potential(int n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        s[static_cast<size_t>(i)] = -5.0 + 10.0 * rng.uniform(streams::potential, static_cast<std::uint64_t>(i));
    return s;
}

struct RandomGraphSpec {
    int n = 6;
    std::uint64_t seed = 1;
    int extra_edges = 4;      // beyond the spanning tree
    bool integer_values = false; // weights in {1,2,3}, flows in {-3..3}
};

// Connected weighted graph: random spanning tree plus extra random edges,
// random flow values. Weights are positive.
inline ComparisonGraph random_connected_graph(const RandomGraphSpec& spec) {
    const int n = spec.n;
    CounterRng rng(spec.seed);
    EdgeFlow flow(n);
    WeightMatrix weights(n);

    auto weight_at = [&](std::uint64_t c) {
        if (spec.integer_values)
            return 1.0 + static_cast<double>(rng.below(streams::weight, c, 3));
        return 0.5 + 1.5 * rng.uniform(streams::weight, c);
    };
    auto flow_at = [&](std::uint64_t c) {
        if (spec.integer_values)
            return static_cast<double>(rng.below(streams::flowval, c, 7)) - 3.0;
        return -2.0 + 4.0 * rng.uniform(streams::flowval, c);
    };

    std::uint64_t c = 0;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.below(streams::structure, c, static_cast<std::uint64_t>(v)));
        weights.set(u, v, weight_at(c));
        flow.set(u, v, flow_at(c));
        ++c;
    }
    for (int e = 0; e < spec.extra_edges; ++e) {
        int u = static_cast<int>(rng.below(streams::structure, 2 * c, static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.below(streams::structure, 2 * c + 1, static_cast<std::uint64_t>(n)));
        ++c;
        if (u == v || weights.value(u, v) > 0.0) continue;
        weights.set(u, v, weight_at(c + (1ull << 40)));
        flow.set(u, v, flow_at(c + (1ull << 40)));
    }
    return ComparisonGraph(vertex_ids(n), flow, weights);
}

/// Same structure, but the flow is exactly the gradient of a random
/// potential. Returns the graph and the zero-mean potential.
inline std::pair<ComparisonGraph, std::vector<double>> gradient_graph(const RandomGraphSpec& spec) {
    ComparisonGraph base = random_connected_graph(spec);
    std::vector<double> s = random_potential(spec.n, spec.seed ^ 0xabcdef);

    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(spec.n);
    for (double& v : s) v -= mean;

    EdgeFlow flow(spec.n);
    WeightMatrix weights(spec.n);
    for (const auto& e : base.edges()) {
        weights.set(e.u, e.v, e.w);
        flow.set(e.u, e.v, s[static_cast<size_t>(e.v)] - s[static_cast<size_t>(e.u)]);
    }
    return {ComparisonGraph(base.students(), flow, weights), s};
}

/// Graph on n vertices from a bitmask over the C(n,2) possible edges in
/// ascending (i, j) order, with seeded small integer weights and flows.
inline ComparisonGraph graph_from_edge_mask(int n, std::uint32_t mask, std::uint64_t seed) {
    CounterRng rng(seed);
    EdgeFlow flow(n);
    WeightMatrix weights(n);
    int bit = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
            if (!(mask & (1u << bit))) continue;
            std::uint64_t c = static_cast<std::uint64_t>(bit);
            weights.set(i, j, 1.0 + static_cast<double>(rng.below(streams::weight, c, 3)));
            flow.set(i, j, static_cast<double>(rng.below(streams::flowval, c, 7)) - 3.0);
        }
    }
    return ComparisonGraph(vertex_ids(n), flow, weights);
}

inline bool mask_connected(int n, std::uint32_t mask) {
    UnionFind uf(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask & (1u << bit)) uf.unite(i, j);
    return uf.components() == 1;
}

/// Independent component-count oracle (breadth-first search).
inline int bfs_component_count(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const auto& [u, v] : edges) {
        adj[static_cast<size_t>(u)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(u);
    }
    std::vector<bool> seen(static_cast<size_t>(n), false);
    int count = 0;
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        ++count;
        queue.assign(1, s);
        seen[static_cast<size_t>(s)] = true;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int w : adj[static_cast<size_t>(v)]) {
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Hand fixtures
// ---------------------------------------------------------------------------

// Three students, cyclic preferences with unit weights: the textbook
// inconsistent comparison set. Flow on (s1,s2) = +1, (s1,s3) = -1,
// (s2,s3) = -1; least-squares scores (0, 2/3, -2/3), inconsistent share 1/9.
inline ComparisonGraph cycle3_graph() {
    IdIndex ids;
    ids.intern("s1");
    ids.intern("s2");
    ids.intern("s3");
    EdgeFlow flow(3);
    WeightMatrix weights(3);
    flow.set(0, 1, 1.0);
    flow.set(0, 2, -1.0);
    flow.set(1, 2, -1.0);
    weights.set(0, 1, 1.0);
    weights.set(0, 2, 1.0);
    weights.set(1, 2, 1.0);
    return ComparisonGraph(ids, flow, weights);
}

/// Grade records that aggregate to exactly cycle3_graph's flow.
inline std::vector<GradeRecord> cycle3_records() {
    return {
        {"a1", "s3", "s1", 50}, {"a1", "s3", "s2", 51},
        {"a1", "s2", "s1", 50}, {"a1", "s2", "s3", 49},
        {"a1", "s1", "s2", 50}, {"a1", "s1", "s3", 49},
    };
}

// Four vertices, one unit of flow around the 4-cycle, no chords: zero
// divergence, no triangles, so the flow is entirely harmonic.
inline ComparisonGraph cycle4_graph() {
    IdIndex ids = vertex_ids(4);
    EdgeFlow flow(4);
    WeightMatrix weights(4);
    flow.set(0, 1, 1.0);
    flow.set(1, 2, 1.0);
    flow.set(2, 3, 1.0);
    flow.set(0, 3, -1.0); // closes the cycle: 3 -> 0 carries +1
    weights.set(0, 1, 1.0);
    weights.set(1, 2, 1.0);
    weights.set(2, 3, 1.0);
    weights.set(0, 3, 1.0);
    return ComparisonGraph(ids, flow, weights);
}

/// Grade records that aggregate to exactly cycle4_graph's flow.
inline std::vector<GradeRecord> cycle4_records() {
    return {
        {"a1", "v2", "v0", 50}, {"a1", "v2", "v1", 51}, // (v0,v1) = +1
        {"a1", "v3", "v1", 50}, {"a1", "v3", "v2", 51}, // (v1,v2) = +1
        {"a1", "v0", "v2", 50}, {"a1", "v0", "v3", 51}, // (v2,v3) = +1
        {"a1", "v1", "v3", 50}, {"a1", "v1", "v0", 51}, // (v3,v0) = +1
    };
}

// ---------------------------------------------------------------------------
// Invariant checks
// ---------------------------------------------------------------------------

struct InvariantReport {
    bool ok = true;
    std::string detail;

    void fail(const std::string& msg) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
};

// Normal equation, per-component zero mean, and residual-gradient
// orthogonality, at the tolerances the solver promises.
inline InvariantReport check_solve_invariants(const ComparisonGraph& graph,
                                              const RankingResult& r) {
    InvariantReport rep;
    const int n = graph.size();

    std::vector<double> div = divergence(graph);
    std::vector<double> ls(static_cast<size_t>(n), 0.0);
    for (const auto& e : graph.edges()) {
        double d = r.scores[static_cast<size_t>(e.u)] - r.scores[static_cast<size_t>(e.v)];
        ls[static_cast<size_t>(e.u)] += e.w * d;
        ls[static_cast<size_t>(e.v)] -= e.w * d;
    }
    double lhs_inf = 0.0, div_inf = 0.0;
    for (int i = 0; i < n; ++i) {
        lhs_inf = std::max(lhs_inf, std::abs(ls[static_cast<size_t>(i)] + div[static_cast<size_t>(i)]));
        div_inf = std::max(div_inf, std::abs(div[static_cast<size_t>(i)]));
    }
    if (lhs_inf > 1e-8 * std::max(1.0, div_inf))
        rep.fail("normal equation residual " + fmt_double(lhs_inf));

    std::vector<double> comp_sum(static_cast<size_t>(r.component_count), 0.0);
    std::vector<int> comp_size(static_cast<size_t>(r.component_count), 0);
    for (int i = 0; i < n; ++i) {
        comp_sum[static_cast<size_t>(r.component_id[static_cast<size_t>(i)])] +=
            r.scores[static_cast<size_t>(i)];
        ++comp_size[static_cast<size_t>(r.component_id[static_cast<size_t>(i)])];
    }
    for (int c = 0; c < r.component_count; ++c) {
        double mean = comp_sum[static_cast<size_t>(c)] / comp_size[static_cast<size_t>(c)];
        if (std::abs(mean) > 1e-10)
            rep.fail("component " + std::to_string(c) + " mean " + fmt_double(mean));
    }

    EdgeFlow grad = gradient_flow(graph, r.scores);
    double dot = 0.0, ynorm = 0.0;
    for (const auto& e : graph.edges()) {
        double g = grad.value(e.u, e.v);
        dot += e.w * g * (e.y - g);
        ynorm += e.w * e.y * e.y;
    }
    if (std::abs(dot) > 1e-8 * std::max(1.0, ynorm))
        rep.fail("<grad, residual>_w = " + fmt_double(dot));
    return rep;
}

// Reconstruction, pairwise orthogonality, divergence-free and
// triangle-curl-free harmonic part.
inline InvariantReport check_decomposition_invariants(const ComparisonGraph& graph,
                                                      const HodgeDecomposition& d) {
    InvariantReport rep;
    const auto& w = graph.weights();

    double err_sq = 0.0;
    for (const auto& e : graph.edges()) {
        double sum = d.gradient_flow.value(e.u, e.v) + d.curl_flow.value(e.u, e.v) +
                     d.harmonic_flow.value(e.u, e.v);
        double diff = e.y - sum;
        err_sq += e.w * diff * diff;
    }
    if (std::sqrt(err_sq) > 1e-8 * std::sqrt(std::max(d.flow_norm_sq, 1e-30)))
        rep.fail("reconstruction error " + fmt_double(std::sqrt(err_sq)));

    double scale = std::max(1.0, d.flow_norm_sq);
    double gc = weighted_inner_product(d.gradient_flow, d.curl_flow, w);
    double gh = weighted_inner_product(d.gradient_flow, d.harmonic_flow, w);
    double ch = weighted_inner_product(d.curl_flow, d.harmonic_flow, w);
    if (std::abs(gc) > 1e-8 * scale) rep.fail("<grad, curl>_w = " + fmt_double(gc));
    if (std::abs(gh) > 1e-8 * scale) rep.fail("<grad, harmonic>_w = " + fmt_double(gh));
    if (std::abs(ch) > 1e-8 * scale) rep.fail("<curl, harmonic>_w = " + fmt_double(ch));

    std::vector<double> hdiv(static_cast<size_t>(graph.size()), 0.0);
    for (const auto& e : graph.edges()) {
        double h = d.harmonic_flow.value(e.u, e.v);
        hdiv[static_cast<size_t>(e.u)] += e.w * h;
        hdiv[static_cast<size_t>(e.v)] -= e.w * h;
    }
    for (double v : hdiv)
        if (std::abs(v) > 1e-8 * std::sqrt(scale)) {
            rep.fail("harmonic divergence " + fmt_double(v));
            break;
        }

    for (const auto& t : triangle_curl(d.harmonic_flow, graph))
        if (std::abs(t.curl) > 1e-8 * std::sqrt(scale)) {
            rep.fail("harmonic triangle curl " + fmt_double(t.curl));
            break;
        }
    return rep;
}

} // namespace testutil
