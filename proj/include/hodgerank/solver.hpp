#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hodgerank/core.hpp"
#include "hodgerank/dense.hpp"
#include "hodgerank/graph.hpp"

namespace hodgerank {

// ---------------------------------------------------------------------------
// Weighted edge-space inner product
// ---------------------------------------------------------------------------

// <X, Z>_w = sum over unordered edges of w_ij * X_ij * Z_ij. Each edge is
// counted once; the symmetric double-count would rescale every norm by 2
// without changing any ratio or minimizer.
inline double weighted_inner_product(const EdgeFlow& x, const EdgeFlow& z,
                                     const WeightMatrix& w) {
    if (x.dimension() != w.dimension() || z.dimension() != w.dimension())
        throw ValidationError("inner product requires a shared vertex universe");
    double acc = 0.0;
    for (const auto& [pair, wij] : w.sorted_entries()) {
        if (wij <= 0.0) continue;
        acc += wij * x.value(pair.first, pair.second) * z.value(pair.first, pair.second);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Graph operators
// ---------------------------------------------------------------------------

/// Graph Laplacian as a dense row-major n*n matrix: weighted degree on the
/// diagonal, -w_ij off it. Row sums are zero; kernel dim = component count.
inline std::vector<double> laplacian_dense(const ComparisonGraph& graph) {
    const int n = graph.size();
    std::vector<double> lap(static_cast<size_t>(n) * n, 0.0);
    for (const auto& e : graph.edges()) {
        lap[static_cast<size_t>(e.u) * n + e.u] += e.w;
        lap[static_cast<size_t>(e.v) * n + e.v] += e.w;
        lap[static_cast<size_t>(e.u) * n + e.v] -= e.w;
        lap[static_cast<size_t>(e.v) * n + e.u] -= e.w;
    }
    return lap;
}

/// div(Y)(i) = sum over j with (i,j) in E of w_ij * Y_ij. Sums to zero over
/// each connected component by skew-symmetry.
inline std::vector<double> divergence(const ComparisonGraph& graph) {
    std::vector<double> div(static_cast<size_t>(graph.size()), 0.0);
    for (const auto& e : graph.edges()) {
        div[static_cast<size_t>(e.u)] += e.w * e.y;
        div[static_cast<size_t>(e.v)] -= e.w * e.y;
    }
    return div;
}

// ---------------------------------------------------------------------------
// HodgeRank solve
// ---------------------------------------------------------------------------

struct SolveOptions {
    double rel_tol = 1e-10;   // relative 2-norm stop for conjugate gradient
    int max_iter_factor = 10; // per component: factor * component size
};

namespace detail {

// Conjugate gradient on the Laplacian restricted to one component, with the
// zero-mean gauge enforced by projecting the residual each iteration. The
// right-hand side lies in the range of the restricted Laplacian, so the
// iteration stays on the constraint subspace.
inline void solve_component_cg(const std::vector<Edge>& edges,
                               const std::vector<int>& vertices,
                               const std::vector<int>& local, // global -> local
                               const std::vector<double>& b_local,
                               std::vector<double>& x_local,
                               const SolveOptions& opts) {
    const int m = static_cast<int>(vertices.size());
    auto project_zero_mean = [&](std::vector<double>& v) {
        double mean = 0.0;
        for (double t : v) mean += t;
        mean /= m;
        for (double& t : v) t -= mean;
    };
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (const auto& e : edges) {
            double d = in[static_cast<size_t>(local[static_cast<size_t>(e.u)])] -
                       in[static_cast<size_t>(local[static_cast<size_t>(e.v)])];
            out[static_cast<size_t>(local[static_cast<size_t>(e.u)])] += e.w * d;
            out[static_cast<size_t>(local[static_cast<size_t>(e.v)])] -= e.w * d;
        }
    };
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    x_local.assign(static_cast<size_t>(m), 0.0);
    std::vector<double> r = b_local;
    project_zero_mean(r);
    double bnorm = std::sqrt(dot(r, r));
    if (bnorm == 0.0) return;

    std::vector<double> p = r;
    std::vector<double> ap(static_cast<size_t>(m), 0.0);
    double rr = dot(r, r);
    const int max_iters = std::max(opts.max_iter_factor * m, 20);
    for (int it = 0; it < max_iters; ++it) {
        apply(p, ap);
        double pap = dot(p, ap);
        if (pap <= 0.0) break; // numerically exhausted search direction
        double alpha = rr / pap;
        for (int i = 0; i < m; ++i) {
            x_local[static_cast<size_t>(i)] += alpha * p[static_cast<size_t>(i)];
            r[static_cast<size_t>(i)] -= alpha * ap[static_cast<size_t>(i)];
        }
        project_zero_mean(r);
        double rr_new = dot(r, r);
        if (std::sqrt(rr_new) <= opts.rel_tol * bnorm) return;
        double beta = rr_new / rr;
        rr = rr_new;
        for (int i = 0; i < m; ++i)
            p[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] + beta * p[static_cast<size_t>(i)];
    }
    double achieved = std::sqrt(rr) / bnorm;
    if (achieved > opts.rel_tol * 1e3) // allow mild stagnation above target
        throw SolverError("conjugate gradient did not converge (relative residual " +
                              fmt_double(achieved) + ")",
                          achieved);
}

} // namespace detail

/// Gradient flow of a potential restricted to the graph's edges:
/// (grad s)(i, j) = s_j - s_i.
inline EdgeFlow gradient_flow(const ComparisonGraph& graph, const std::vector<double>& s) {
    EdgeFlow g(graph.size());
    for (const auto& e : graph.edges())
        g.set(e.u, e.v, s[static_cast<size_t>(e.v)] - s[static_cast<size_t>(e.u)]);
    return g;
}

// Minimum-norm least-squares ranking: solves the normal equation
// L s = -div(Y) per connected component, fixing the gauge by zero component
// mean (the minimum-norm representative). Disconnected graphs are solved per
// component and flagged: scores are not comparable across components.
inline RankingResult solve_hodgerank(const ComparisonGraph& graph,
                                     const SolveOptions& opts = {}) {
    const int n = graph.size();
    RankingResult out;
    out.method = Method::hodgerank;
    out.students = graph.students().ids();
    out.scores.assign(static_cast<size_t>(n), 0.0);
    out.missing.assign(static_cast<size_t>(n), false);

    auto labeling = connected_components(graph);
    out.component_id = labeling.label;
    out.component_count = labeling.count;
    if (labeling.count > 1)
        out.warnings.push_back("graph is disconnected (" + std::to_string(labeling.count) +
                               " components); scores are comparable only within a component");

    if (n == 0) return out;

    std::vector<double> div = divergence(graph);

    // Group vertices and edges by component.
    std::vector<std::vector<int>> comp_vertices(static_cast<size_t>(labeling.count));
    for (int v = 0; v < n; ++v)
        comp_vertices[static_cast<size_t>(labeling.label[static_cast<size_t>(v)])].push_back(v);
    std::vector<std::vector<Edge>> comp_edges(static_cast<size_t>(labeling.count));
    for (const auto& e : graph.edges())
        comp_edges[static_cast<size_t>(labeling.label[static_cast<size_t>(e.u)])].push_back(e);

    std::vector<int> local(static_cast<size_t>(n), -1);
    for (int c = 0; c < labeling.count; ++c) {
        const auto& vs = comp_vertices[static_cast<size_t>(c)];
        if (vs.size() == 1) continue; // isolated vertex keeps score 0
        for (size_t i = 0; i < vs.size(); ++i) local[static_cast<size_t>(vs[i])] = static_cast<int>(i);

        std::vector<double> b(vs.size());
        for (size_t i = 0; i < vs.size(); ++i) b[i] = -div[static_cast<size_t>(vs[i])];

        std::vector<double> x;
        detail::solve_component_cg(comp_edges[static_cast<size_t>(c)], vs, local, b, x, opts);

        // Gauge cleanup: exact zero mean per component.
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(vs.size());
        for (size_t i = 0; i < vs.size(); ++i)
            out.scores[static_cast<size_t>(vs[i])] = x[i] - mean;
    }

    // Postcondition: the normal equation holds to working accuracy.
    double lhs_inf = 0.0, div_inf = 0.0;
    {
        std::vector<double> ls(static_cast<size_t>(n), 0.0);
        for (const auto& e : graph.edges()) {
            double d = out.scores[static_cast<size_t>(e.u)] - out.scores[static_cast<size_t>(e.v)];
            ls[static_cast<size_t>(e.u)] += e.w * d;
            ls[static_cast<size_t>(e.v)] -= e.w * d;
        }
        for (int i = 0; i < n; ++i) {
            lhs_inf = std::max(lhs_inf, std::abs(ls[static_cast<size_t>(i)] + div[static_cast<size_t>(i)]));
            div_inf = std::max(div_inf, std::abs(div[static_cast<size_t>(i)]));
        }
    }
    if (lhs_inf > 1e-8 * std::max(1.0, div_inf))
        throw SolverError("normal equation residual above tolerance", lhs_inf);

    EdgeFlow grad = gradient_flow(graph, out.scores);
    double res = 0.0, flow = 0.0;
    for (const auto& e : graph.edges()) {
        double r = e.y - grad.value(e.u, e.v);
        res += e.w * r * r;
        flow += e.w * e.y * e.y;
    }
    out.residual_norm_sq = res;
    out.flow_norm_sq = flow;
    return out;
}

/// Dense pseudoinverse route: s = -pinv(L) div(Y). Intended for small
/// problems (n up to a few hundred); kept as an independent cross-check of
/// the iterative solver.
inline RankingResult solve_hodgerank_dense(const ComparisonGraph& graph) {
    const int n = graph.size();
    RankingResult out;
    out.method = Method::hodgerank;
    out.students = graph.students().ids();
    out.scores.assign(static_cast<size_t>(n), 0.0);
    out.missing.assign(static_cast<size_t>(n), false);

    auto labeling = connected_components(graph);
    out.component_id = labeling.label;
    out.component_count = labeling.count;
    if (labeling.count > 1)
        out.warnings.push_back("graph is disconnected (" + std::to_string(labeling.count) +
                               " components); scores are comparable only within a component");
    if (n == 0) return out;

    std::vector<double> div = divergence(graph);
    std::vector<double> rhs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rhs[static_cast<size_t>(i)] = -div[static_cast<size_t>(i)];
    // The minimum-norm solution is orthogonal to the kernel (per-component
    // constants), so the zero-mean gauge comes out of the pseudoinverse.
    out.scores = pinv_solve(laplacian_dense(graph), n, rhs);

    EdgeFlow grad = gradient_flow(graph, out.scores);
    double res = 0.0, flow = 0.0;
    for (const auto& e : graph.edges()) {
        double r = e.y - grad.value(e.u, e.v);
        res += e.w * r * r;
        flow += e.w * e.y * e.y;
    }
    out.residual_norm_sq = res;
    out.flow_norm_sq = flow;
    return out;
}

// ---------------------------------------------------------------------------
// Triangles and curl
// ---------------------------------------------------------------------------

namespace detail {

struct Triangle {
    int i, j, k;             // i < j < k
    int e_ij, e_jk, e_ik;    // indices into graph.edges()
};

// Every 3-clique of the edge set, in ascending (i, j, k) order. Bitset
// adjacency keeps this near O(n^2 * n/64) even on dense graphs.
inline std::vector<Triangle> enumerate_triangles(const ComparisonGraph& graph) {
    const int n = graph.size();
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> adj(static_cast<size_t>(n) * words, 0);
    std::unordered_map<std::uint64_t, int> edge_index;
    const auto& edges = graph.edges();
    for (size_t idx = 0; idx < edges.size(); ++idx) {
        const auto& e = edges[idx];
        adj[static_cast<size_t>(e.u) * words + e.v / 64] |= 1ull << (e.v % 64);
        adj[static_cast<size_t>(e.v) * words + e.u / 64] |= 1ull << (e.u % 64);
        edge_index[pair_key(e.u, e.v)] = static_cast<int>(idx);
    }

    std::vector<Triangle> tris;
    for (size_t idx = 0; idx < edges.size(); ++idx) {
        const int u = edges[idx].u, v = edges[idx].v;
        const std::uint64_t* row_u = &adj[static_cast<size_t>(u) * words];
        const std::uint64_t* row_v = &adj[static_cast<size_t>(v) * words];
        for (int w = v / 64; w < words; ++w) {
            std::uint64_t bits = row_u[w] & row_v[w];
            if (w == v / 64) bits &= ~((2ull << (v % 64)) - 1); // keep k > v
            while (bits) {
                int k = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                tris.push_back({u, v, k, static_cast<int>(idx),
                                edge_index.at(pair_key(v, k)),
                                edge_index.at(pair_key(u, k))});
            }
        }
    }
    return tris;
}

} // namespace detail

/// Curl of a flow around each 3-clique of the graph, oriented by ascending
/// vertex index: curl = X_ij + X_jk + X_ki. Zero on every triangle iff the
/// flow is consistent there.
inline std::vector<TriangleCurl> triangle_curl(const EdgeFlow& flow,
                                               const ComparisonGraph& graph) {
    if (flow.dimension() != graph.size())
        throw ValidationError("flow dimension does not match graph");
    std::vector<TriangleCurl> out;
    for (const auto& t : detail::enumerate_triangles(graph)) {
        double c = flow.value(t.i, t.j) + flow.value(t.j, t.k) + flow.value(t.k, t.i);
        out.push_back({t.i, t.j, t.k, c});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hodge decomposition of the residual
// ---------------------------------------------------------------------------

// Ybar = gradient + curl + harmonic, pairwise orthogonal under <.,.>_w.
// The curl part is the projection of the least-squares residual onto the
// image of the (weighted) adjoint of the triangle curl operator; what is
// left is harmonic: divergence-free and curl-free on every triangle.
struct HodgeDecomposition {
    EdgeFlow gradient_flow;
    EdgeFlow curl_flow;
    EdgeFlow harmonic_flow;
    double gradient_norm_sq = 0.0;
    double curl_norm_sq = 0.0;
    double harmonic_norm_sq = 0.0;
    double flow_norm_sq = 0.0;
    size_t triangle_count = 0;
};

inline HodgeDecomposition decompose_residual(const ComparisonGraph& graph,
                                             const RankingResult& ranking,
                                             const SolveOptions& opts = {}) {
    const int n = graph.size();
    if (ranking.method != Method::hodgerank || ranking.size() != n)
        throw ValidationError("decompose_residual needs a hodgerank result for this graph");

    const auto& edges = graph.edges();
    const size_t ne = edges.size();

    std::vector<double> grad(ne), resid(ne);
    for (size_t i = 0; i < ne; ++i) {
        grad[i] = ranking.scores[static_cast<size_t>(edges[i].v)] -
                  ranking.scores[static_cast<size_t>(edges[i].u)];
        resid[i] = edges[i].y - grad[i];
    }

    auto tris = detail::enumerate_triangles(graph);
    const size_t nt = tris.size();

    // Least squares over triangle potentials: minimize ||R - curl_adj(phi)||_w
    // where curl_adj(phi)_e = (1/w_e) * sum of +-phi_t over triangles at e.
    // Normal equations (curl o curl_adj) phi = curl(R), solved by conjugate
    // gradient from zero (minimum-norm in the triangle variables).
    std::vector<double> curl_part(ne, 0.0);
    if (nt > 0) {
        auto curl_of = [&](const std::vector<double>& edge_vals, std::vector<double>& out) {
            for (size_t t = 0; t < nt; ++t)
                out[t] = edge_vals[static_cast<size_t>(tris[t].e_ij)] +
                         edge_vals[static_cast<size_t>(tris[t].e_jk)] -
                         edge_vals[static_cast<size_t>(tris[t].e_ik)];
        };
        auto adj_of = [&](const std::vector<double>& phi, std::vector<double>& out) {
            std::fill(out.begin(), out.end(), 0.0);
            for (size_t t = 0; t < nt; ++t) {
                out[static_cast<size_t>(tris[t].e_ij)] += phi[t];
                out[static_cast<size_t>(tris[t].e_jk)] += phi[t];
                out[static_cast<size_t>(tris[t].e_ik)] -= phi[t];
            }
            for (size_t e = 0; e < ne; ++e) out[e] /= edges[e].w;
        };

        std::vector<double> b(nt);
        curl_of(resid, b);

        std::vector<double> phi(nt, 0.0), r = b, p = b;
        std::vector<double> edge_tmp(ne), ap(nt);
        auto dot = [](const std::vector<double>& a, const std::vector<double>& c) {
            double s = 0.0;
            for (size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
            return s;
        };
        double rr = dot(r, r);
        double bnorm = std::sqrt(rr);
        if (bnorm > 0.0) {
            const size_t max_iters = std::min(nt, ne) + 100;
            bool done = false;
            for (size_t it = 0; it < max_iters && !done; ++it) {
                adj_of(p, edge_tmp);
                curl_of(edge_tmp, ap);
                double pap = dot(p, ap);
                if (pap <= 0.0) break;
                double alpha = rr / pap;
                for (size_t t = 0; t < nt; ++t) {
                    phi[t] += alpha * p[t];
                    r[t] -= alpha * ap[t];
                }
                double rr_new = dot(r, r);
                if (std::sqrt(rr_new) <= opts.rel_tol * bnorm) done = true;
                double beta = rr_new / rr;
                rr = rr_new;
                if (!done)
                    for (size_t t = 0; t < nt; ++t) p[t] = r[t] + beta * p[t];
            }
            if (!done && std::sqrt(rr) > opts.rel_tol * 1e3 * bnorm)
                throw SolverError("curl projection did not converge (relative residual " +
                                      fmt_double(std::sqrt(rr) / bnorm) + ")",
                                  std::sqrt(rr) / bnorm);
            adj_of(phi, curl_part);
        }
    }

    HodgeDecomposition out;
    out.triangle_count = nt;
    out.gradient_flow = EdgeFlow(n);
    out.curl_flow = EdgeFlow(n);
    out.harmonic_flow = EdgeFlow(n);
    for (size_t i = 0; i < ne; ++i) {
        const auto& e = edges[i];
        double h = resid[i] - curl_part[i];
        out.gradient_flow.set(e.u, e.v, grad[i]);
        out.curl_flow.set(e.u, e.v, curl_part[i]);
        out.harmonic_flow.set(e.u, e.v, h);
        out.gradient_norm_sq += e.w * grad[i] * grad[i];
        out.curl_norm_sq += e.w * curl_part[i] * curl_part[i];
        out.harmonic_norm_sq += e.w * h * h;
        out.flow_norm_sq += e.w * e.y * e.y;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inconsistency metrics
// ---------------------------------------------------------------------------

struct InconsistencyMetrics {
    double global_ratio = 0.0;   // (curl + harmonic) share of ||Y||^2_w
    double curl_ratio = 0.0;
    double harmonic_ratio = 0.0;
    double gradient_share = 0.0;
};

inline InconsistencyMetrics inconsistency_metrics(const HodgeDecomposition& d) {
    if (d.flow_norm_sq <= 0.0)
        throw ZeroFlowError("no comparison signal");
    auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
    InconsistencyMetrics m;
    m.curl_ratio = clamp01(d.curl_norm_sq / d.flow_norm_sq);
    m.harmonic_ratio = clamp01(d.harmonic_norm_sq / d.flow_norm_sq);
    m.global_ratio = clamp01((d.curl_norm_sq + d.harmonic_norm_sq) / d.flow_norm_sq);
    m.gradient_share = clamp01(d.gradient_norm_sq / d.flow_norm_sq);
    return m;
}

} // namespace hodgerank
