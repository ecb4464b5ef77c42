#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "hodgerank/core.hpp"

namespace hodgerank {

// Whether tied scores (same grader, same assignment, equal marks) count as a
// comparison. `include_ties` records them with difference 0; `paper_strict`
// drops them, which can disconnect the graph.
enum class TiePolicy { include_ties, paper_strict };

// Cross-assignment aggregation: weighted mean keeps flow values in
// score-difference units; `sum` adds the per-assignment flows raw.
enum class AggregateMode { weighted_mean, sum };

inline const char* tie_policy_name(TiePolicy p) {
    return p == TiePolicy::include_ties ? "include" : "paper-strict";
}

inline const char* aggregate_mode_name(AggregateMode m) {
    return m == AggregateMode::weighted_mean ? "mean" : "sum";
}

// Per-assignment pairwise flow and its comparison-count weights.
struct AssignmentFlows {
    std::string assignment;
    EdgeFlow flow;        // Y^a: mean score difference per pair
    WeightMatrix weights; // W^a: number of graders comparing the pair
};

/// All student ids (graders and gradees) in first-appearance order.
inline IdIndex student_universe(const std::vector<GradeRecord>& records) {
    IdIndex idx;
    for (const auto& r : records) {
        idx.intern(r.grader);
        idx.intern(r.gradee);
    }
    return idx;
}

/// Distinct assignment ids in first-appearance order.
inline std::vector<std::string> assignment_order(const std::vector<GradeRecord>& records) {
    IdIndex idx;
    for (const auto& r : records) idx.intern(r.assignment);
    return idx.ids();
}

// Builds Y^a and W^a for one assignment. A comparison of {i, j} exists for
// every grader who scored both i and j in this assignment; its value is
// score(j) - score(i). Y^a is the arithmetic mean of those differences and
// W^a the number of contributing graders, so a constant offset per grader
// cancels exactly.
inline AssignmentFlows pairwise_flows(const std::vector<GradeRecord>& records,
                                      const std::string& assignment,
                                      const IdIndex& universe,
                                      TiePolicy policy = TiePolicy::include_ties) {
    const int n = universe.size();
    AssignmentFlows out{assignment, EdgeFlow(n), WeightMatrix(n)};

    // grader -> (gradee index -> score); a later record for the same
    // (grader, gradee) overwrites the earlier one.
    std::unordered_map<std::string, std::map<int, double>> by_grader;
    for (const auto& r : records) {
        if (r.assignment != assignment) continue;
        int g = universe.find(r.gradee);
        if (g < 0) throw ValidationError("gradee not in universe: " + r.gradee);
        by_grader[r.grader][g] = r.score;
    }

    std::unordered_map<std::uint64_t, double> sum;
    std::unordered_map<std::uint64_t, double> count;
    for (const auto& [grader, scored] : by_grader) {
        for (auto a = scored.begin(); a != scored.end(); ++a) {
            for (auto b = std::next(a); b != scored.end(); ++b) {
                double diff = b->second - a->second; // score(j) - score(i), i < j
                if (policy == TiePolicy::paper_strict && diff == 0.0) continue;
                auto key = detail::pair_key(a->first, b->first);
                sum[key] += diff;
                count[key] += 1.0;
            }
        }
    }
    for (const auto& [key, c] : count) {
        auto [i, j] = detail::key_pair(key);
        out.weights.set(i, j, c);
        out.flow.set(i, j, sum[key] / c);
    }
    return out;
}

/// Per-assignment flows for every assignment, in `order`.
inline std::vector<AssignmentFlows> all_pairwise_flows(const std::vector<GradeRecord>& records,
                                                       const std::vector<std::string>& order,
                                                       const IdIndex& universe,
                                                       TiePolicy policy = TiePolicy::include_ties) {
    std::vector<AssignmentFlows> out;
    out.reserve(order.size());
    for (const auto& a : order) out.push_back(pairwise_flows(records, a, universe, policy));
    return out;
}

// Aggregates per-assignment flows: W = sum of W^a; the flow is either the
// W^a-weighted mean of the Y^a (default) or their raw sum.
inline ComparisonGraph aggregate(const IdIndex& universe,
                                 const std::vector<AssignmentFlows>& flows,
                                 AggregateMode mode = AggregateMode::weighted_mean) {
    const int n = universe.size();
    std::unordered_map<std::uint64_t, double> wsum;
    std::unordered_map<std::uint64_t, double> ysum;
    for (const auto& af : flows) {
        if (af.flow.dimension() != n || af.weights.dimension() != n)
            throw ValidationError("assignment flows disagree on the vertex universe");
        for (const auto& [pair, w] : af.weights.sorted_entries()) {
            if (w <= 0.0) continue;
            auto key = detail::pair_key(pair.first, pair.second);
            double y = af.flow.value(pair.first, pair.second);
            wsum[key] += w;
            ysum[key] += (mode == AggregateMode::weighted_mean) ? w * y : y;
        }
    }
    EdgeFlow flow(n);
    WeightMatrix weights(n);
    for (const auto& [key, w] : wsum) {
        auto [i, j] = detail::key_pair(key);
        weights.set(i, j, w);
        double y = ysum[key];
        flow.set(i, j, mode == AggregateMode::weighted_mean ? y / w : y);
    }
    return ComparisonGraph(universe, flow, weights);
}

/// Records -> aggregated comparison graph in one step.
inline ComparisonGraph build_graph(const std::vector<GradeRecord>& records,
                                   TiePolicy policy = TiePolicy::include_ties,
                                   AggregateMode mode = AggregateMode::weighted_mean) {
    IdIndex universe = student_universe(records);
    auto order = assignment_order(records);
    return aggregate(universe, all_pairwise_flows(records, order, universe, policy), mode);
}

// ---------------------------------------------------------------------------
// Connectivity
// ---------------------------------------------------------------------------

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<size_t>(n)), rank_(static_cast<size_t>(n), 0),
                                components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[static_cast<size_t>(a)] < rank_[static_cast<size_t>(b)]) std::swap(a, b);
        parent_[static_cast<size_t>(b)] = a;
        if (rank_[static_cast<size_t>(a)] == rank_[static_cast<size_t>(b)]) ++rank_[static_cast<size_t>(a)];
        --components_;
        return true;
    }

    int components() const { return components_; }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    int components_;
};

struct ComponentLabeling {
    std::vector<int> label; // per vertex, 0..count-1 in first-vertex order
    int count = 0;
};

inline ComponentLabeling connected_components(const ComparisonGraph& graph) {
    const int n = graph.size();
    UnionFind uf(n);
    for (const auto& e : graph.edges()) uf.unite(e.u, e.v);

    ComponentLabeling out;
    out.label.assign(static_cast<size_t>(n), -1);
    std::unordered_map<int, int> relabel;
    for (int v = 0; v < n; ++v) {
        int root = uf.find(v);
        auto it = relabel.find(root);
        if (it == relabel.end()) it = relabel.emplace(root, out.count++).first;
        out.label[static_cast<size_t>(v)] = it->second;
    }
    return out;
}

// Component count after aggregating the first t assignments, for each prefix
// of `ordering`. Monotone non-increasing: prefixes only gain edges.
inline std::vector<int> component_trajectory(const std::vector<GradeRecord>& records,
                                             const std::vector<std::string>& ordering,
                                             TiePolicy policy = TiePolicy::include_ties) {
    IdIndex universe = student_universe(records);
    auto known = assignment_order(records);
    for (const auto& a : ordering) {
        if (std::find(known.begin(), known.end(), a) == known.end())
            throw ValidationError("unknown assignment in ordering: " + a);
    }

    UnionFind uf(universe.size());
    std::vector<int> counts;
    counts.reserve(ordering.size());
    for (const auto& a : ordering) {
        auto af = pairwise_flows(records, a, universe, policy);
        for (const auto& [pair, w] : af.weights.sorted_entries()) {
            if (w > 0.0) uf.unite(pair.first, pair.second);
        }
        counts.push_back(uf.components());
    }
    return counts;
}

} // namespace hodgerank
