#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hodgerank/core.hpp"
#include "hodgerank/graph.hpp"

namespace hodgerank {

// ---------------------------------------------------------------------------
// Averaging baselines
// ---------------------------------------------------------------------------

/// Mean of all scores a student received, across assignments. Students never
/// graded are flagged missing.
inline RankingResult cumulative_average(const std::vector<GradeRecord>& records) {
    IdIndex universe = student_universe(records);
    const int n = universe.size();
    RankingResult out;
    out.method = Method::cumulative_avg;
    out.students = universe.ids();
    out.scores.assign(static_cast<size_t>(n), 0.0);
    out.component_id.assign(static_cast<size_t>(n), 0);
    out.missing.assign(static_cast<size_t>(n), false);

    std::vector<double> sum(static_cast<size_t>(n), 0.0);
    std::vector<int> count(static_cast<size_t>(n), 0);
    for (const auto& r : records) {
        int i = universe.find(r.gradee);
        sum[static_cast<size_t>(i)] += r.score;
        ++count[static_cast<size_t>(i)];
    }
    for (int i = 0; i < n; ++i) {
        if (count[static_cast<size_t>(i)] == 0) {
            out.missing[static_cast<size_t>(i)] = true;
            out.scores[static_cast<size_t>(i)] = std::nan("");
            out.warnings.push_back("no grades received: " + universe.id(i));
        } else {
            out.scores[static_cast<size_t>(i)] =
                sum[static_cast<size_t>(i)] / count[static_cast<size_t>(i)];
        }
    }
    return out;
}

/// Drops `trim` lowest and `trim` highest received scores per student before
/// averaging. With fewer than 2*trim+1 scores the plain mean is used and the
/// student is flagged in the warnings.
inline RankingResult truncated_average(const std::vector<GradeRecord>& records, int trim) {
    if (trim < 0) throw ValidationError("trim must be >= 0");
    IdIndex universe = student_universe(records);
    const int n = universe.size();
    RankingResult out;
    out.method = Method::truncated_avg;
    out.students = universe.ids();
    out.scores.assign(static_cast<size_t>(n), 0.0);
    out.component_id.assign(static_cast<size_t>(n), 0);
    out.missing.assign(static_cast<size_t>(n), false);

    std::vector<std::vector<double>> received(static_cast<size_t>(n));
    for (const auto& r : records)
        received[static_cast<size_t>(universe.find(r.gradee))].push_back(r.score);

    for (int i = 0; i < n; ++i) {
        auto& v = received[static_cast<size_t>(i)];
        if (v.empty()) {
            out.missing[static_cast<size_t>(i)] = true;
            out.scores[static_cast<size_t>(i)] = std::nan("");
            out.warnings.push_back("no grades received: " + universe.id(i));
            continue;
        }
        std::sort(v.begin(), v.end());
        size_t lo = 0, hi = v.size();
        if (static_cast<int>(v.size()) >= 2 * trim + 1) {
            lo = static_cast<size_t>(trim);
            hi = v.size() - static_cast<size_t>(trim);
        } else if (trim > 0) {
            out.warnings.push_back("too few grades to trim, plain mean used: " + universe.id(i));
        }
        double s = 0.0;
        for (size_t k = lo; k < hi; ++k) s += v[k];
        out.scores[static_cast<size_t>(i)] = s / static_cast<double>(hi - lo);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PeerRank
// ---------------------------------------------------------------------------

struct PeerRankOptions {
    double alpha = 0.5;
    double beta = 0.0;
    double tol = 1e-9;
    int max_iters = 1000;
    double epsilon = 0.0; // optional regularizer for zero grader mass
};

// Fixed-point reputation iteration on normalized grades in [0, 1]:
//   X_i <- (1-a-b) X_i + a * sum_{j in G(i)} X_j A_{j,i} / sum_{j in G(i)} X_j
//                      + b * (1 - mean_{j in g(i)} |A_{i,j} - X_j|)
// where G(i) are i's graders, g(i) the students i graded, and A_{j,i} is the
// per-pair mean of the normalized grades j gave i across assignments. The
// iteration starts from the plain received averages.
inline RankingResult peerrank(const std::vector<GradeRecord>& records,
                              const PeerRankOptions& opts = {},
                              const ScoreScale& scale = {}) {
    if (opts.alpha < 0.0 || opts.alpha > 1.0)
        throw ValidationError("peerrank alpha must be in [0,1]");
    if (opts.beta < 0.0 || opts.alpha + opts.beta > 1.0)
        throw ValidationError("peerrank beta must be in [0, 1-alpha]");
    if (scale.span() <= 0.0) throw ValidationError("empty score scale");

    IdIndex universe = student_universe(records);
    const int n = universe.size();
    RankingResult out;
    out.method = Method::peerrank;
    out.students = universe.ids();
    out.component_id.assign(static_cast<size_t>(n), 0);
    out.missing.assign(static_cast<size_t>(n), false);

    // A_{j,i}: mean normalized grade of each (grader j, gradee i) pair.
    std::map<std::pair<int, int>, std::pair<double, int>> pair_acc;
    std::vector<double> recv_sum(static_cast<size_t>(n), 0.0);
    std::vector<int> recv_count(static_cast<size_t>(n), 0);
    for (const auto& r : records) {
        int j = universe.find(r.grader);
        int i = universe.find(r.gradee);
        double a = (r.score - scale.lo) / scale.span();
        auto& acc = pair_acc[{j, i}];
        acc.first += a;
        acc.second += 1;
        recv_sum[static_cast<size_t>(i)] += a;
        ++recv_count[static_cast<size_t>(i)];
    }
    for (int i = 0; i < n; ++i) {
        if (recv_count[static_cast<size_t>(i)] == 0)
            throw ValidationError("peerrank requires every student to receive at least one grade (" +
                                  universe.id(i) + " has none)");
    }

    std::vector<std::vector<std::pair<int, double>>> graders_of(static_cast<size_t>(n)); // (j, A_ji)
    std::vector<std::vector<std::pair<int, double>>> graded_by(static_cast<size_t>(n));  // (j, A_ij)
    for (const auto& [key, acc] : pair_acc) {
        double a = acc.first / acc.second;
        graders_of[static_cast<size_t>(key.second)].push_back({key.first, a});
        graded_by[static_cast<size_t>(key.first)].push_back({key.second, a});
    }

    std::vector<double> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        x[static_cast<size_t>(i)] =
            recv_sum[static_cast<size_t>(i)] / recv_count[static_cast<size_t>(i)];

    bool warned_empty_beta = false;
    std::vector<double> next(static_cast<size_t>(n));
    out.converged = false;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        for (int i = 0; i < n; ++i) {
            double mass = 0.0, weighted = 0.0;
            for (const auto& [j, a] : graders_of[static_cast<size_t>(i)]) {
                mass += x[static_cast<size_t>(j)];
                weighted += x[static_cast<size_t>(j)] * a;
            }
            mass += opts.epsilon;
            if (mass == 0.0)
                throw SolverError("degenerate grader mass for student " + universe.id(i), 0.0);
            double value = (1.0 - opts.alpha - opts.beta) * x[static_cast<size_t>(i)] +
                           opts.alpha * weighted / mass;
            if (opts.beta > 0.0) {
                const auto& outgoing = graded_by[static_cast<size_t>(i)];
                if (outgoing.empty()) {
                    if (!warned_empty_beta) {
                        out.warnings.push_back("beta term skipped for students who graded nobody");
                        warned_empty_beta = true;
                    }
                } else {
                    double dev = 0.0;
                    for (const auto& [j, a] : outgoing)
                        dev += std::abs(a - x[static_cast<size_t>(j)]);
                    value += opts.beta * (1.0 - dev / static_cast<double>(outgoing.size()));
                }
            }
            next[static_cast<size_t>(i)] = value;
        }
        double delta = 0.0;
        for (int i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(next[static_cast<size_t>(i)] - x[static_cast<size_t>(i)]));
        x.swap(next);
        if (delta < opts.tol) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged)
        out.warnings.push_back("peerrank did not converge in " + std::to_string(opts.max_iters) +
                               " iterations");
    out.scores = x;
    return out;
}

} // namespace hodgerank
