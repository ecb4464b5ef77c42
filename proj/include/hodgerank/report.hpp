#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodgerank/baselines.hpp"
#include "hodgerank/core.hpp"
#include "hodgerank/graph.hpp"
#include "hodgerank/solver.hpp"
#include "hodgerank/synth.hpp"

namespace hodgerank {

// ---------------------------------------------------------------------------
// Normalization and ranking curves
// ---------------------------------------------------------------------------

struct NormalizedScores {
    std::vector<double> values; // aligned with the ranking's student order
    bool degenerate = false;    // all scores equal; everything mapped to 0.5
};

/// Linear map of scores onto [0, 1]. Order-preserving, so rank correlations
/// are unchanged. Missing scores are an error.
inline NormalizedScores normalize_unit_interval(const RankingResult& ranking) {
    if (ranking.size() < 1) throw ValidationError("normalize requires at least one student");
    if (ranking.any_missing()) {
        std::string ids;
        for (int i = 0; i < ranking.size(); ++i)
            if (ranking.missing[static_cast<size_t>(i)])
                ids += (ids.empty() ? "" : ", ") + ranking.students[static_cast<size_t>(i)];
        throw ValidationError("cannot normalize, scores missing for: " + ids);
    }
    double lo = ranking.scores[0], hi = ranking.scores[0];
    for (double v : ranking.scores) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    NormalizedScores out;
    out.values.reserve(ranking.scores.size());
    if (hi == lo) {
        out.degenerate = true;
        out.values.assign(ranking.scores.size(), 0.5);
        return out;
    }
    for (double v : ranking.scores) out.values.push_back((v - lo) / (hi - lo));
    return out;
}

/// Sorted-ascending values paired with quantiles u_k = k/(n-1). The steady
/// reference line is the diagonal value = quantile.
inline std::vector<std::pair<double, double>> ranking_curve(const std::vector<double>& normalized) {
    std::vector<double> sorted = normalized;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        double u = (n > 1) ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
        out.push_back({u, sorted[k]});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Method comparison
// ---------------------------------------------------------------------------

struct CompareConfig {
    TiePolicy tie_policy = TiePolicy::include_ties;
    AggregateMode aggregate = AggregateMode::weighted_mean;
    int trim = 1;
    PeerRankOptions peerrank;
    ScoreScale scale;
    SolveOptions solve;
    // Ground truth (synthetic mode): per-student latent quality.
    std::vector<std::pair<std::string, double>> ground_truth;
};

struct MethodOutcome {
    Method method = Method::hodgerank;
    bool ok = false;
    RankingResult result;
    std::string error; // set when ok == false
    NormalizedScores normalized;
    std::vector<std::pair<double, double>> curve;
};

struct ComparisonReport {
    std::vector<MethodOutcome> outcomes; // fixed order: hodge, avg, trimmed, peerrank
    int component_count = 1;
    bool metrics_ok = false;
    InconsistencyMetrics metrics;
    size_t triangle_count = 0;
    std::vector<std::tuple<std::string, std::string, double>> pairwise_tau;
    std::vector<std::pair<std::string, double>> tau_vs_truth;
    std::vector<std::string> warnings;
    // Descriptive shape of the hodgerank curve; reported, never asserted.
    double hodge_skewness = 0.0;
    double hodge_kurtosis = 0.0;

    const MethodOutcome* find(Method m) const {
        for (const auto& o : outcomes)
            if (o.method == m) return &o;
        return nullptr;
    }
};

namespace detail {

inline void sample_shape(const std::vector<double>& v, double& skewness, double& kurtosis) {
    const double n = static_cast<double>(v.size());
    if (v.size() < 2) {
        skewness = kurtosis = 0.0;
        return;
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    skewness = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
    kurtosis = (m2 > 0.0) ? m4 / (m2 * m2) : 0.0;
}

// Tau over the students that carry a valid score in both results (results
// share one universe order by construction).
inline std::optional<double> tau_between(const RankingResult& a, const RankingResult& b) {
    std::vector<double> xa, xb;
    for (int i = 0; i < a.size(); ++i) {
        if (a.missing[static_cast<size_t>(i)] || b.missing[static_cast<size_t>(i)]) continue;
        xa.push_back(a.scores[static_cast<size_t>(i)]);
        xb.push_back(b.scores[static_cast<size_t>(i)]);
    }
    if (xa.size() < 2) return std::nullopt;
    try {
        return kendall_tau(xa, xb);
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

} // namespace detail

// Runs all four ranking methods on the same records and assembles curves,
// inconsistency metrics and rank correlations. A failing method is reported
// in place, never fatal to the others.
inline ComparisonReport compare_methods(const std::vector<GradeRecord>& records,
                                        const CompareConfig& cfg = {}) {
    if (records.empty()) throw ValidationError("no valid records");
    ComparisonReport rep;

    auto run = [&](Method m, auto&& fn) {
        MethodOutcome o;
        o.method = m;
        try {
            o.result = fn();
            o.normalized = normalize_unit_interval(o.result);
            o.curve = ranking_curve(o.normalized.values);
            o.ok = true;
            if (o.normalized.degenerate)
                rep.warnings.push_back(std::string(method_name(m)) +
                                       ": all scores equal, normalized to 0.5");
            for (const auto& w : o.result.warnings)
                rep.warnings.push_back(std::string(method_name(m)) + ": " + w);
        } catch (const Error& e) {
            o.ok = false;
            o.error = e.what();
            rep.warnings.push_back(std::string(method_name(m)) + " failed: " + e.what());
        }
        rep.outcomes.push_back(std::move(o));
    };

    ComparisonGraph graph = build_graph(records, cfg.tie_policy, cfg.aggregate);
    run(Method::hodgerank, [&] { return solve_hodgerank(graph, cfg.solve); });
    run(Method::cumulative_avg, [&] { return cumulative_average(records); });
    run(Method::truncated_avg, [&] { return truncated_average(records, cfg.trim); });
    run(Method::peerrank, [&] { return peerrank(records, cfg.peerrank, cfg.scale); });

    const MethodOutcome* hodge = rep.find(Method::hodgerank);
    if (hodge && hodge->ok) {
        rep.component_count = hodge->result.component_count;
        detail::sample_shape(hodge->normalized.values, rep.hodge_skewness, rep.hodge_kurtosis);
        try {
            auto decomp = decompose_residual(graph, hodge->result, cfg.solve);
            rep.triangle_count = decomp.triangle_count;
            rep.metrics = inconsistency_metrics(decomp);
            rep.metrics_ok = true;
        } catch (const Error& e) {
            rep.warnings.push_back(std::string("inconsistency metrics unavailable: ") + e.what());
        }
    }

    for (size_t i = 0; i < rep.outcomes.size(); ++i) {
        for (size_t j = i + 1; j < rep.outcomes.size(); ++j) {
            const auto& a = rep.outcomes[i];
            const auto& b = rep.outcomes[j];
            if (!a.ok || !b.ok) continue;
            if (auto tau = detail::tau_between(a.result, b.result))
                rep.pairwise_tau.push_back({method_name(a.method), method_name(b.method), *tau});
        }
    }

    if (!cfg.ground_truth.empty()) {
        for (const auto& o : rep.outcomes) {
            if (!o.ok) continue;
            try {
                rep.tau_vs_truth.push_back({method_name(o.method),
                                            kendall_tau(o.result, cfg.ground_truth)});
            } catch (const ValidationError& e) {
                rep.warnings.push_back(std::string(method_name(o.method)) +
                                       ": tau vs truth unavailable: " + e.what());
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json report_to_json(const ComparisonReport& rep) {
    nlohmann::json j;
    j["component_count"] = rep.component_count;
    j["triangle_count"] = rep.triangle_count;
    for (const auto& o : rep.outcomes) {
        nlohmann::json m;
        m["ok"] = o.ok;
        if (!o.ok) {
            m["error"] = o.error;
        } else {
            nlohmann::json scores;
            for (int i = 0; i < o.result.size(); ++i) {
                if (o.result.missing[static_cast<size_t>(i)])
                    scores[o.result.students[static_cast<size_t>(i)]] = nullptr;
                else
                    scores[o.result.students[static_cast<size_t>(i)]] =
                        o.result.scores[static_cast<size_t>(i)];
            }
            m["scores"] = std::move(scores);
            nlohmann::json curve = nlohmann::json::array();
            for (const auto& [u, v] : o.curve) curve.push_back({u, v});
            m["curve"] = std::move(curve);
            m["degenerate_normalization"] = o.normalized.degenerate;
            if (o.method == Method::hodgerank) {
                m["component_count"] = o.result.component_count;
                m["residual_norm_sq"] = o.result.residual_norm_sq;
                m["flow_norm_sq"] = o.result.flow_norm_sq;
            }
            if (o.method == Method::peerrank) {
                m["converged"] = o.result.converged;
                m["grade_matrix"] = "per-pair mean of normalized grades across assignments";
            }
        }
        j["methods"][method_name(o.method)] = std::move(m);
    }
    if (rep.metrics_ok) {
        j["inconsistency"] = {{"global_ratio", rep.metrics.global_ratio},
                              {"curl_ratio", rep.metrics.curl_ratio},
                              {"harmonic_ratio", rep.metrics.harmonic_ratio},
                              {"gradient_share", rep.metrics.gradient_share}};
    }
    nlohmann::json taus = nlohmann::json::object();
    for (const auto& [a, b, t] : rep.pairwise_tau) taus[a + "_vs_" + b] = t;
    j["kendall_tau"] = std::move(taus);
    if (!rep.tau_vs_truth.empty()) {
        nlohmann::json tt = nlohmann::json::object();
        for (const auto& [m, t] : rep.tau_vs_truth) tt[m] = t;
        j["tau_vs_truth"] = std::move(tt);
    }
    j["hodge_curve_shape"] = {{"skewness", rep.hodge_skewness}, {"kurtosis", rep.hodge_kurtosis}};
    j["warnings"] = rep.warnings;
    j["steady_line"] = "diagonal value = quantile";
    return j;
}

/// Tidy CSV of all method curves: method,quantile,value.
inline void write_curves_csv(const ComparisonReport& rep, std::ostream& out) {
    out << "method,quantile,value\n";
    for (const auto& o : rep.outcomes) {
        if (!o.ok) continue;
        for (const auto& [u, v] : o.curve)
            out << method_name(o.method) << ',' << fmt_double(u) << ',' << fmt_double(v) << '\n';
    }
}

// Static SVG: one polyline per method over the unit square, with the steady
// diagonal as a dashed reference.
inline void write_curves_svg(const ComparisonReport& rep, std::ostream& out) {
    const double width = 640.0, height = 480.0;
    const double ml = 60.0, mr = 180.0, mt = 20.0, mb = 45.0;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double u) { return ml + u * pw; };
    auto py = [&](double v) { return mt + (1.0 - v) * ph; };
    auto coord = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    static const std::map<Method, const char*> colors = {
        {Method::hodgerank, "#1f77b4"},
        {Method::cumulative_avg, "#d62728"},
        {Method::truncated_avg, "#2ca02c"},
        {Method::peerrank, "#9467bd"},
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << coord(px(0)) << "\" y1=\"" << coord(py(0)) << "\" x2=\""
        << coord(px(1)) << "\" y2=\"" << coord(py(0)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << coord(px(0)) << "\" y1=\"" << coord(py(0)) << "\" x2=\""
        << coord(px(0)) << "\" y2=\"" << coord(py(1)) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double u = t / 4.0;
        out << "<text x=\"" << coord(px(u)) << "\" y=\"" << coord(py(0) + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_double(u) << "</text>\n";
        out << "<text x=\"" << coord(px(0) - 8) << "\" y=\"" << coord(py(u) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_double(u) << "</text>\n";
    }
    out << "<text x=\"" << coord(ml + pw / 2) << "\" y=\"" << coord(height - 8)
        << "\" font-size=\"12\" text-anchor=\"middle\">quantile</text>\n";
    // steady line
    out << "<line x1=\"" << coord(px(0)) << "\" y1=\"" << coord(py(0)) << "\" x2=\""
        << coord(px(1)) << "\" y2=\"" << coord(py(1))
        << "\" stroke=\"#888\" stroke-dasharray=\"5,4\"/>\n";

    double ly = mt + 10.0;
    out << "<text x=\"" << coord(width - mr + 24) << "\" y=\"" << coord(ly)
        << "\" font-size=\"11\" fill=\"#888\">steady line</text>\n";
    for (const auto& o : rep.outcomes) {
        if (!o.ok || o.curve.empty()) continue;
        const char* color = colors.at(o.method);
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [u, v] : o.curve) out << coord(px(u)) << ',' << coord(py(v)) << ' ';
        out << "\"/>\n";
        ly += 16.0;
        out << "<line x1=\"" << coord(width - mr + 4) << "\" y1=\"" << coord(ly - 4) << "\" x2=\""
            << coord(width - mr + 20) << "\" y2=\"" << coord(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << coord(width - mr + 24) << "\" y=\"" << coord(ly)
            << "\" font-size=\"11\">" << method_name(o.method) << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace hodgerank
