#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hodgerank/hodgerank.hpp>

using namespace hodgerank;

namespace {

// ---------------------------------------------------------------------------
// Logging (RANK_LOG = error | warn | info | debug, default warn)
// ---------------------------------------------------------------------------

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };
LogLevel g_log_level = LogLevel::warn;

void init_log_level() {
    const char* env = std::getenv("RANK_LOG");
    if (!env) return;
    std::string v(env);
    if (v == "error") g_log_level = LogLevel::error;
    else if (v == "warn") g_log_level = LogLevel::warn;
    else if (v == "info") g_log_level = LogLevel::info;
    else if (v == "debug") g_log_level = LogLevel::debug;
    else std::cerr << "warning: unknown RANK_LOG value '" << v << "', using warn\n";
}

void log_at(LogLevel lvl, const std::string& msg) {
    static const char* names[] = {"error", "warning", "info", "debug"};
    if (static_cast<int>(lvl) <= static_cast<int>(g_log_level))
        std::cerr << names[static_cast<int>(lvl)] << ": " << msg << '\n';
}

// ---------------------------------------------------------------------------
// Flag value parsing
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& tok, const std::string& what) {
    double v;
    if (!detail::parse_score(tok, v)) throw ValidationError("bad " + what + ": '" + tok + "'");
    return v;
}

ScoreScale parse_scale(const std::string& spec) {
    auto t = split(spec, ':');
    if (t.size() != 2) throw ValidationError("bad scale '" + spec + "', expected lo:hi");
    ScoreScale s{parse_num(t[0], "scale bound"), parse_num(t[1], "scale bound")};
    if (s.span() <= 0.0) throw ValidationError("scale must satisfy lo < hi");
    return s;
}

TiePolicy parse_tie_policy(const std::string& v) {
    if (v == "include") return TiePolicy::include_ties;
    if (v == "paper-strict") return TiePolicy::paper_strict;
    throw ValidationError("unknown tie policy '" + v + "' (include | paper-strict)");
}

AggregateMode parse_aggregate(const std::string& v) {
    if (v == "mean") return AggregateMode::weighted_mean;
    if (v == "sum") return AggregateMode::sum;
    throw ValidationError("unknown aggregate mode '" + v + "' (mean | sum)");
}

QualitySpec parse_quality(const std::string& spec) {
    auto t = split(spec, ':');
    QualitySpec q;
    if (t[0] == "uniform") q.dist = QualitySpec::Dist::uniform;
    else if (t[0] == "topheavy") q.dist = QualitySpec::Dist::topheavy;
    else throw ValidationError("unknown quality distribution '" + t[0] + "' (uniform | topheavy)");
    if (t.size() == 3) {
        q.lo = parse_num(t[1], "quality bound");
        q.hi = parse_num(t[2], "quality bound");
        if (q.hi < q.lo) throw ValidationError("quality bounds must satisfy lo <= hi");
    } else if (t.size() != 1) {
        throw ValidationError("bad quality spec '" + spec + "', expected dist[:lo:hi]");
    }
    return q;
}

BiasSpec parse_bias(const std::string& spec) {
    auto t = split(spec, ':');
    BiasSpec b;
    if (t[0] == "none") {
        if (t.size() != 1) throw ValidationError("bias 'none' takes no parameters");
        return b;
    }
    if (t[0] == "normal") {
        if (t.size() != 2) throw ValidationError("bad bias spec, expected normal:sd");
        b.dist = BiasSpec::Dist::normal;
        b.sd = parse_num(t[1], "bias sd");
        if (b.sd < 0.0) throw ValidationError("bias sd must be >= 0");
        return b;
    }
    if (t[0] == "uniform") {
        b.dist = BiasSpec::Dist::uniform;
        if (t.size() == 2) {
            double m = parse_num(t[1], "bias magnitude");
            b.lo = -m;
            b.hi = m;
        } else if (t.size() == 3) {
            b.lo = parse_num(t[1], "bias bound");
            b.hi = parse_num(t[2], "bias bound");
        } else {
            throw ValidationError("bad bias spec, expected uniform:m or uniform:lo:hi");
        }
        return b;
    }
    throw ValidationError("unknown bias distribution '" + t[0] + "' (none | normal | uniform)");
}

// ---------------------------------------------------------------------------
// Shared options and config file handling
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string config_path;
    std::string tie_policy = "include";
    std::string aggregate = "mean";
    std::string scale = "0:100";
    double alpha = 0.5;
    double beta = 0.0;
    int trim = 1;
    double peerrank_epsilon = 0.0;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (flags take precedence)");
    cmd->add_option("--tie-policy", o.tie_policy, "Tied comparisons: include | paper-strict")
        ->default_str("include");
    cmd->add_option("--aggregate", o.aggregate, "Cross-assignment aggregation: mean | sum")
        ->default_str("mean");
    cmd->add_option("--scale", o.scale, "Valid score range lo:hi")->default_str("0:100");
    cmd->add_option("--alpha", o.alpha, "PeerRank grader-reputation weight");
    cmd->add_option("--beta", o.beta, "PeerRank grading-accuracy weight");
    cmd->add_option("--trim", o.trim, "Grades trimmed per side for the trimmed average");
    cmd->add_option("--peerrank-epsilon", o.peerrank_epsilon,
                    "Regularizer added to the PeerRank grader mass");
}

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid config JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    return j;
}

// Config fills in only the options the command line left untouched.
template <typename T>
void config_fill(const nlohmann::json& j, const char* key, CLI::App* cmd, const char* flag,
                 T& target) {
    if (!j.contains(key) || cmd->count(flag) > 0) return;
    try {
        target = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(std::string("config key '") + key + "' has the wrong type");
    }
}

void apply_common_config(const nlohmann::json& j, CLI::App* cmd, CommonOpts& o) {
    config_fill(j, "tie_policy", cmd, "--tie-policy", o.tie_policy);
    config_fill(j, "aggregate", cmd, "--aggregate", o.aggregate);
    config_fill(j, "scale", cmd, "--scale", o.scale);
    config_fill(j, "alpha", cmd, "--alpha", o.alpha);
    config_fill(j, "beta", cmd, "--beta", o.beta);
    config_fill(j, "trim", cmd, "--trim", o.trim);
    config_fill(j, "peerrank_epsilon", cmd, "--peerrank-epsilon", o.peerrank_epsilon);
}

CompareConfig make_compare_config(const CommonOpts& o) {
    CompareConfig cc;
    cc.tie_policy = parse_tie_policy(o.tie_policy);
    cc.aggregate = parse_aggregate(o.aggregate);
    cc.trim = o.trim;
    cc.scale = parse_scale(o.scale);
    cc.peerrank.alpha = o.alpha;
    cc.peerrank.beta = o.beta;
    cc.peerrank.epsilon = o.peerrank_epsilon;
    return cc;
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

std::vector<GradeRecord> load_records(const std::string& path, const std::string& format,
                                      const ScoreScale& scale) {
    RecordFormat fmt;
    if (format == "csv") {
        fmt = RecordFormat::csv;
    } else if (format == "json") {
        fmt = RecordFormat::json;
    } else if (format == "auto") {
        fmt = path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? RecordFormat::json
                                                                          : RecordFormat::csv;
    } else {
        throw ValidationError("unknown input format '" + format + "' (auto | csv | json)");
    }

    std::pair<std::vector<GradeRecord>, IngestReport> parsed;
    if (path == "-") {
        parsed = parse_records(std::cin, fmt, scale);
    } else {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open input file: " + path);
        parsed = parse_records(in, fmt, scale);
    }
    const auto& report = parsed.second;
    log_at(LogLevel::info, "accepted " + std::to_string(report.accepted) + " records, rejected " +
                               std::to_string(report.rejected) + " rows");
    for (const auto& [line, reason] : report.rejection_reasons)
        log_at(LogLevel::debug, "line " + std::to_string(line) + ": " + reason);
    if (report.rejected > 0)
        log_at(LogLevel::warn, std::to_string(report.rejected) + " rows rejected during ingest");
    if (parsed.first.empty()) throw ValidationError("no valid records");
    return parsed.first;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    return out;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

struct RankOpts {
    std::string input;
    std::string method = "hodgerank";
    std::string format = "csv";
    std::string input_format = "auto";
    std::string out_path;
    std::string report_dir;
    CommonOpts common;
};

void write_report_files(const ComparisonReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    auto jf = open_out(dir + "/report.json");
    jf << report_to_json(rep).dump(2) << '\n';
    auto cf = open_out(dir + "/curves.csv");
    write_curves_csv(rep, cf);
    auto sf = open_out(dir + "/curves.svg");
    write_curves_svg(rep, sf);
    log_at(LogLevel::info, "report written to " + dir + "/{report.json, curves.csv, curves.svg}");
}

void run_rank(const RankOpts& o) {
    ScoreScale scale = parse_scale(o.common.scale);
    auto records = load_records(o.input, o.input_format, scale);
    TiePolicy tie = parse_tie_policy(o.common.tie_policy);
    AggregateMode agg = parse_aggregate(o.common.aggregate);

    ComparisonGraph graph = build_graph(records, tie, agg);
    ComponentLabeling labeling = connected_components(graph);

    RankingResult result;
    if (o.method == "hodgerank") {
        result = solve_hodgerank(graph);
    } else if (o.method == "avg") {
        result = cumulative_average(records);
    } else if (o.method == "trimmed") {
        result = truncated_average(records, o.common.trim);
    } else if (o.method == "peerrank") {
        PeerRankOptions pr;
        pr.alpha = o.common.alpha;
        pr.beta = o.common.beta;
        pr.epsilon = o.common.peerrank_epsilon;
        result = peerrank(records, pr, scale);
    } else {
        throw ValidationError("unknown method '" + o.method +
                              "' (hodgerank | avg | trimmed | peerrank)");
    }
    for (const auto& w : result.warnings) log_at(LogLevel::warn, w);

    const int n = result.size();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        bool ma = result.missing[static_cast<size_t>(a)];
        bool mb = result.missing[static_cast<size_t>(b)];
        if (ma != mb) return !ma;
        if (ma) return false;
        return result.scores[static_cast<size_t>(a)] > result.scores[static_cast<size_t>(b)];
    });

    std::ofstream file;
    if (!o.out_path.empty()) file = open_out(o.out_path);
    std::ostream& out = o.out_path.empty() ? std::cout : file;

    if (o.format == "csv") {
        out << "student_id,score,component\n";
        for (int idx : order) {
            size_t i = static_cast<size_t>(idx);
            out << result.students[i] << ',';
            if (!result.missing[i]) out << fmt_double(result.scores[i]);
            out << ',' << labeling.label[i] << '\n';
        }
    } else if (o.format == "json") {
        nlohmann::json j;
        j["method"] = method_name(result.method);
        j["component_count"] = labeling.count;
        j["warnings"] = result.warnings;
        nlohmann::json rows = nlohmann::json::array();
        for (int idx : order) {
            size_t i = static_cast<size_t>(idx);
            nlohmann::json row;
            row["student"] = result.students[i];
            if (result.missing[i]) row["score"] = nullptr;
            else row["score"] = result.scores[i];
            row["component"] = labeling.label[i];
            rows.push_back(std::move(row));
        }
        j["scores"] = std::move(rows);
        out << j.dump(2) << '\n';
    } else {
        throw ValidationError("unknown output format '" + o.format + "' (csv | json)");
    }

    if (!o.report_dir.empty()) {
        CompareConfig cc = make_compare_config(o.common);
        write_report_files(compare_methods(records, cc), o.report_dir);
    }
}

// ---------------------------------------------------------------------------
// components
// ---------------------------------------------------------------------------

struct ComponentsOpts {
    std::string input;
    std::string input_format = "auto";
    std::string order;
    CommonOpts common;
};

void run_components(const ComponentsOpts& o) {
    ScoreScale scale = parse_scale(o.common.scale);
    auto records = load_records(o.input, o.input_format, scale);
    TiePolicy tie = parse_tie_policy(o.common.tie_policy);

    std::vector<std::string> ordering;
    if (!o.order.empty()) {
        ordering = split(o.order, ',');
    } else {
        ordering = assignment_order(records);
        std::sort(ordering.begin(), ordering.end());
    }
    auto counts = component_trajectory(records, ordering, tie);
    for (size_t t = 0; t < counts.size(); ++t)
        std::cout << (t + 1) << ": " << counts[t] << '\n';
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOpts {
    std::string out_path = "cohort.csv";
    std::string report_dir = ".";
    int students = 133;
    int assignments = 13;
    int reviews = 5;
    std::uint64_t seed = 42;
    std::string quality = "uniform:30:70";
    std::string bias = "none";
    double bias_sd = 0.0;
    double noise_sd = 0.0;
    bool compare = false;
    CommonOpts common;
};

void run_simulate(CLI::App* cmd, SimulateOpts& o) {
    if (!o.common.config_path.empty()) {
        nlohmann::json j = load_config_file(o.common.config_path);
        apply_common_config(j, cmd, o.common);
        config_fill(j, "n_students", cmd, "--students", o.students);
        config_fill(j, "n_assignments", cmd, "--assignments", o.assignments);
        config_fill(j, "reviews_per_student", cmd, "--reviews", o.reviews);
        config_fill(j, "seed", cmd, "--seed", o.seed);
        config_fill(j, "quality", cmd, "--quality", o.quality);
        config_fill(j, "bias", cmd, "--bias", o.bias);
        config_fill(j, "noise_sd", cmd, "--noise-sd", o.noise_sd);
    }

    CohortConfig cfg;
    cfg.n_students = o.students;
    cfg.n_assignments = o.assignments;
    cfg.reviews_per_student = o.reviews;
    cfg.seed = o.seed;
    cfg.scale = parse_scale(o.common.scale);
    cfg.quality = parse_quality(o.quality);
    if (cmd->count("--bias-sd") > 0) {
        if (o.bias_sd < 0.0) throw ValidationError("bias sd must be >= 0");
        cfg.bias = BiasSpec{};
        if (o.bias_sd > 0.0) {
            cfg.bias.dist = BiasSpec::Dist::normal;
            cfg.bias.sd = o.bias_sd;
        }
    } else {
        cfg.bias = parse_bias(o.bias);
    }
    if (o.noise_sd < 0.0) throw ValidationError("noise sd must be >= 0");
    cfg.noise_sd = o.noise_sd;

    SyntheticCohort cohort = make_cohort(cfg);
    auto records = generate(cohort);
    log_at(LogLevel::info, "generated " + std::to_string(records.size()) + " records");

    if (o.out_path == "-") {
        write_csv(records, std::cout);
    } else {
        auto out = open_out(o.out_path);
        write_csv(records, out);
        log_at(LogLevel::info, "records written to " + o.out_path);
    }

    if (!o.compare) return;

    CompareConfig cc = make_compare_config(o.common);
    cc.ground_truth.reserve(static_cast<size_t>(cohort.n_students));
    for (int i = 0; i < cohort.n_students; ++i)
        cc.ground_truth.push_back({cohort.student_id(i), cohort.true_quality[static_cast<size_t>(i)]});

    ComparisonReport rep = compare_methods(records, cc);
    write_report_files(rep, o.report_dir);

    for (const auto& [method, tau] : rep.tau_vs_truth)
        std::cout << "tau_vs_truth " << method << ": " << fmt_double(tau) << '\n';
    if (rep.metrics_ok) {
        std::cout << "global_ratio: " << fmt_double(rep.metrics.global_ratio) << '\n';
        std::cout << "curl_ratio: " << fmt_double(rep.metrics.curl_ratio) << '\n';
        std::cout << "harmonic_ratio: " << fmt_double(rep.metrics.harmonic_ratio) << '\n';
    }
    for (const auto& w : rep.warnings) log_at(LogLevel::warn, w);
}

// ---------------------------------------------------------------------------
// inconsistency
// ---------------------------------------------------------------------------

struct InconsistencyOpts {
    std::string input;
    std::string input_format = "auto";
    int top = 10;
    CommonOpts common;
};

void run_inconsistency(const InconsistencyOpts& o) {
    ScoreScale scale = parse_scale(o.common.scale);
    auto records = load_records(o.input, o.input_format, scale);
    TiePolicy tie = parse_tie_policy(o.common.tie_policy);
    AggregateMode agg = parse_aggregate(o.common.aggregate);

    ComparisonGraph graph = build_graph(records, tie, agg);
    if (graph.edges().empty()) throw ValidationError("empty comparison graph");

    RankingResult ranking = solve_hodgerank(graph);
    for (const auto& w : ranking.warnings) log_at(LogLevel::warn, w);
    HodgeDecomposition decomp = decompose_residual(graph, ranking);
    InconsistencyMetrics metrics = inconsistency_metrics(decomp);

    std::cout << "global_ratio: " << fmt_double(metrics.global_ratio) << '\n';
    std::cout << "curl_ratio: " << fmt_double(metrics.curl_ratio) << '\n';
    std::cout << "harmonic_ratio: " << fmt_double(metrics.harmonic_ratio) << '\n';
    std::cout << "gradient_share: " << fmt_double(metrics.gradient_share) << '\n';
    std::cout << "triangles: " << decomp.triangle_count << '\n';

    // Triangle curls of the aggregate flow; the gradient part is curl-free,
    // so these coincide with the residual's curls.
    auto curls = triangle_curl(graph.flow(), graph);
    std::stable_sort(curls.begin(), curls.end(), [](const TriangleCurl& a, const TriangleCurl& b) {
        return std::abs(a.curl) > std::abs(b.curl);
    });
    int k = std::min<int>(o.top, static_cast<int>(curls.size()));
    if (k > 0) std::cout << "top " << k << " triangles by |curl|:\n";
    const auto& ids = graph.students();
    for (int t = 0; t < k; ++t) {
        const auto& c = curls[static_cast<size_t>(t)];
        std::cout << "  " << ids.id(c.i) << ' ' << ids.id(c.j) << ' ' << ids.id(c.k) << ": "
                  << fmt_double(c.curl) << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    init_log_level();
    CLI::App app{"Peer-assessment ranking: least-squares scores on the comparison graph,\n"
                 "flow decomposition, baselines, synthetic cohorts and reports."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    RankOpts rank_opts;
    auto* rank_cmd = app.add_subcommand("rank", "Rank students from a grade file");
    rank_cmd->add_option("input", rank_opts.input, "Grade records (CSV or JSON, - for stdin)")
        ->required();
    rank_cmd->add_option("--method", rank_opts.method,
                         "Ranking method: hodgerank | avg | trimmed | peerrank")
        ->default_str("hodgerank");
    rank_cmd->add_option("--format", rank_opts.format, "Output format: csv | json")
        ->default_str("csv");
    rank_cmd->add_option("--input-format", rank_opts.input_format,
                         "Input format: auto | csv | json")
        ->default_str("auto");
    rank_cmd->add_option("--out", rank_opts.out_path, "Write scores here instead of stdout");
    rank_cmd->add_option("--report-dir", rank_opts.report_dir,
                         "Also run the full method comparison and write report files here");
    add_common_flags(rank_cmd, rank_opts.common);
    rank_cmd->callback([&] {
        if (!rank_opts.common.config_path.empty())
            apply_common_config(load_config_file(rank_opts.common.config_path), rank_cmd,
                                rank_opts.common);
        run_rank(rank_opts);
    });

    ComponentsOpts comp_opts;
    auto* comp_cmd =
        app.add_subcommand("components", "Connected-component counts per assignment prefix");
    comp_cmd->add_option("input", comp_opts.input, "Grade records (CSV or JSON, - for stdin)")
        ->required();
    comp_cmd->add_option("--input-format", comp_opts.input_format,
                         "Input format: auto | csv | json")
        ->default_str("auto");
    comp_cmd->add_option("--order", comp_opts.order,
                         "Comma-separated assignment order (default: lexicographic)");
    add_common_flags(comp_cmd, comp_opts.common);
    comp_cmd->callback([&] {
        if (!comp_opts.common.config_path.empty())
            apply_common_config(load_config_file(comp_opts.common.config_path), comp_cmd,
                                comp_opts.common);
        run_components(comp_opts);
    });

    SimulateOpts sim_opts;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic cohort");
    sim_cmd->add_option("--out", sim_opts.out_path, "Output CSV path (- for stdout)")
        ->default_str("cohort.csv");
    sim_cmd->add_option("--students", sim_opts.students, "Number of students");
    sim_cmd->add_option("--assignments", sim_opts.assignments, "Number of assignments");
    sim_cmd->add_option("--reviews", sim_opts.reviews, "Reviews per student per assignment");
    sim_cmd->add_option("--seed", sim_opts.seed, "RNG seed");
    sim_cmd->add_option("--quality", sim_opts.quality,
                        "Latent quality distribution: uniform[:lo:hi] | topheavy[:lo:hi]")
        ->default_str("uniform:30:70");
    auto* bias_opt = sim_cmd->add_option(
        "--bias", sim_opts.bias, "Grader bias: none | normal:sd | uniform:m | uniform:lo:hi");
    sim_cmd->add_option("--bias-sd", sim_opts.bias_sd, "Shorthand for --bias normal:sd")
        ->excludes(bias_opt);
    sim_cmd->add_option("--noise-sd", sim_opts.noise_sd, "Per-grade Gaussian noise sd");
    sim_cmd->add_flag("--compare", sim_opts.compare,
                      "Run all ranking methods against ground truth and write the report");
    sim_cmd->add_option("--report-dir", sim_opts.report_dir, "Directory for report files")
        ->default_str(".");
    add_common_flags(sim_cmd, sim_opts.common);
    sim_cmd->callback([&] { run_simulate(sim_cmd, sim_opts); });

    InconsistencyOpts inc_opts;
    auto* inc_cmd =
        app.add_subcommand("inconsistency", "Flow decomposition ratios and worst triangles");
    inc_cmd->add_option("input", inc_opts.input, "Grade records (CSV or JSON, - for stdin)")
        ->required();
    inc_cmd->add_option("--input-format", inc_opts.input_format,
                        "Input format: auto | csv | json")
        ->default_str("auto");
    inc_cmd->add_option("--top", inc_opts.top, "Triangles to list")->default_str("10");
    add_common_flags(inc_cmd, inc_opts.common);
    inc_cmd->callback([&] {
        if (!inc_opts.common.config_path.empty())
            apply_common_config(load_config_file(inc_opts.common.config_path), inc_cmd,
                                inc_opts.common);
        run_inconsistency(inc_opts);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ZeroFlowError& e) {
        log_at(LogLevel::error, e.what());
        return 4;
    } catch (const SolverError& e) {
        log_at(LogLevel::error, e.what());
        return 3;
    } catch (const ValidationError& e) {
        log_at(LogLevel::error, e.what());
        return 2;
    } catch (const std::exception& e) {
        log_at(LogLevel::error, e.what());
        return 2;
    }
    return 0;
}
