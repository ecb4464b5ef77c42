#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hodgerank {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad input data or configuration (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

// Iterative solver failed to reach tolerance (CLI exit code 3).
struct SolverError : Error {
    double achieved_residual;
    SolverError(const std::string& what, double residual)
        : Error(what), achieved_residual(residual) {}
};

// No comparison signal at all (CLI exit code 4).
struct ZeroFlowError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Small utilities
// ---------------------------------------------------------------------------

/// Shortest decimal representation that round-trips the double exactly.
inline std::string fmt_double(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

// ---------------------------------------------------------------------------
// Score scale
// ---------------------------------------------------------------------------

// Declared grading scale. Carried as data; the hundred-mark system is only
// the default.
struct ScoreScale {
    double lo = 0.0;
    double hi = 100.0;

    bool contains(double v) const { return v >= lo && v <= hi; }
    double span() const { return hi - lo; }
    double clamp(double v) const { return std::min(hi, std::max(lo, v)); }
    std::string to_string() const {
        return "[" + fmt_double(lo) + "," + fmt_double(hi) + "]";
    }
};

// ---------------------------------------------------------------------------
// Grade records
// ---------------------------------------------------------------------------

// One grading event: grader scored gradee's submission for one assignment.
struct GradeRecord {
    std::string assignment;
    std::string grader;
    std::string gradee;
    double score = 0.0;

    friend bool operator==(const GradeRecord& a, const GradeRecord& b) {
        return a.assignment == b.assignment && a.grader == b.grader &&
               a.gradee == b.gradee && a.score == b.score;
    }
};

// ---------------------------------------------------------------------------
// Identifier interning
// ---------------------------------------------------------------------------

// Opaque string identifiers mapped to dense indices 0..n-1 in
// first-appearance order, so matrix layout does not depend on id formats.
class IdIndex {
public:
    IdIndex() = default;

    int intern(const std::string& id) {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        int idx = static_cast<int>(ids_.size());
        ids_.push_back(id);
        index_.emplace(id, idx);
        return idx;
    }

    /// Returns -1 when the id is unknown.
    int find(const std::string& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }

    const std::string& id(int idx) const { return ids_.at(static_cast<size_t>(idx)); }
    int size() const { return static_cast<int>(ids_.size()); }
    const std::vector<std::string>& ids() const { return ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Edge flows and weights
// ---------------------------------------------------------------------------

namespace detail {
inline std::uint64_t pair_key(int i, int j) {
    int lo = std::min(i, j), hi = std::max(i, j);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(hi));
}
inline std::pair<int, int> key_pair(std::uint64_t k) {
    return {static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu)};
}
} // namespace detail

// Skew-symmetric real function on ordered vertex pairs. Only the (i<j)
// orientation is stored; the mirror value is negated on read, so
// skew-symmetry holds by construction.
class EdgeFlow {
public:
    EdgeFlow() = default;
    explicit EdgeFlow(int n) : n_(n) {}

    int dimension() const { return n_; }

    void set(int i, int j, double v) {
        check_pair(i, j);
        if (i == j) {
            if (v != 0.0) throw ValidationError("diagonal flow value must be 0");
            return;
        }
        entries_[detail::pair_key(i, j)] = (i < j) ? v : -v;
    }

    void add(int i, int j, double v) {
        check_pair(i, j);
        if (i == j) return;
        entries_[detail::pair_key(i, j)] += (i < j) ? v : -v;
    }

    double value(int i, int j) const {
        check_pair(i, j);
        if (i == j) return 0.0;
        auto it = entries_.find(detail::pair_key(i, j));
        if (it == entries_.end()) return 0.0;
        return (i < j) ? it->second : -it->second;
    }

    size_t entry_count() const { return entries_.size(); }

    /// Stored entries (i < j) in ascending (i, j) order.
    std::vector<std::pair<std::pair<int, int>, double>> sorted_entries() const {
        std::vector<std::pair<std::pair<int, int>, double>> out;
        out.reserve(entries_.size());
        for (const auto& [k, v] : entries_) out.push_back({detail::key_pair(k), v});
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    void check_pair(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw ValidationError("vertex index out of range");
    }

    int n_ = 0;
    std::unordered_map<std::uint64_t, double> entries_;
};

// Symmetric nonnegative weights on unordered vertex pairs, zero diagonal.
class WeightMatrix {
public:
    WeightMatrix() = default;
    explicit WeightMatrix(int n) : n_(n) {}

    int dimension() const { return n_; }

    void set(int i, int j, double w) {
        check(i, j, w);
        if (i == j) return;
        entries_[detail::pair_key(i, j)] = w;
    }

    void add(int i, int j, double w) {
        check(i, j, w);
        if (i == j) return;
        entries_[detail::pair_key(i, j)] += w;
    }

    double value(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw ValidationError("vertex index out of range");
        if (i == j) return 0.0;
        auto it = entries_.find(detail::pair_key(i, j));
        return it == entries_.end() ? 0.0 : it->second;
    }

    size_t entry_count() const { return entries_.size(); }

    std::vector<std::pair<std::pair<int, int>, double>> sorted_entries() const {
        std::vector<std::pair<std::pair<int, int>, double>> out;
        out.reserve(entries_.size());
        for (const auto& [k, v] : entries_) out.push_back({detail::key_pair(k), v});
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    void check(int i, int j, double w) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw ValidationError("vertex index out of range");
        if (w < 0.0) throw ValidationError("weights must be nonnegative");
        if (i == j && w != 0.0) throw ValidationError("diagonal weight must be 0");
    }

    int n_ = 0;
    std::unordered_map<std::uint64_t, double> entries_;
};

// ---------------------------------------------------------------------------
// Comparison graph
// ---------------------------------------------------------------------------

// One comparison edge: u < v, weight w > 0, aggregated flow value y on (u,v).
struct Edge {
    int u = 0, v = 0;
    double w = 0.0;
    double y = 0.0;
};

// Students plus aggregated pairwise flow and weights. The edge set is the
// support of the weights; flow values on zero-weight pairs are dropped at
// construction. Immutable after construction.
class ComparisonGraph {
public:
    ComparisonGraph() = default;

    ComparisonGraph(IdIndex students, const EdgeFlow& flow, const WeightMatrix& weights)
        : students_(std::move(students)),
          flow_(students_.size()),
          weights_(students_.size()) {
        const int n = students_.size();
        if (flow.dimension() != n || weights.dimension() != n)
            throw ValidationError("flow/weight dimension does not match vertex count");
        for (const auto& [pair, w] : weights.sorted_entries()) {
            if (w <= 0.0) continue;
            auto [u, v] = pair;
            double y = flow.value(u, v);
            edges_.push_back({u, v, w, y});
            weights_.set(u, v, w);
            flow_.set(u, v, y);
        }
    }

    const IdIndex& students() const { return students_; }
    int size() const { return students_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const EdgeFlow& flow() const { return flow_; }
    const WeightMatrix& weights() const { return weights_; }

private:
    IdIndex students_;
    std::vector<Edge> edges_; // sorted by (u, v)
    EdgeFlow flow_;
    WeightMatrix weights_;
};

// ---------------------------------------------------------------------------
// Ranking results
// ---------------------------------------------------------------------------

enum class Method { hodgerank, cumulative_avg, truncated_avg, peerrank };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::hodgerank: return "hodgerank";
        case Method::cumulative_avg: return "cumulative_avg";
        case Method::truncated_avg: return "truncated_avg";
        case Method::peerrank: return "peerrank";
    }
    return "?";
}

// Potential over students plus per-component labels and inconsistency norms.
// Scores of students flagged `missing` are not meaningful.
struct RankingResult {
    Method method = Method::hodgerank;
    std::vector<std::string> students; // universe order
    std::vector<double> scores;        // aligned with students
    std::vector<int> component_id;     // aligned with students
    int component_count = 1;
    double residual_norm_sq = 0.0;
    double flow_norm_sq = 0.0;
    std::vector<bool> missing;         // aligned; true = no meaningful score
    std::vector<std::string> warnings;
    bool converged = true;

    int size() const { return static_cast<int>(students.size()); }

    int index_of(const std::string& id) const {
        for (size_t i = 0; i < students.size(); ++i)
            if (students[i] == id) return static_cast<int>(i);
        return -1;
    }

    double score_of(const std::string& id) const {
        int i = index_of(id);
        if (i < 0) throw ValidationError("unknown student id: " + id);
        return scores[static_cast<size_t>(i)];
    }

    bool any_missing() const {
        return std::any_of(missing.begin(), missing.end(), [](bool b) { return b; });
    }
};

// Curl of a flow around one 3-clique, oriented by ascending vertex index:
// value = X(i,j) + X(j,k) + X(k,i) for i < j < k.
struct TriangleCurl {
    int i = 0, j = 0, k = 0;
    double curl = 0.0;
};

} // namespace hodgerank
