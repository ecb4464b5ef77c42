#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hodgerank/core.hpp"

namespace hodgerank {

enum class RecordFormat { csv, json };

// Outcome of parsing one input: every data row is either accepted or listed
// with a reason; nothing is dropped silently.
struct IngestReport {
    int accepted = 0;
    int rejected = 0;
    std::vector<std::pair<int, std::string>> rejection_reasons; // (line, reason)

    void reject(int line, std::string reason) {
        ++rejected;
        rejection_reasons.push_back({line, std::move(reason)});
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline bool parse_score(const std::string& text, double& out) {
    if (text.empty()) return false;
    try {
        size_t pos = 0;
        out = std::stod(text, &pos);
        return pos == text.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

// Validates one candidate row; returns false with a reason on rejection.
inline bool validate_row(const std::string& assignment, const std::string& grader,
                         const std::string& gradee, const std::string& score_text,
                         const ScoreScale& scale, GradeRecord& rec, std::string& reason) {
    if (assignment.empty() || grader.empty() || gradee.empty()) {
        reason = "missing field";
        return false;
    }
    double score = 0.0;
    if (!parse_score(score_text, score)) {
        reason = "non-numeric score";
        return false;
    }
    if (!scale.contains(score)) {
        reason = "score out of range " + scale.to_string();
        return false;
    }
    if (grader == gradee) {
        reason = "self-grade";
        return false;
    }
    rec = {assignment, grader, gradee, score};
    return true;
}

// Resubmission semantics: keep only the last occurrence of each
// (assignment, grader, gradee) triple, rejecting the superseded rows.
inline std::vector<GradeRecord> dedupe_keep_last(
    std::vector<std::pair<int, GradeRecord>> rows, IngestReport& report) {
    std::map<std::tuple<std::string, std::string, std::string>, int> last;
    for (const auto& [line, rec] : rows)
        last[{rec.assignment, rec.grader, rec.gradee}] = line;

    std::vector<GradeRecord> out;
    out.reserve(rows.size());
    for (auto& [line, rec] : rows) {
        if (last[{rec.assignment, rec.grader, rec.gradee}] != line) {
            report.reject(line, "duplicate (assignment, grader, gradee) superseded by a later row");
        } else {
            ++report.accepted;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

} // namespace detail

inline const std::string kCsvHeader = "assignment_id,grader_id,gradee_id,score";

/// Parses CSV grade records. Header line required; LF or CRLF; identifiers
/// are trimmed of surrounding whitespace; invalid rows are reported, valid
/// row order is preserved.
inline std::pair<std::vector<GradeRecord>, IngestReport> parse_csv(std::istream& in,
                                                                   const ScoreScale& scale = {}) {
    if (!in) throw ValidationError("unreadable input stream");
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty input: missing CSV header");
    if (detail::trim(line) != kCsvHeader)
        throw ValidationError("bad CSV header, expected: " + kCsvHeader);

    IngestReport report;
    std::vector<std::pair<int, GradeRecord>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;

        std::vector<std::string> fields;
        size_t start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() < 4) {
            report.reject(line_no, "missing field");
            continue;
        }
        if (fields.size() > 4) {
            report.reject(line_no, "too many fields");
            continue;
        }
        GradeRecord rec;
        std::string reason;
        if (!detail::validate_row(detail::trim(fields[0]), detail::trim(fields[1]),
                                  detail::trim(fields[2]), detail::trim(fields[3]), scale, rec,
                                  reason)) {
            report.reject(line_no, reason);
            continue;
        }
        rows.push_back({line_no, std::move(rec)});
    }
    auto records = detail::dedupe_keep_last(std::move(rows), report);
    return {std::move(records), std::move(report)};
}

/// Parses a JSON array of objects with the same four keys as the CSV format.
/// The reported "line" is the 1-based array position.
inline std::pair<std::vector<GradeRecord>, IngestReport> parse_json(std::istream& in,
                                                                    const ScoreScale& scale = {}) {
    if (!in) throw ValidationError("unreadable input stream");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ValidationError("JSON input must be an array of records");

    IngestReport report;
    std::vector<std::pair<int, GradeRecord>> rows;
    int pos = 0;
    for (const auto& item : doc) {
        ++pos;
        if (!item.is_object()) {
            report.reject(pos, "missing field");
            continue;
        }
        auto text = [&](const char* key) -> std::string {
            if (!item.contains(key)) return "";
            const auto& v = item.at(key);
            return v.is_string() ? detail::trim(v.get<std::string>()) : "";
        };
        std::string score_text;
        if (item.contains("score")) {
            const auto& v = item.at("score");
            if (v.is_number()) score_text = fmt_double(v.get<double>());
            else if (v.is_string()) score_text = detail::trim(v.get<std::string>());
        }
        GradeRecord rec;
        std::string reason;
        if (!detail::validate_row(text("assignment_id"), text("grader_id"), text("gradee_id"),
                                  score_text, scale, rec, reason)) {
            report.reject(pos, reason);
            continue;
        }
        rows.push_back({pos, std::move(rec)});
    }
    auto records = detail::dedupe_keep_last(std::move(rows), report);
    return {std::move(records), std::move(report)};
}

inline std::pair<std::vector<GradeRecord>, IngestReport> parse_records(
    std::istream& in, RecordFormat format, const ScoreScale& scale = {}) {
    return format == RecordFormat::csv ? parse_csv(in, scale) : parse_json(in, scale);
}

/// Writes records in the ingest CSV schema (LF line endings, shortest
/// round-trip score formatting), so write -> parse is the identity.
inline void write_csv(const std::vector<GradeRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : records)
        out << r.assignment << ',' << r.grader << ',' << r.gradee << ',' << fmt_double(r.score)
            << '\n';
}

} // namespace hodgerank
