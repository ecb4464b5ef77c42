#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "hodgerank/core.hpp"
#include "hodgerank/rng.hpp"

namespace hodgerank {

// ---------------------------------------------------------------------------
// Cohort configuration
// ---------------------------------------------------------------------------

// Per-student ground truth for a simulated course: latent quality plus an
// additive per-grader bias and Gaussian per-grader noise. The additive model
// is an assumption, not an observed law; it is what makes difference-based
// ranking provably bias-free while plain averages are not.
struct SyntheticCohort {
    int n_students = 133;
    int n_assignments = 13;
    int reviews_per_student = 5;
    std::uint64_t seed = 42;
    ScoreScale scale;

    std::vector<double> true_quality;    // per student, in scale units
    std::vector<double> grader_bias;     // per student, additive points
    std::vector<double> grader_noise_sd; // per student, >= 0

    std::string student_id(int i) const {
        char buf[24];
        std::snprintf(buf, sizeof buf, "s%03d", i + 1);
        return buf;
    }
    std::string assignment_id(int a) const {
        char buf[24];
        std::snprintf(buf, sizeof buf, "a%02d", a + 1);
        return buf;
    }

    void validate() const {
        if (n_students < 2) throw ValidationError("cohort needs at least 2 students");
        if (n_assignments < 1) throw ValidationError("cohort needs at least 1 assignment");
        if (reviews_per_student < 1 || reviews_per_student >= n_students)
            throw ValidationError("reviews_per_student must be in [1, n_students)");
        if (static_cast<int>(true_quality.size()) != n_students ||
            static_cast<int>(grader_bias.size()) != n_students ||
            static_cast<int>(grader_noise_sd.size()) != n_students)
            throw ValidationError("cohort parameter vectors must have one entry per student");
        for (double sd : grader_noise_sd)
            if (sd < 0.0) throw ValidationError("noise sd must be >= 0");
        if (scale.span() <= 0.0) throw ValidationError("empty score scale");
    }
};

struct QualitySpec {
    enum class Dist { uniform, topheavy };
    Dist dist = Dist::uniform;
    double lo = 30.0;
    double hi = 70.0;
};

struct BiasSpec {
    enum class Dist { none, normal, uniform };
    Dist dist = Dist::none;
    double sd = 0.0; // normal: standard deviation
    double lo = 0.0; // uniform: [lo, hi]
    double hi = 0.0;
};

struct CohortConfig {
    int n_students = 133;
    int n_assignments = 13;
    int reviews_per_student = 5;
    std::uint64_t seed = 42;
    ScoreScale scale;
    QualitySpec quality;
    BiasSpec bias;
    double noise_sd = 0.0; // same Gaussian sd for every grader
};

// Draw streams. Quality/bias/noise parameters and the review choices live on
// separate streams so changing one leaves the others' draws untouched.
namespace synth_streams {
inline constexpr std::uint64_t quality = 1;
inline constexpr std::uint64_t bias = 2;
inline constexpr std::uint64_t choice = 3;
inline constexpr std::uint64_t noise = 4;
} // namespace synth_streams

/// Materializes per-student quality/bias/noise vectors from the config.
inline SyntheticCohort make_cohort(const CohortConfig& cfg) {
    SyntheticCohort c;
    c.n_students = cfg.n_students;
    c.n_assignments = cfg.n_assignments;
    c.reviews_per_student = cfg.reviews_per_student;
    c.seed = cfg.seed;
    c.scale = cfg.scale;

    CounterRng rng(cfg.seed);
    c.true_quality.resize(static_cast<size_t>(cfg.n_students));
    c.grader_bias.resize(static_cast<size_t>(cfg.n_students));
    c.grader_noise_sd.assign(static_cast<size_t>(cfg.n_students), cfg.noise_sd);
    for (int i = 0; i < cfg.n_students; ++i) {
        double u = rng.uniform(synth_streams::quality, static_cast<std::uint64_t>(i));
        double x = (cfg.quality.dist == QualitySpec::Dist::topheavy) ? std::cbrt(u) : u;
        c.true_quality[static_cast<size_t>(i)] = cfg.quality.lo + (cfg.quality.hi - cfg.quality.lo) * x;

        double b = 0.0;
        switch (cfg.bias.dist) {
            case BiasSpec::Dist::none: break;
            case BiasSpec::Dist::normal:
                b = cfg.bias.sd * rng.normal(synth_streams::bias, static_cast<std::uint64_t>(i));
                break;
            case BiasSpec::Dist::uniform:
                b = cfg.bias.lo + (cfg.bias.hi - cfg.bias.lo) *
                                      rng.uniform(synth_streams::bias, static_cast<std::uint64_t>(i));
                break;
        }
        c.grader_bias[static_cast<size_t>(i)] = b;
    }
    c.validate();
    return c;
}

// Generates one semester of grading events. Draw order is fixed:
// assignment-major, grader-minor, review slot innermost. Each grader reviews
// `reviews_per_student` distinct peers per assignment (never themselves),
// chosen uniformly without replacement; the score is the gradee's quality
// plus the grader's bias plus Gaussian noise, clamped to the scale.
inline std::vector<GradeRecord> generate(const SyntheticCohort& cohort) {
    cohort.validate();
    CounterRng rng(cohort.seed);
    const int n = cohort.n_students;
    const int k = cohort.reviews_per_student;

    std::vector<GradeRecord> records;
    records.reserve(static_cast<size_t>(n) * k * cohort.n_assignments);

    std::vector<std::string> sid(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) sid[static_cast<size_t>(i)] = cohort.student_id(i);

    std::vector<int> candidates(static_cast<size_t>(n) - 1);
    for (int a = 0; a < cohort.n_assignments; ++a) {
        std::string aid = cohort.assignment_id(a);
        for (int g = 0; g < n; ++g) {
            int pos = 0;
            for (int i = 0; i < n; ++i)
                if (i != g) candidates[static_cast<size_t>(pos++)] = i;

            std::uint64_t base =
                (static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
                 static_cast<std::uint64_t>(g)) *
                static_cast<std::uint64_t>(k);
            for (int slot = 0; slot < k; ++slot) {
                std::uint64_t remaining = static_cast<std::uint64_t>(n - 1 - slot);
                std::uint64_t pick = static_cast<std::uint64_t>(slot) +
                                     rng.below(synth_streams::choice, base + slot, remaining);
                std::swap(candidates[static_cast<size_t>(slot)], candidates[static_cast<size_t>(pick)]);
                int gradee = candidates[static_cast<size_t>(slot)];

                double score = cohort.true_quality[static_cast<size_t>(gradee)] +
                               cohort.grader_bias[static_cast<size_t>(g)];
                double sd = cohort.grader_noise_sd[static_cast<size_t>(g)];
                if (sd > 0.0) score += sd * rng.normal(synth_streams::noise, base + slot);
                records.push_back({aid, sid[static_cast<size_t>(g)], sid[static_cast<size_t>(gradee)],
                                   cohort.scale.clamp(score)});
            }
        }
    }
    return records;
}

// ---------------------------------------------------------------------------
// Kendall tau-b
// ---------------------------------------------------------------------------

/// Kendall tau-b between two score vectors over the same students:
/// (concordant - discordant) / sqrt((n0 - t_a) * (n0 - t_b)) with the usual
/// tie corrections. Quadratic pair scan; fine for cohort-sized inputs.
inline double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw ValidationError("kendall_tau requires equally sized rankings");
    const size_t n = a.size();
    if (n < 2) throw ValidationError("kendall_tau requires at least 2 students");

    long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0, ties_both = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double da = a[i] - a[j];
            double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) ++ties_both;
            else if (da == 0.0) ++ties_a;
            else if (db == 0.0) ++ties_b;
            else if (da * db > 0.0) ++concordant;
            else ++discordant;
        }
    }
    double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    double denom_a = n0 - static_cast<double>(ties_a) - static_cast<double>(ties_both);
    double denom_b = n0 - static_cast<double>(ties_b) - static_cast<double>(ties_both);
    if (denom_a <= 0.0 || denom_b <= 0.0)
        throw ValidationError("kendall_tau undefined: a ranking is entirely tied");
    return static_cast<double>(concordant - discordant) / std::sqrt(denom_a * denom_b);
}

/// Tau-b of a ranking against a reference keyed by student id. Students
/// missing from the reference are an error; flagged-missing scores are too.
inline double kendall_tau(const RankingResult& ranking,
                          const std::vector<std::pair<std::string, double>>& reference) {
    std::vector<double> a, b;
    a.reserve(reference.size());
    b.reserve(reference.size());
    for (const auto& [id, value] : reference) {
        int idx = ranking.index_of(id);
        if (idx < 0) throw ValidationError("reference student not in ranking: " + id);
        if (ranking.missing[static_cast<size_t>(idx)])
            throw ValidationError("score missing for student: " + id);
        a.push_back(ranking.scores[static_cast<size_t>(idx)]);
        b.push_back(value);
    }
    return kendall_tau(a, b);
}

} // namespace hodgerank
