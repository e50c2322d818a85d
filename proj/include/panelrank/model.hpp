#ifndef PANELRANK_MODEL_HPP
#define PANELRANK_MODEL_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "panelrank/error.hpp"

namespace panelrank {

struct Criterion {
    std::string code;
    std::string label;
    int ordinal = 0;  // 1-based catalogue position

    bool operator==(const Criterion&) const = default;
};

enum class Education { PhD, Master, Other };

struct ExpertProfile {
    std::string id;
    Education education = Education::Other;
    std::string education_text;  // only meaningful for Education::Other
    int experience_years = 0;

    bool operator==(const ExpertProfile&) const = default;
};

/// "PhD", "Master", or the free text of an Other entry.
std::string education_name(const ExpertProfile& expert);
/// Accepts the printed spellings ("Ph.D.", "MASTER.") as well as the canonical ones.
void parse_education(std::string_view text, ExpertProfile& expert);

/// Unique non-empty codes with ordinals forming 1..n.
void validate_catalogue(std::span<const Criterion> catalogue);
/// Unique non-empty ids and non-negative experience.
void validate_panel(std::span<const ExpertProfile> panel);

class LikertScale {
public:
    LikertScale() = default;
    LikertScale(int min, int max);

    int min() const noexcept { return min_; }
    int max() const noexcept { return max_; }
    bool contains(double v) const noexcept { return v >= min_ && v <= max_; }

    bool operator==(const LikertScale&) const = default;

private:
    int min_ = 1;
    int max_ = 5;
};

/// Criteria x experts Likert scores. Immutable once built.
class RatingMatrix {
public:
    /// Validates shape, ids and scale bounds; throws Error on any violation.
    static RatingMatrix create(std::vector<Criterion> criteria, std::vector<ExpertProfile> experts,
                               LikertScale scale, const std::vector<std::vector<int>>& rows);

    const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
    const std::vector<ExpertProfile>& experts() const noexcept { return experts_; }
    const LikertScale& scale() const noexcept { return scale_; }
    std::size_t n_criteria() const noexcept { return criteria_.size(); }
    std::size_t n_experts() const noexcept { return experts_.size(); }

    int at(std::size_t criterion, std::size_t expert) const { return values_[criterion * experts_.size() + expert]; }
    std::span<const int> row(std::size_t criterion) const {
        return {values_.data() + criterion * experts_.size(), experts_.size()};
    }

    /// Rows in the order given; criteria keep their catalogue ordinals.
    RatingMatrix select_criteria(std::span<const std::size_t> indices) const;
    /// Columns in the order given (repeats allowed, ids are suffixed to stay unique).
    RatingMatrix select_experts(std::span<const std::size_t> indices) const;

    bool operator==(const RatingMatrix&) const = default;

private:
    RatingMatrix() = default;

    std::vector<Criterion> criteria_;
    std::vector<ExpertProfile> experts_;
    LikertScale scale_;
    std::vector<int> values_;
};

/// Criteria x experts rank values t_jk, with average ranks for ties.
/// Rank values are doubles; half-integer average ranks are exact in binary.
class RankMatrix {
public:
    static RankMatrix create(std::vector<Criterion> criteria, std::vector<ExpertProfile> experts,
                             const std::vector<std::vector<double>>& rows);

    const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
    const std::vector<ExpertProfile>& experts() const noexcept { return experts_; }
    std::size_t n() const noexcept { return criteria_.size(); }
    std::size_t r() const noexcept { return experts_.size(); }

    double at(std::size_t criterion, std::size_t expert) const { return values_[criterion * experts_.size() + expert]; }
    std::span<const double> row(std::size_t criterion) const {
        return {values_.data() + criterion * experts_.size(), experts_.size()};
    }
    std::vector<double> column(std::size_t expert) const;

    bool operator==(const RankMatrix&) const = default;

private:
    RankMatrix() = default;

    std::vector<Criterion> criteria_;
    std::vector<ExpertProfile> experts_;
    std::vector<double> values_;
};

enum class Decision { Accept, Reject };

std::string_view to_string(Decision d);
Decision parse_decision(std::string_view text);

using LabelMap = std::map<std::string, Decision>;

struct MeanAtLeast {
    double threshold = 4.0;
};

struct RecordedLabels {
    LabelMap labels;
};

struct ScreeningRule {
    std::variant<MeanAtLeast, RecordedLabels> variant;

    static ScreeningRule mean_at_least(double threshold) { return {MeanAtLeast{threshold}}; }
    static ScreeningRule recorded(LabelMap labels) { return {RecordedLabels{std::move(labels)}}; }

    bool is_threshold() const noexcept { return std::holds_alternative<MeanAtLeast>(variant); }
    std::string describe() const;
};

struct ScreeningRecord {
    Criterion criterion;
    double mean = 0;
    double std_dev = 0;
    double median = 0;
    Decision decision = Decision::Accept;
};

struct ScreeningOutcome {
    std::vector<ScreeningRecord> records;
    LikertScale scale;
    std::string rule_applied;

    std::vector<std::string> accepted_codes() const;
    std::vector<std::string> rejected_codes() const;
};

struct SwaraEntry {
    Criterion criterion;
    double s = 0;

    bool operator==(const SwaraEntry&) const = default;
};

/// Criteria in declared importance order, most important first.
class SwaraInput {
public:
    SwaraInput() = default;
    /// Throws NegativeS for s < 0 or non-finite s, DuplicateId for repeated codes.
    explicit SwaraInput(std::vector<SwaraEntry> entries);

    const std::vector<SwaraEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    bool operator==(const SwaraInput&) const = default;

private:
    std::vector<SwaraEntry> entries_;
};

enum class SwaraVariant { Canonical, FlatK };

std::string_view to_string(SwaraVariant v);

struct SwaraRecord {
    Criterion criterion;
    double s = 0;
    double k = 0;
    double q = 0;
    double w = 0;
};

struct SwaraResult {
    SwaraVariant variant = SwaraVariant::Canonical;
    std::vector<SwaraRecord> records;  // input order
};

struct ExtendedSwaraRecord {
    Criterion criterion;
    double t_bar = 0;
    double q = 0;
    double variance = 0;
    double beta = 0;
};

struct ExtendedSwaraResult {
    std::vector<ExtendedSwaraRecord> records;
};

struct ConcordanceReport {
    double s_statistic = 0;
    std::vector<double> tie_corrections;  // one T_k per expert
    double w = 0;
    std::size_t r = 0;  // raters
    std::size_t n = 0;  // items
};

}  // namespace panelrank

#endif
