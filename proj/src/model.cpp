#include "panelrank/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace panelrank {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

void check_criteria(std::span<const Criterion> criteria) {
    std::set<std::string_view> seen;
    for (const auto& c : criteria) {
        if (c.code.empty())
            throw Error(ErrorCode::EmptyId, "criterion at ordinal " + std::to_string(c.ordinal) + " has an empty code");
        if (!seen.insert(c.code).second)
            throw Error(ErrorCode::DuplicateId, "criterion code '" + c.code + "' repeated");
    }
}

}  // namespace

std::string education_name(const ExpertProfile& expert) {
    switch (expert.education) {
    case Education::PhD: return "PhD";
    case Education::Master: return "Master";
    case Education::Other: return expert.education_text;
    }
    return expert.education_text;
}

void parse_education(std::string_view text, ExpertProfile& expert) {
    std::string key;
    for (char c : lower(text))
        if (c != '.' && c != ' ') key.push_back(c);
    if (key == "phd") {
        expert.education = Education::PhD;
        expert.education_text.clear();
    } else if (key == "master" || key == "masters") {
        expert.education = Education::Master;
        expert.education_text.clear();
    } else {
        expert.education = Education::Other;
        expert.education_text = std::string(text);
    }
}

void validate_catalogue(std::span<const Criterion> catalogue) {
    check_criteria(catalogue);
    std::vector<int> ordinals;
    for (const auto& c : catalogue) ordinals.push_back(c.ordinal);
    std::sort(ordinals.begin(), ordinals.end());
    for (std::size_t i = 0; i < ordinals.size(); ++i)
        if (ordinals[i] != static_cast<int>(i) + 1)
            throw Error(ErrorCode::InvalidCatalogue, "ordinals must form the sequence 1.." + std::to_string(ordinals.size()));
}

void validate_panel(std::span<const ExpertProfile> panel) {
    std::set<std::string_view> seen;
    for (const auto& e : panel) {
        if (e.id.empty()) throw Error(ErrorCode::EmptyId, "expert with empty id");
        if (!seen.insert(e.id).second) throw Error(ErrorCode::DuplicateId, "expert id '" + e.id + "' repeated");
        if (e.experience_years < 0)
            throw Error(ErrorCode::NegativeExperience, "expert '" + e.id + "' has negative experience");
    }
}

LikertScale::LikertScale(int min, int max) : min_(min), max_(max) {
    if (min >= max)
        throw Error(ErrorCode::InvalidScale,
                    "scale minimum " + std::to_string(min) + " must be below maximum " + std::to_string(max));
}

RatingMatrix RatingMatrix::create(std::vector<Criterion> criteria, std::vector<ExpertProfile> experts,
                                  LikertScale scale, const std::vector<std::vector<int>>& rows) {
    check_criteria(criteria);
    validate_panel(experts);
    if (experts.size() < 2)
        throw Error(ErrorCode::TooFewExperts, "at least 2 experts required, got " + std::to_string(experts.size()));
    if (criteria.empty()) throw Error(ErrorCode::TooFewCriteria, "no criteria");
    if (rows.size() != criteria.size())
        throw Error(ErrorCode::RaggedGrid, std::to_string(rows.size()) + " rows for " +
                                               std::to_string(criteria.size()) + " criteria");

    RatingMatrix m;
    m.values_.reserve(criteria.size() * experts.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != experts.size())
            throw Error(ErrorCode::RaggedGrid, "row '" + criteria[j].code + "' has " + std::to_string(rows[j].size()) +
                                                   " cells, expected " + std::to_string(experts.size()));
        for (std::size_t k = 0; k < rows[j].size(); ++k) {
            int v = rows[j][k];
            if (v < scale.min() || v > scale.max())
                throw Error(ErrorCode::OutOfScale,
                            "value " + std::to_string(v) + " at (" + criteria[j].code + ", " + experts[k].id +
                                ") outside [" + std::to_string(scale.min()) + ", " + std::to_string(scale.max()) + "]",
                            CellRef{criteria[j].code, experts[k].id});
            m.values_.push_back(v);
        }
    }
    m.criteria_ = std::move(criteria);
    m.experts_ = std::move(experts);
    m.scale_ = scale;
    return m;
}

RatingMatrix RatingMatrix::select_criteria(std::span<const std::size_t> indices) const {
    std::vector<Criterion> crit;
    std::vector<std::vector<int>> rows;
    for (auto j : indices) {
        crit.push_back(criteria_.at(j));
        auto r = row(j);
        rows.emplace_back(r.begin(), r.end());
    }
    return create(std::move(crit), experts_, scale_, rows);
}

RatingMatrix RatingMatrix::select_experts(std::span<const std::size_t> indices) const {
    std::vector<ExpertProfile> panel;
    std::map<std::size_t, int> uses;
    for (auto k : indices) {
        ExpertProfile e = experts_.at(k);
        int n = ++uses[k];
        if (n > 1) e.id += "#" + std::to_string(n);
        panel.push_back(std::move(e));
    }
    std::vector<std::vector<int>> rows(criteria_.size());
    for (std::size_t j = 0; j < criteria_.size(); ++j)
        for (auto k : indices) rows[j].push_back(at(j, k));
    return create(criteria_, std::move(panel), scale_, rows);
}

RankMatrix RankMatrix::create(std::vector<Criterion> criteria, std::vector<ExpertProfile> experts,
                              const std::vector<std::vector<double>>& rows) {
    check_criteria(criteria);
    validate_panel(experts);
    if (experts.size() < 2)
        throw Error(ErrorCode::TooFewExperts, "at least 2 raters required, got " + std::to_string(experts.size()));
    if (criteria.empty()) throw Error(ErrorCode::TooFewCriteria, "no criteria");
    if (rows.size() != criteria.size())
        throw Error(ErrorCode::RaggedGrid, std::to_string(rows.size()) + " rows for " +
                                               std::to_string(criteria.size()) + " criteria");

    const std::size_t n = criteria.size();
    const std::size_t r = experts.size();
    RankMatrix m;
    m.values_.reserve(n * r);
    for (std::size_t j = 0; j < n; ++j) {
        if (rows[j].size() != r)
            throw Error(ErrorCode::RaggedGrid, "row '" + criteria[j].code + "' has " + std::to_string(rows[j].size()) +
                                                   " cells, expected " + std::to_string(r));
        for (std::size_t k = 0; k < r; ++k) {
            double t = rows[j][k];
            if (!std::isfinite(t) || t <= 0)
                throw Error(ErrorCode::NonPositiveRank,
                            "rank at (" + criteria[j].code + ", " + experts[k].id + ") must be positive",
                            CellRef{criteria[j].code, experts[k].id});
            m.values_.push_back(t);
        }
    }

    const double expected = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    for (std::size_t k = 0; k < r; ++k) {
        double sum = 0;
        for (std::size_t j = 0; j < n; ++j) sum += m.values_[j * r + k];
        if (std::abs(sum - expected) > 1e-9 * expected)
            throw Error(ErrorCode::InvalidRanking, "ranks of '" + experts[k].id + "' sum to " + std::to_string(sum) +
                                                       ", expected " + std::to_string(expected));
    }
    m.criteria_ = std::move(criteria);
    m.experts_ = std::move(experts);
    return m;
}

std::vector<double> RankMatrix::column(std::size_t expert) const {
    std::vector<double> col(n());
    for (std::size_t j = 0; j < n(); ++j) col[j] = at(j, expert);
    return col;
}

std::string_view to_string(Decision d) { return d == Decision::Accept ? "Accept" : "Reject"; }

Decision parse_decision(std::string_view text) {
    auto key = lower(text);
    if (key == "accept") return Decision::Accept;
    if (key == "reject") return Decision::Reject;
    throw Error(ErrorCode::SchemaError, "decision must be accept or reject, got '" + std::string(text) + "'");
}

std::string ScreeningRule::describe() const {
    if (auto* m = std::get_if<MeanAtLeast>(&variant)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "MeanAtLeast(%g)", m->threshold);
        return buf;
    }
    return "RecordedLabels";
}

std::vector<std::string> ScreeningOutcome::accepted_codes() const {
    std::vector<std::string> out;
    for (const auto& r : records)
        if (r.decision == Decision::Accept) out.push_back(r.criterion.code);
    return out;
}

std::vector<std::string> ScreeningOutcome::rejected_codes() const {
    std::vector<std::string> out;
    for (const auto& r : records)
        if (r.decision == Decision::Reject) out.push_back(r.criterion.code);
    return out;
}

SwaraInput::SwaraInput(std::vector<SwaraEntry> entries) : entries_(std::move(entries)) {
    std::set<std::string_view> seen;
    for (const auto& e : entries_) {
        if (!std::isfinite(e.s) || e.s < 0)
            throw Error(ErrorCode::NegativeS, "s for '" + e.criterion.code + "' must be a finite value >= 0");
        if (!seen.insert(e.criterion.code).second)
            throw Error(ErrorCode::DuplicateId, "criterion code '" + e.criterion.code + "' repeated in s-values");
    }
}

std::string_view to_string(SwaraVariant v) { return v == SwaraVariant::Canonical ? "canonical" : "flat-k"; }

}  // namespace panelrank
