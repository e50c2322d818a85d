#include "panelrank/delphi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace panelrank {

AggregateStats aggregate(const RatingMatrix& ratings) {
    AggregateStats out;
    out.scale = ratings.scale();
    const auto r = static_cast<double>(ratings.n_experts());
    for (std::size_t j = 0; j < ratings.n_criteria(); ++j) {
        auto row = ratings.row(j);
        // Integer sum keeps the mean exact up to the final division.
        long long total = std::accumulate(row.begin(), row.end(), 0LL);
        CriterionStats s;
        s.criterion = ratings.criteria()[j];
        s.mean = static_cast<double>(total) / r;
        double ss = 0;
        for (int v : row) ss += (v - s.mean) * (v - s.mean);
        s.std_dev = std::sqrt(ss / (r - 1));

        std::vector<int> sorted(row.begin(), row.end());
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        s.median = m % 2 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
        s.min = sorted.front();
        s.max = sorted.back();
        out.rows.push_back(std::move(s));
    }
    return out;
}

ScreeningOutcome screen(const AggregateStats& stats, const ScreeningRule& rule) {
    ScreeningOutcome out;
    out.scale = stats.scale;
    out.rule_applied = rule.describe();

    if (const auto* m = std::get_if<MeanAtLeast>(&rule.variant)) {
        if (!std::isfinite(m->threshold) || !stats.scale.contains(m->threshold))
            throw Error(ErrorCode::ThresholdOutOfScale, "threshold " + std::to_string(m->threshold) + " outside [" +
                                                            std::to_string(stats.scale.min()) + ", " +
                                                            std::to_string(stats.scale.max()) + "]");
    }
    const auto* labels = std::get_if<RecordedLabels>(&rule.variant);

    for (const auto& s : stats.rows) {
        ScreeningRecord rec{s.criterion, s.mean, s.std_dev, s.median, Decision::Accept};
        if (labels) {
            auto it = labels->labels.find(s.criterion.code);
            if (it == labels->labels.end())
                throw Error(ErrorCode::MissingLabel, "no recorded label for '" + s.criterion.code + "'");
            rec.decision = it->second;
        } else {
            rec.decision = s.mean >= std::get<MeanAtLeast>(rule.variant).threshold ? Decision::Accept : Decision::Reject;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::vector<double> average_ranks(const std::vector<double>& values, bool descending) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return descending ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t end = i + 1;
        while (end < n && values[order[end]] == values[order[i]]) ++end;
        // positions i..end-1 hold ranks i+1..end
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t p = i; p < end; ++p) ranks[order[p]] = rank;
        i = end;
    }
    return ranks;
}

RankMatrix ratings_to_ranks(const RatingMatrix& ratings, RankDirection direction) {
    const std::size_t n = ratings.n_criteria();
    std::vector<std::vector<double>> rows(n, std::vector<double>(ratings.n_experts()));
    for (std::size_t k = 0; k < ratings.n_experts(); ++k) {
        std::vector<double> col(n);
        for (std::size_t j = 0; j < n; ++j) col[j] = ratings.at(j, k);
        auto ranks = average_ranks(col, direction == RankDirection::HigherIsBetter);
        for (std::size_t j = 0; j < n; ++j) rows[j][k] = ranks[j];
    }
    return RankMatrix::create(ratings.criteria(), ratings.experts(), rows);
}

std::vector<LabelDisagreement> label_disagreements(const ScreeningOutcome& outcome, const LabelMap& recorded) {
    std::vector<LabelDisagreement> out;
    for (const auto& rec : outcome.records) {
        auto it = recorded.find(rec.criterion.code);
        if (it != recorded.end() && it->second != rec.decision)
            out.push_back({rec.criterion.code, rec.mean, rec.decision, it->second});
    }
    return out;
}

}  // namespace panelrank
