#ifndef PANELRANK_DELPHI_HPP
#define PANELRANK_DELPHI_HPP

#include <string>
#include <vector>

#include "panelrank/model.hpp"

namespace panelrank {

struct CriterionStats {
    Criterion criterion;
    double mean = 0;
    double std_dev = 0;  // sample, divisor r - 1
    double median = 0;
    int min = 0;
    int max = 0;
};

struct AggregateStats {
    std::vector<CriterionStats> rows;
    LikertScale scale;
};

enum class RankDirection { HigherIsBetter, LowerIsBetter };

AggregateStats aggregate(const RatingMatrix& ratings);

/// MeanAtLeast(t) accepts a criterion iff its mean is >= t. RecordedLabels
/// copies the stored decisions and fails with MissingLabel when one is absent.
ScreeningOutcome screen(const AggregateStats& stats, const ScreeningRule& rule);

/// Ranks the criteria within each expert column; tied scores share the
/// average of the ranks they span, so every column sums to n(n+1)/2.
RankMatrix ratings_to_ranks(const RatingMatrix& ratings, RankDirection direction);

/// Average ranks of one column of values; rank 1 goes to the largest value
/// when `descending` is set.
std::vector<double> average_ranks(const std::vector<double>& values, bool descending);

struct LabelDisagreement {
    std::string code;
    double mean = 0;
    Decision computed = Decision::Accept;
    Decision recorded = Decision::Accept;
};

/// Criteria whose decision under `outcome` differs from the recorded label.
/// Codes without a recorded label are skipped.
std::vector<LabelDisagreement> label_disagreements(const ScreeningOutcome& outcome, const LabelMap& recorded);

}  // namespace panelrank

#endif
