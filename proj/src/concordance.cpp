#include "panelrank/concordance.hpp"

#include <algorithm>
#include <string>

namespace panelrank {

namespace {

double tie_term(std::vector<double> column) {
    std::sort(column.begin(), column.end());
    double total = 0;
    for (std::size_t i = 0; i < column.size();) {
        std::size_t end = i + 1;
        while (end < column.size() && column[end] == column[i]) ++end;
        const double g = static_cast<double>(end - i);
        total += g * g * g - g;
        i = end;
    }
    return total;
}

bool has_ties(std::vector<double> column) {
    std::sort(column.begin(), column.end());
    return std::adjacent_find(column.begin(), column.end()) != column.end();
}

}  // namespace

ConcordanceReport kendalls_w(const RankMatrix& ranks, TieCorrection ties) {
    const std::size_t n = ranks.n();
    const std::size_t r = ranks.r();
    if (n < 2) throw Error(ErrorCode::TooFewCriteria, "concordance needs at least 2 items, got " + std::to_string(n));

    ConcordanceReport report;
    report.n = n;
    report.r = r;

    std::vector<double> row_sums(n, 0.0);
    double grand = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (double t : ranks.row(j)) row_sums[j] += t;
        grand += row_sums[j];
    }
    const double mean_sum = grand / static_cast<double>(n);
    for (double R : row_sums) report.s_statistic += (R - mean_sum) * (R - mean_sum);

    double tie_total = 0;
    for (std::size_t k = 0; k < r; ++k) {
        const double t = tie_term(ranks.column(k));
        report.tie_corrections.push_back(t);
        if (ties == TieCorrection::Apply) tie_total += t;
    }

    const double nd = static_cast<double>(n);
    const double rd = static_cast<double>(r);
    const double denominator = rd * rd * (nd * nd * nd - nd) - rd * tie_total;
    // Denominator is an integer combination of exact values; compare to a
    // scale-relative epsilon rather than exactly zero.
    if (denominator <= 1e-12 * rd * rd * (nd * nd * nd - nd))
        throw Error(ErrorCode::DegenerateDenominator, "every rater ties every item; W is undefined");
    // Only rounding overshoot is snapped; a real excursion stays visible.
    const double w = 12.0 * report.s_statistic / denominator;
    report.w = (w > 1.0 && w <= 1.0 + 1e-9) ? 1.0 : w;
    return report;
}

double mean_pairwise_spearman(const RankMatrix& ranks) {
    const std::size_t n = ranks.n();
    const std::size_t r = ranks.r();
    std::vector<std::vector<double>> cols;
    for (std::size_t k = 0; k < r; ++k) {
        cols.push_back(ranks.column(k));
        if (has_ties(cols.back()))
            throw Error(ErrorCode::TiesPresent, "ranking of '" + ranks.experts()[k].id + "' contains ties");
    }
    if (n < 2) throw Error(ErrorCode::TooFewCriteria, "correlation needs at least 2 items");

    const double nd = static_cast<double>(n);
    double total = 0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b) {
            double d2 = 0;
            for (std::size_t j = 0; j < n; ++j) d2 += (cols[a][j] - cols[b][j]) * (cols[a][j] - cols[b][j]);
            total += 1.0 - 6.0 * d2 / (nd * (nd * nd - 1.0));
            ++pairs;
        }
    return total / static_cast<double>(pairs);
}

}  // namespace panelrank
