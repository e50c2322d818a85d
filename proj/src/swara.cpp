#include "panelrank/swara.hpp"

#include <algorithm>
#include <cmath>

namespace panelrank {

namespace {

constexpr const char* kTieBreak = "catalogue ordinal ascending";

void normalize(SwaraResult& result) {
    double total = 0;
    for (const auto& r : result.records) total += r.q;
    for (auto& r : result.records) r.w = r.q / total;
}

void require_input(const SwaraInput& input) {
    if (input.empty()) throw Error(ErrorCode::EmptyInput, "no criteria to weight");
}

Ranking sorted(std::string key, std::vector<RankedCriterion> entries, bool descending) {
    std::sort(entries.begin(), entries.end(), [descending](const RankedCriterion& a, const RankedCriterion& b) {
        if (a.score != b.score) return descending ? a.score > b.score : a.score < b.score;
        return a.criterion.ordinal < b.criterion.ordinal;
    });
    return {std::move(key), kTieBreak, std::move(entries)};
}

}  // namespace

SwaraResult swara_canonical(const SwaraInput& input) {
    require_input(input);
    SwaraResult result{SwaraVariant::Canonical, {}};
    double q = 1;
    for (std::size_t j = 0; j < input.size(); ++j) {
        const auto& e = input.entries()[j];
        const double k = j == 0 ? 1.0 : e.s + 1.0;
        if (j > 0) q /= k;
        result.records.push_back({e.criterion, e.s, k, q, 0});
    }
    normalize(result);
    return result;
}

SwaraResult swara_flat_k(const SwaraInput& input) {
    require_input(input);
    SwaraResult result{SwaraVariant::FlatK, {}};
    for (const auto& e : input.entries()) {
        const double k = e.s + 1.0;
        result.records.push_back({e.criterion, e.s, k, k, 0});
    }
    normalize(result);
    return result;
}

SwaraResult swara(const SwaraInput& input, SwaraVariant variant) {
    return variant == SwaraVariant::Canonical ? swara_canonical(input) : swara_flat_k(input);
}

ExtendedSwaraResult swara_extended(const RankMatrix& ranks) {
    const std::size_t r = ranks.r();
    if (r < 2) throw Error(ErrorCode::SingleRater, "rank variance needs at least 2 raters");

    ExtendedSwaraResult result;
    double total = 0;
    for (std::size_t j = 0; j < ranks.n(); ++j) {
        auto row = ranks.row(j);
        double sum = 0;
        for (double t : row) sum += t;
        const double t_bar = sum / static_cast<double>(r);
        double ss = 0;
        for (double t : row) ss += (t - t_bar) * (t - t_bar);
        const double variance = ss / static_cast<double>(r - 1);
        result.records.push_back({ranks.criteria()[j], t_bar, 0, variance, std::sqrt(variance) / t_bar});
        total += t_bar;
    }
    for (auto& rec : result.records) rec.q = rec.t_bar / total;
    return result;
}

Ranking rank_by_weight(const SwaraResult& result) {
    std::vector<RankedCriterion> entries;
    for (const auto& r : result.records) entries.push_back({r.criterion, r.w});
    return sorted("w descending", std::move(entries), true);
}

Ranking rank_by_weight(const ExtendedSwaraResult& result) {
    std::vector<RankedCriterion> entries;
    for (const auto& r : result.records) entries.push_back({r.criterion, r.t_bar});
    return sorted("t_bar ascending", std::move(entries), false);
}

}  // namespace panelrank
