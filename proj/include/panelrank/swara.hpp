#ifndef PANELRANK_SWARA_HPP
#define PANELRANK_SWARA_HPP

#include <string>
#include <vector>

#include "panelrank/model.hpp"

namespace panelrank {

/// Stepwise weight assessment. Criteria arrive most important first with
/// s_j the drop in importance from the predecessor.
///
///   k_1 = 1,  k_j = s_j + 1
///   q_1 = 1,  q_j = q_{j-1} / k_j
///   w_j = q_j / sum(q)
///
/// The first entry's s is carried through to the result but not used.
SwaraResult swara_canonical(const SwaraInput& input);

/// Single-step variant used by the published weight table: every row,
/// including the first, gets k_j = s_j + 1 and w_j = k_j / sum(k).
SwaraResult swara_flat_k(const SwaraInput& input);

SwaraResult swara(const SwaraInput& input, SwaraVariant variant);

/// Rank-based extension. With t_jk the rank of criterion j by expert k:
///
///   t_bar_j   = mean_k t_jk
///   q_j       = t_bar_j / sum_j t_bar_j
///   sigma^2_j = sum_k (t_jk - t_bar_j)^2 / (r - 1)
///   beta_j    = sigma_j / t_bar_j
///
/// Rank 1 is the most important, so a larger q_j is a worse average rank
/// ("rank mass"), not a larger weight.
ExtendedSwaraResult swara_extended(const RankMatrix& ranks);

struct RankedCriterion {
    Criterion criterion;
    double score = 0;
};

struct Ranking {
    std::string key;        // what was sorted, e.g. "w descending"
    std::string tie_break;  // always catalogue ordinal ascending
    std::vector<RankedCriterion> entries;
};

/// Most important first: weight descending for SWARA results, average rank
/// ascending for extended results. Exact ties fall back to catalogue ordinal.
Ranking rank_by_weight(const SwaraResult& result);
Ranking rank_by_weight(const ExtendedSwaraResult& result);

}  // namespace panelrank

#endif
