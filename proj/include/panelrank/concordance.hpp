#ifndef PANELRANK_CONCORDANCE_HPP
#define PANELRANK_CONCORDANCE_HPP

#include "panelrank/model.hpp"

namespace panelrank {

enum class TieCorrection { Apply, Ignore };

/// Kendall's coefficient of concordance for r raters ranking n items.
///
///   R_j = sum_k t_jk,  S = sum_j (R_j - mean(R))^2
///   T_k = sum over tie groups g of expert k: |g|^3 - |g|
///   W   = 12 S / (r^2 (n^3 - n) - r sum_k T_k)
///
/// Throws DegenerateDenominator when every rater ties every item.
ConcordanceReport kendalls_w(const RankMatrix& ranks, TieCorrection ties = TieCorrection::Apply);

/// Average Spearman correlation over all rater pairs. Only defined for
/// tie-free rankings, where W = ((r - 1) rho + 1) / r.
double mean_pairwise_spearman(const RankMatrix& ranks);

}  // namespace panelrank

#endif
