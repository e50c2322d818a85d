#ifndef PANELRANK_PIPELINE_HPP
#define PANELRANK_PIPELINE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "panelrank/concordance.hpp"
#include "panelrank/delphi.hpp"
#include "panelrank/ingest.hpp"
#include "panelrank/report.hpp"
#include "panelrank/swara.hpp"

namespace panelrank {

enum class WeightingMethod { Canonical, FlatK, Extended };

WeightingMethod parse_weighting(std::string_view name);
std::string_view to_string(WeightingMethod m);

struct PipelineConfig {
    ScreeningRule rule = ScreeningRule::mean_at_least(4.0);
    WeightingMethod method = WeightingMethod::Canonical;
    AuditTolerances tolerances;
};

struct PipelineResult {
    ScreeningOutcome screening;
    std::vector<LabelDisagreement> disagreements;  // against bundled reference labels
    std::optional<DiscrepancyReport> screening_audit;
    std::variant<SwaraResult, ExtendedSwaraResult> weights;
    Ranking ranking;
    std::optional<ConcordanceReport> concordance;
    std::vector<std::string> notes;
};

/// Screen, then weight the accepted criteria that carry s-values (or, for the
/// extended method, all accepted criteria ranked from their ratings), then
/// measure rater concordance over the accepted criteria.
PipelineResult run_pipeline(const ProjectBundle& project, const PipelineConfig& config);

std::string render(const PipelineResult& result, Format format);

}  // namespace panelrank

#endif
