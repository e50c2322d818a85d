#include "panelrank/pipeline.hpp"

#include <set>

#include <json.hpp>

namespace panelrank {

WeightingMethod parse_weighting(std::string_view name) {
    if (name == "canonical") return WeightingMethod::Canonical;
    if (name == "flat-k") return WeightingMethod::FlatK;
    if (name == "extended") return WeightingMethod::Extended;
    throw Error(ErrorCode::InvalidArgument, "unknown variant '" + std::string(name) + "' (canonical, flat-k, extended)");
}

std::string_view to_string(WeightingMethod m) {
    switch (m) {
    case WeightingMethod::Canonical: return "canonical";
    case WeightingMethod::FlatK: return "flat-k";
    case WeightingMethod::Extended: return "extended";
    }
    return "";
}

PipelineResult run_pipeline(const ProjectBundle& project, const PipelineConfig& config) {
    auto screening = screen(aggregate(project.ratings), config.rule);

    std::vector<LabelDisagreement> disagreements;
    std::optional<DiscrepancyReport> screening_audit;
    if (project.reference && !project.reference->table3.empty()) {
        if (config.rule.is_threshold()) disagreements = label_disagreements(screening, project.reference->labels());
        screening_audit = audit(screening, project.reference->table3, config.tolerances);
    }

    std::vector<std::size_t> accepted_rows;
    std::set<std::string> accepted;
    for (std::size_t j = 0; j < screening.records.size(); ++j)
        if (screening.records[j].decision == Decision::Accept) {
            accepted_rows.push_back(j);
            accepted.insert(screening.records[j].criterion.code);
        }

    std::vector<std::string> notes;
    std::optional<RankMatrix> ranks;
    if (!accepted_rows.empty()) ranks = ratings_to_ranks(project.ratings.select_criteria(accepted_rows), RankDirection::HigherIsBetter);

    std::variant<SwaraResult, ExtendedSwaraResult> weights;
    Ranking ranking;
    if (config.method == WeightingMethod::Extended) {
        if (!ranks) throw Error(ErrorCode::EmptyInput, "no criteria accepted by screening");
        auto ext = swara_extended(*ranks);
        ranking = rank_by_weight(ext);
        weights = std::move(ext);
    } else {
        std::vector<SwaraEntry> kept;
        std::set<std::string> in_svalues;
        for (const auto& e : project.swara_s.entries()) {
            in_svalues.insert(e.criterion.code);
            if (accepted.count(e.criterion.code)) kept.push_back(e);
            else notes.push_back("s-value for " + e.criterion.code + " dropped: rejected by screening");
        }
        for (const auto& rec : screening.records)
            if (rec.decision == Decision::Accept && !in_svalues.count(rec.criterion.code))
                notes.push_back(rec.criterion.code + " accepted but has no s-value");
        auto result = swara(SwaraInput(std::move(kept)),
                            config.method == WeightingMethod::Canonical ? SwaraVariant::Canonical : SwaraVariant::FlatK);
        ranking = rank_by_weight(result);
        weights = std::move(result);
    }

    std::optional<ConcordanceReport> concordance;
    if (ranks && ranks->n() >= 2) {
        try {
            concordance = kendalls_w(*ranks);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateDenominator) throw;
            notes.push_back(std::string("concordance not computed: ") + e.what());
        }
    } else {
        notes.push_back("concordance not computed: fewer than 2 accepted criteria");
    }

    return {std::move(screening), std::move(disagreements), std::move(screening_audit), std::move(weights),
            std::move(ranking), std::move(concordance), std::move(notes)};
}

std::string render(const PipelineResult& result, Format format) {
    auto render_weights = [&](Format f) {
        return std::visit([f](const auto& w) { return render(w, f); }, result.weights);
    };

    if (format == Format::Json) {
        using json = nlohmann::ordered_json;
        json doc = {{"type", "pipeline"}, {"screening", json::parse(render(result.screening, format))}};
        json dis = json::array();
        for (const auto& d : result.disagreements)
            dis.push_back({{"code", d.code},
                           {"computed", std::string(to_string(d.computed))},
                           {"recorded", std::string(to_string(d.recorded))}});
        doc["label_disagreements"] = std::move(dis);
        if (result.screening_audit) doc["screening_audit"] = json::parse(render(*result.screening_audit, format));
        doc["weights"] = json::parse(render_weights(format));
        doc["ranking"] = json::parse(render(result.ranking, format));
        if (result.concordance) doc["concordance"] = json::parse(render(*result.concordance, format));
        doc["notes"] = result.notes;
        return doc.dump(2) + "\n";
    }

    const bool md = format == Format::Markdown;
    auto section = [md](const std::string& title) { return md ? "## " + title + "\n\n" : "# " + title + "\n"; };
    std::string out = md ? "# Panel screening and weighting\n\n" : "";
    out += section("Screening") + render(result.screening, format) + "\n";
    if (!result.disagreements.empty()) {
        out += section("Disagreement with recorded labels");
        for (const auto& d : result.disagreements)
            out += "- " + d.code + " (mean " + fixed6(d.mean) + "): rule says " + std::string(to_string(d.computed)) +
                   ", recorded " + std::string(to_string(d.recorded)) + "\n";
        out += "\n";
    }
    if (result.screening_audit) out += section("Average audit") + render(*result.screening_audit, format) + "\n";
    out += section("Weights") + render_weights(format) + "\n";
    out += section("Ranking") + render(result.ranking, format) + "\n";
    if (result.concordance) out += section("Concordance") + render(*result.concordance, format) + "\n";
    if (!result.notes.empty()) {
        out += section("Notes");
        for (const auto& n : result.notes) out += "- " + n + "\n";
    }
    return out;
}

}  // namespace panelrank
