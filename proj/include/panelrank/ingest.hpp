#ifndef PANELRANK_INGEST_HPP
#define PANELRANK_INGEST_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "panelrank/model.hpp"

namespace panelrank {

/// Reference screening row: printed average and Accept/Reject label.
struct Table3Row {
    std::string code;
    double average = 0;
    Decision decision = Decision::Accept;

    bool operator==(const Table3Row&) const = default;
};

/// Reference weight row: s, k and w exactly as printed.
struct Table4Row {
    std::string code;
    std::string label;
    double s = 0;
    double k = 0;
    double w = 0;

    bool operator==(const Table4Row&) const = default;
};

struct ReferenceTables {
    std::vector<Table3Row> table3;
    std::vector<Table4Row> table4;

    bool empty() const noexcept { return table3.empty() && table4.empty(); }
    LabelMap labels() const;

    bool operator==(const ReferenceTables&) const = default;
};

struct ProjectBundle {
    std::vector<ExpertProfile> panel;
    std::vector<Criterion> catalogue;
    RatingMatrix ratings;
    SwaraInput swara_s;
    std::optional<ReferenceTables> reference;

    bool operator==(const ProjectBundle&) const = default;
};

/// Checks the cross-field invariants (ratings rows equal the catalogue, ratings
/// columns equal the panel, s-value codes drawn from the catalogue).
void validate_bundle(const ProjectBundle& bundle);

// CSV: header `code,<expert-id>,...`, one row per criterion.
RatingMatrix parse_ratings(std::string_view source, LikertScale scale = {});
RankMatrix parse_ranks(std::string_view source);
// CSV: header `code,s`, rows in importance order. Labels come from the
// catalogue when given, otherwise the code doubles as the label.
SwaraInput parse_svalues(std::string_view source, const std::vector<Criterion>* catalogue = nullptr);
// CSV: header `code,decision`.
LabelMap parse_labels(std::string_view source);
ProjectBundle parse_project(std::string_view json_text);
// Reference tables alone: either a project file's `reference` object or a
// document whose top level holds `table3`/`table4`.
ReferenceTables parse_reference(std::string_view json_text);

std::string emit_canonical(const RatingMatrix& ratings);
std::string emit_canonical(const RankMatrix& ranks);
std::string emit_canonical(const SwaraInput& svalues);
std::string emit_canonical(const LabelMap& labels);
std::string emit_canonical(const ProjectBundle& bundle);

/// Decimal text with at most 9 significant digits, locale independent.
std::string format_decimal(double value);

/// Expert panel, criterion catalogue, rating grid, s-values and published
/// reference columns of the bundled smart-contract CSF study.
const ProjectBundle& load_paper_dataset();

std::string read_file(const std::string& path);
/// Writes to `path.tmp` and renames over `path` once complete.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace panelrank

#endif
