#ifndef PANELRANK_REPORT_HPP
#define PANELRANK_REPORT_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "panelrank/delphi.hpp"
#include "panelrank/ingest.hpp"
#include "panelrank/model.hpp"
#include "panelrank/sensitivity.hpp"
#include "panelrank/swara.hpp"

namespace panelrank {

enum class Format { Markdown, Csv, Json };

Format parse_format(std::string_view name);

enum class ReferenceTable { Table3, Table4 };
enum class Verdict { Match, Mismatch };

struct DiscrepancyRecord {
    ReferenceTable table = ReferenceTable::Table3;
    std::string code;
    std::string column;
    double published = 0;
    double computed = 0;
    double abs_diff = 0;
    double tolerance = 0;
    Verdict verdict = Verdict::Match;
};

struct ColumnSummary {
    std::string column;
    double tolerance = 0;
    std::size_t matches = 0;
    std::size_t mismatches = 0;
};

struct DiscrepancyReport {
    std::vector<DiscrepancyRecord> records;

    std::vector<ColumnSummary> summary() const;
    std::vector<DiscrepancyRecord> mismatches(std::string_view column = {}) const;
    std::size_t matches(std::string_view column) const;
};

/// Per-column defaults follow the printing precision of the published tables.
struct AuditTolerances {
    double mean = 1e-6;
    double k = 5e-7;
    double w = 1.5e-3;
};

/// Compares computed k and w against the published weight table. Every
/// reference row must have a computed counterpart (UnknownCode otherwise).
DiscrepancyReport audit(const SwaraResult& computed, std::span<const Table4Row> reference,
                        const AuditTolerances& tolerances = {});
/// Compares computed means against the published averages.
DiscrepancyReport audit(const ScreeningOutcome& computed, std::span<const Table3Row> reference,
                        const AuditTolerances& tolerances = {});

// Numeric cells are printed with six decimals.
std::string render(const ScreeningOutcome& outcome, Format format);
std::string render(const SwaraResult& result, Format format);
std::string render(const ExtendedSwaraResult& result, Format format);
std::string render(const ConcordanceReport& report, Format format);
std::string render(const StabilityReport& report, Format format);
std::string render(const DiscrepancyReport& report, Format format);
std::string render(const Ranking& ranking, Format format);

std::string fixed6(double value);

}  // namespace panelrank

#endif
