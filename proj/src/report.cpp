#include "panelrank/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include <json.hpp>

namespace panelrank {

namespace {

using json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string to_markdown(const Table& t) {
    std::string out = "|";
    for (const auto& h : t.header) out += " " + h + " |";
    out += "\n|";
    for (std::size_t i = 0; i < t.header.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& row : t.rows) {
        out += "|";
        for (const auto& cell : row) out += " " + cell + " |";
        out += "\n";
    }
    return out;
}

std::string to_csv(const Table& t) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
        out += "\n";
    };
    line(t.header);
    for (const auto& row : t.rows) line(row);
    return out;
}

double round6(double v) {
    auto text = fixed6(v);
    double out = 0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string table_name(ReferenceTable t) { return t == ReferenceTable::Table3 ? "table3" : "table4"; }

void add_record(DiscrepancyReport& report, ReferenceTable table, const std::string& code, const char* column,
                double published, double computed, double tolerance) {
    const double diff = std::abs(published - computed);
    report.records.push_back({table, code, column, published, computed, diff, tolerance,
                              diff <= tolerance ? Verdict::Match : Verdict::Mismatch});
}

void check_tolerance(double tol, const char* column) {
    if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, std::string("tolerance for ") + column + " must be > 0");
}

std::vector<double> mean_ranks(const StabilityReport& report) {
    std::vector<double> out;
    for (const auto& h : report.rank_histogram) {
        double total = 0;
        for (std::size_t p = 0; p < h.size(); ++p) total += static_cast<double>(h[p]) * static_cast<double>(p + 1);
        out.push_back(report.iterations ? total / static_cast<double>(report.iterations) : 0.0);
    }
    return out;
}

std::size_t modal_rank(const std::vector<std::uint64_t>& h) {
    return static_cast<std::size_t>(std::max_element(h.begin(), h.end()) - h.begin()) + 1;
}

}  // namespace

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string out = buf;
    if (out == "-0.000000") out = "0.000000";
    return out;
}

Format parse_format(std::string_view name) {
    if (name == "markdown" || name == "md") return Format::Markdown;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "' (markdown, csv, json)");
}

std::vector<ColumnSummary> DiscrepancyReport::summary() const {
    std::vector<ColumnSummary> out;
    for (const auto& r : records) {
        auto it = std::find_if(out.begin(), out.end(), [&](const ColumnSummary& c) { return c.column == r.column; });
        if (it == out.end()) {
            out.push_back({r.column, r.tolerance, 0, 0});
            it = out.end() - 1;
        }
        (r.verdict == Verdict::Match ? it->matches : it->mismatches)++;
    }
    return out;
}

std::vector<DiscrepancyRecord> DiscrepancyReport::mismatches(std::string_view column) const {
    std::vector<DiscrepancyRecord> out;
    for (const auto& r : records)
        if (r.verdict == Verdict::Mismatch && (column.empty() || r.column == column)) out.push_back(r);
    return out;
}

std::size_t DiscrepancyReport::matches(std::string_view column) const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const DiscrepancyRecord& r) {
        return r.column == column && r.verdict == Verdict::Match;
    }));
}

DiscrepancyReport audit(const SwaraResult& computed, std::span<const Table4Row> reference,
                        const AuditTolerances& tolerances) {
    check_tolerance(tolerances.k, "k");
    check_tolerance(tolerances.w, "w");
    std::map<std::string_view, const SwaraRecord*> by_code;
    for (const auto& r : computed.records) by_code[r.criterion.code] = &r;

    DiscrepancyReport report;
    for (const auto& row : reference) {
        auto it = by_code.find(row.code);
        if (it == by_code.end()) throw Error(ErrorCode::UnknownCode, "reference row '" + row.code + "' was not computed");
        add_record(report, ReferenceTable::Table4, row.code, "k", row.k, it->second->k, tolerances.k);
    }
    for (const auto& row : reference)
        add_record(report, ReferenceTable::Table4, row.code, "w", row.w, by_code[row.code]->w, tolerances.w);
    return report;
}

DiscrepancyReport audit(const ScreeningOutcome& computed, std::span<const Table3Row> reference,
                        const AuditTolerances& tolerances) {
    check_tolerance(tolerances.mean, "average");
    std::map<std::string_view, const ScreeningRecord*> by_code;
    for (const auto& r : computed.records) by_code[r.criterion.code] = &r;

    DiscrepancyReport report;
    for (const auto& row : reference) {
        auto it = by_code.find(row.code);
        if (it == by_code.end()) throw Error(ErrorCode::UnknownCode, "reference row '" + row.code + "' was not computed");
        add_record(report, ReferenceTable::Table3, row.code, "average", row.average, it->second->mean, tolerances.mean);
    }
    return report;
}

std::string render(const ScreeningOutcome& outcome, Format format) {
    if (format == Format::Json) {
        json rows = json::array();
        for (const auto& r : outcome.records)
            rows.push_back({{"code", r.criterion.code},
                            {"label", r.criterion.label},
                            {"mean", round6(r.mean)},
                            {"std_dev", round6(r.std_dev)},
                            {"median", round6(r.median)},
                            {"decision", std::string(to_string(r.decision))}});
        return dump({{"type", "screening"},
                     {"rule", outcome.rule_applied},
                     {"scale", {{"min", outcome.scale.min()}, {"max", outcome.scale.max()}}},
                     {"rows", std::move(rows)}});
    }
    Table t{{"Code", "Average", "Std dev", "Median", "Accept/Reject"}, {}};
    for (const auto& r : outcome.records)
        t.rows.push_back({r.criterion.code, fixed6(r.mean), fixed6(r.std_dev), fixed6(r.median),
                          std::string(to_string(r.decision))});
    if (format == Format::Csv) return to_csv(t);
    std::string out = "Screening rule: " + outcome.rule_applied + "\n\n" + to_markdown(t);
    out += "\nAccepted " + std::to_string(outcome.accepted_codes().size()) + " of " +
           std::to_string(outcome.records.size()) + "\n";
    return out;
}

std::string render(const SwaraResult& result, Format format) {
    const std::string variant(to_string(result.variant));
    if (format == Format::Json) {
        json rows = json::array();
        for (const auto& r : result.records)
            rows.push_back({{"code", r.criterion.code},
                            {"label", r.criterion.label},
                            {"s", round6(r.s)},
                            {"k", round6(r.k)},
                            {"q", round6(r.q)},
                            {"w", round6(r.w)}});
        return dump({{"type", "swara"}, {"variant", variant}, {"rows", std::move(rows)}});
    }
    Table t{{"Code", "Attribute", "s", "k", "q", "w"}, {}};
    for (const auto& r : result.records)
        t.rows.push_back({r.criterion.code, r.criterion.label, fixed6(r.s), fixed6(r.k), fixed6(r.q), fixed6(r.w)});
    if (format == Format::Csv) return to_csv(t);
    return "SWARA weights (" + variant + ")\n\n" + to_markdown(t);
}

std::string render(const ExtendedSwaraResult& result, Format format) {
    if (format == Format::Json) {
        json rows = json::array();
        for (const auto& r : result.records)
            rows.push_back({{"code", r.criterion.code},
                            {"label", r.criterion.label},
                            {"t_bar", round6(r.t_bar)},
                            {"rank_mass", round6(r.q)},
                            {"variance", round6(r.variance)},
                            {"beta", round6(r.beta)}});
        return dump({{"type", "swara_extended"}, {"rows", std::move(rows)}});
    }
    Table t{{"Code", "Attribute", "Mean rank", "Rank mass", "Variance", "Beta"}, {}};
    for (const auto& r : result.records)
        t.rows.push_back(
            {r.criterion.code, r.criterion.label, fixed6(r.t_bar), fixed6(r.q), fixed6(r.variance), fixed6(r.beta)});
    if (format == Format::Csv) return to_csv(t);
    return "Extended SWARA (rank 1 = most important; rank mass is the normalized mean rank)\n\n" + to_markdown(t);
}

std::string render(const ConcordanceReport& report, Format format) {
    if (format == Format::Json) {
        json ties = json::array();
        for (double t : report.tie_corrections) ties.push_back(round6(t));
        return dump({{"type", "concordance"},
                     {"r", report.r},
                     {"n", report.n},
                     {"s_statistic", round6(report.s_statistic)},
                     {"tie_corrections", std::move(ties)},
                     {"w", round6(report.w)}});
    }
    Table t{{"Quantity", "Value"}, {}};
    t.rows.push_back({"raters (r)", std::to_string(report.r)});
    t.rows.push_back({"items (n)", std::to_string(report.n)});
    t.rows.push_back({"S", fixed6(report.s_statistic)});
    for (std::size_t k = 0; k < report.tie_corrections.size(); ++k)
        t.rows.push_back({"T_" + std::to_string(k + 1), fixed6(report.tie_corrections[k])});
    t.rows.push_back({"W", fixed6(report.w)});
    if (format == Format::Csv) return to_csv(t);
    return "Kendall's W\n\n" + to_markdown(t);
}

std::string render(const StabilityReport& report, Format format) {
    const bool boot = report.kind == StabilityKind::Bootstrap;
    const auto means = mean_ranks(report);
    const std::size_t n = report.criteria.size();

    if (format == Format::Json) {
        json rows = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            json row = {{"code", report.criteria[j].code}};
            if (boot) row["acceptance_rate"] = round6(report.acceptance_rate[j]);
            else {
                row["top1_change_rate"] = round6(report.top1_change_rate[j]);
                row["ranking_change_rate"] = round6(report.ranking_change_rate[j]);
                json bounds = json::array();
                for (double b : report.flip_boundaries[j]) bounds.push_back(round6(b));
                row["flip_boundaries"] = std::move(bounds);
            }
            row["mean_rank"] = round6(means[j]);
            row["rank_histogram"] = report.rank_histogram[j];
            json flips = json::array();
            for (std::size_t b = 0; b < n; ++b) flips.push_back(round6(report.flip(j, b)));
            row["pair_flip"] = std::move(flips);
            rows.push_back(std::move(row));
        }
        json doc = {{"type", boot ? "bootstrap" : "perturbation"}, {"iterations", report.iterations}};
        if (boot) doc["seed"] = report.seed;
        else {
            doc["epsilon"] = round6(report.epsilon);
            doc["grid_points"] = report.grid_points;
        }
        doc["rows"] = std::move(rows);
        return dump(doc);
    }

    Table t;
    t.header = {"Code"};
    if (boot) t.header.push_back("Acceptance rate");
    else t.header.insert(t.header.end(), {"Top-1 change rate", "Ranking change rate", "Flip boundaries"});
    t.header.insert(t.header.end(), {"Mean rank", "Modal rank", "Max pair flip"});
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::string> row{report.criteria[j].code};
        if (boot) row.push_back(fixed6(report.acceptance_rate[j]));
        else {
            row.push_back(fixed6(report.top1_change_rate[j]));
            row.push_back(fixed6(report.ranking_change_rate[j]));
            std::string bounds;
            for (double b : report.flip_boundaries[j]) bounds += (bounds.empty() ? "" : " ") + fixed6(b);
            row.push_back(bounds.empty() ? "-" : bounds);
        }
        double max_flip = 0;
        for (std::size_t b = 0; b < n; ++b) max_flip = std::max(max_flip, report.flip(j, b));
        row.push_back(fixed6(means[j]));
        row.push_back(std::to_string(modal_rank(report.rank_histogram[j])));
        row.push_back(fixed6(max_flip));
        t.rows.push_back(std::move(row));
    }
    if (format == Format::Csv) {
        for (std::size_t p = 0; p < n; ++p) t.header.push_back("rank_" + std::to_string(p + 1));
        for (std::size_t j = 0; j < n; ++j)
            for (auto c : report.rank_histogram[j]) t.rows[j].push_back(std::to_string(c));
        return to_csv(t);
    }
    std::string out = boot ? "Bootstrap over experts: " + std::to_string(report.iterations) +
                                 " iterations, seed " + std::to_string(report.seed) + "\n\n"
                           : "Perturbation of s: epsilon " + fixed6(report.epsilon) + ", " +
                                 std::to_string(report.grid_points) + " grid points, " +
                                 std::to_string(report.iterations) + " evaluations\n\n";
    return out + to_markdown(t);
}

std::string render(const DiscrepancyReport& report, Format format) {
    auto verdict = [](Verdict v) { return v == Verdict::Match ? "Match" : "Mismatch"; };
    if (format == Format::Json) {
        json rows = json::array();
        for (const auto& r : report.records)
            rows.push_back({{"table", table_name(r.table)},
                            {"code", r.code},
                            {"column", r.column},
                            {"published", round6(r.published)},
                            {"computed", round6(r.computed)},
                            {"abs_diff", round6(r.abs_diff)},
                            {"tolerance", r.tolerance},
                            {"verdict", verdict(r.verdict)}});
        json summary = json::array();
        for (const auto& s : report.summary())
            summary.push_back(
                {{"column", s.column}, {"tolerance", s.tolerance}, {"matches", s.matches}, {"mismatches", s.mismatches}});
        return dump({{"type", "audit"}, {"summary", std::move(summary)}, {"records", std::move(rows)}});
    }
    Table t{{"Table", "Code", "Column", "Published", "Computed", "Abs diff", "Verdict"}, {}};
    for (const auto& r : report.records)
        t.rows.push_back({table_name(r.table), r.code, r.column, fixed6(r.published), fixed6(r.computed),
                          fixed6(r.abs_diff), verdict(r.verdict)});
    if (format == Format::Csv) return to_csv(t);

    std::string out = "Audit against published values\n\n";
    for (const auto& s : report.summary()) {
        char tol[32];
        std::snprintf(tol, sizeof tol, "%g", s.tolerance);
        out += "- " + s.column + ": " + std::to_string(s.matches) + "/" + std::to_string(s.matches + s.mismatches) +
               " match (tolerance " + tol + ")\n";
    }
    auto bad = report.mismatches();
    if (!bad.empty()) {
        out += "\nMismatches:\n";
        for (const auto& r : bad)
            out += "- " + r.code + " " + r.column + ": published " + fixed6(r.published) + ", computed " +
                   fixed6(r.computed) + "\n";
    }
    return out + "\n" + to_markdown(t);
}

std::string render(const Ranking& ranking, Format format) {
    if (format == Format::Json) {
        json rows = json::array();
        for (std::size_t i = 0; i < ranking.entries.size(); ++i)
            rows.push_back({{"rank", i + 1},
                            {"code", ranking.entries[i].criterion.code},
                            {"label", ranking.entries[i].criterion.label},
                            {"score", round6(ranking.entries[i].score)}});
        return dump({{"type", "ranking"}, {"key", ranking.key}, {"tie_break", ranking.tie_break}, {"rows", std::move(rows)}});
    }
    Table t{{"Rank", "Code", "Attribute", "Score"}, {}};
    for (std::size_t i = 0; i < ranking.entries.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), ranking.entries[i].criterion.code, ranking.entries[i].criterion.label,
                          fixed6(ranking.entries[i].score)});
    if (format == Format::Csv) return to_csv(t);
    return "Ranking by " + ranking.key + " (ties: " + ranking.tie_break + ")\n\n" + to_markdown(t);
}

}  // namespace panelrank
