#include "panelrank/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace panelrank {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

CsvTable read_csv(std::string_view source) {
    if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
        auto end = source.find('\n', start);
        auto line = trim(source.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        ++line_no;
        if (!line.empty() && line.front() != '#') {
            if (table.header.empty()) {
                table.header = split_fields(line);
            } else {
                table.rows.push_back(split_fields(line));
                table.line_numbers.push_back(line_no);
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (table.header.empty()) throw Error(ErrorCode::SchemaError, "missing header line");
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (table.rows[i].size() != table.header.size())
            throw Error(ErrorCode::SchemaError, "line " + std::to_string(table.line_numbers[i]) + " has " +
                                                    std::to_string(table.rows[i].size()) + " fields, header has " +
                                                    std::to_string(table.header.size()));
    return table;
}

int parse_int_cell(const std::string& text, std::size_t line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ": '" + text + "' is not an integer");
    return value;
}

double parse_real_cell(const std::string& text, std::size_t line) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ": '" + text + "' is not a number");
    return value;
}

// Shared shape of the ratings and ranks files.
template <typename Cell, typename ParseCell>
void read_grid(std::string_view source, std::vector<Criterion>& criteria, std::vector<ExpertProfile>& experts,
               std::vector<std::vector<Cell>>& rows, ParseCell parse_cell) {
    auto table = read_csv(source);
    if (table.header.size() < 2 || table.header.front() != "code")
        throw Error(ErrorCode::SchemaError, "header must read code,<expert-id>,...");
    if (table.rows.empty()) throw Error(ErrorCode::SchemaError, "no criterion rows");
    for (std::size_t k = 1; k < table.header.size(); ++k) {
        ExpertProfile e;
        e.id = table.header[k];
        experts.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
        const auto& fields = table.rows[j];
        criteria.push_back({fields[0], fields[0], static_cast<int>(j) + 1});
        std::vector<Cell> row;
        for (std::size_t k = 1; k < fields.size(); ++k) row.push_back(parse_cell(fields[k], table.line_numbers[j]));
        rows.push_back(std::move(row));
    }
}

std::string decision_key(Decision d) { return d == Decision::Accept ? "accept" : "reject"; }

template <typename T>
T get_field(const json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key))
        throw Error(ErrorCode::SchemaError, std::string(where) + " is missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::SchemaError, std::string(where) + " field '" + key + "' has the wrong type");
    }
}

const json& get_array(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_array())
        throw Error(ErrorCode::SchemaError, std::string("'") + key + "' must be an array");
    return obj.at(key);
}

// Rounds to the value that format_decimal would print.
double canonical(double v) {
    auto text = format_decimal(v);
    double out = 0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

ReferenceTables reference_from_json(const json& ref) {
    ReferenceTables out;
    if (!ref.is_object()) throw Error(ErrorCode::SchemaError, "'reference' must be an object");
    if (ref.contains("table3"))
        for (const auto& row : get_array(ref, "table3"))
            out.table3.push_back({get_field<std::string>(row, "code", "table3 row"),
                                  get_field<double>(row, "average", "table3 row"),
                                  parse_decision(get_field<std::string>(row, "decision", "table3 row"))});
    if (ref.contains("table4"))
        for (const auto& row : get_array(ref, "table4"))
            out.table4.push_back({get_field<std::string>(row, "code", "table4 row"),
                                  row.contains("label") ? get_field<std::string>(row, "label", "table4 row") : "",
                                  get_field<double>(row, "s", "table4 row"), get_field<double>(row, "k", "table4 row"),
                                  get_field<double>(row, "w", "table4 row")});
    return out;
}

json reference_to_json(const ReferenceTables& ref) {
    json out = json::object();
    if (!ref.table3.empty()) {
        json rows = json::array();
        for (const auto& r : ref.table3)
            rows.push_back({{"code", r.code}, {"average", canonical(r.average)}, {"decision", decision_key(r.decision)}});
        out["table3"] = std::move(rows);
    }
    if (!ref.table4.empty()) {
        json rows = json::array();
        for (const auto& r : ref.table4)
            rows.push_back({{"code", r.code},
                            {"label", r.label},
                            {"s", canonical(r.s)},
                            {"k", canonical(r.k)},
                            {"w", canonical(r.w)}});
        out["table4"] = std::move(rows);
    }
    return out;
}

}  // namespace

LabelMap ReferenceTables::labels() const {
    LabelMap out;
    for (const auto& r : table3) out[r.code] = r.decision;
    return out;
}

void validate_bundle(const ProjectBundle& bundle) {
    validate_panel(bundle.panel);
    validate_catalogue(bundle.catalogue);
    if (bundle.ratings.criteria() != bundle.catalogue)
        throw Error(ErrorCode::SchemaError, "rating rows must match the catalogue exactly");
    if (bundle.ratings.experts() != bundle.panel)
        throw Error(ErrorCode::SchemaError, "rating columns must match the panel exactly");
    std::set<std::string_view> codes;
    for (const auto& c : bundle.catalogue) codes.insert(c.code);
    for (const auto& e : bundle.swara_s.entries())
        if (!codes.count(e.criterion.code))
            throw Error(ErrorCode::UnknownCode, "s-value for '" + e.criterion.code + "' not in catalogue");
}

std::string format_decimal(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
    std::string out(buf, ptr);
    if (out == "-0") out = "0";
    return out;
}

RatingMatrix parse_ratings(std::string_view source, LikertScale scale) {
    std::vector<Criterion> criteria;
    std::vector<ExpertProfile> experts;
    std::vector<std::vector<int>> rows;
    read_grid<int>(source, criteria, experts, rows, parse_int_cell);
    return RatingMatrix::create(std::move(criteria), std::move(experts), scale, rows);
}

RankMatrix parse_ranks(std::string_view source) {
    std::vector<Criterion> criteria;
    std::vector<ExpertProfile> experts;
    std::vector<std::vector<double>> rows;
    read_grid<double>(source, criteria, experts, rows, parse_real_cell);
    return RankMatrix::create(std::move(criteria), std::move(experts), rows);
}

SwaraInput parse_svalues(std::string_view source, const std::vector<Criterion>* catalogue) {
    auto table = read_csv(source);
    if (table.header != std::vector<std::string>{"code", "s"}) throw Error(ErrorCode::SchemaError, "header must read code,s");
    std::vector<SwaraEntry> entries;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& code = table.rows[i][0];
        Criterion c{code, code, static_cast<int>(i) + 1};
        if (catalogue) {
            auto it = std::find_if(catalogue->begin(), catalogue->end(), [&](const Criterion& x) { return x.code == code; });
            if (it == catalogue->end()) throw Error(ErrorCode::UnknownCode, "s-value for '" + code + "' not in catalogue");
            c = *it;
        }
        entries.push_back({std::move(c), parse_real_cell(table.rows[i][1], table.line_numbers[i])});
    }
    return SwaraInput(std::move(entries));
}

LabelMap parse_labels(std::string_view source) {
    auto table = read_csv(source);
    if (table.header != std::vector<std::string>{"code", "decision"})
        throw Error(ErrorCode::SchemaError, "header must read code,decision");
    LabelMap labels;
    for (const auto& row : table.rows)
        if (!labels.emplace(row[0], parse_decision(row[1])).second)
            throw Error(ErrorCode::DuplicateId, "label for '" + row[0] + "' repeated");
    return labels;
}

ProjectBundle parse_project(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "project must be a JSON object");

    std::vector<ExpertProfile> panel;
    for (const auto& p : get_array(doc, "panel")) {
        ExpertProfile e;
        e.id = get_field<std::string>(p, "id", "panel entry");
        parse_education(get_field<std::string>(p, "education", "panel entry"), e);
        e.experience_years = get_field<int>(p, "experience_years", "panel entry");
        panel.push_back(std::move(e));
    }

    std::vector<Criterion> catalogue;
    for (const auto& c : get_array(doc, "catalogue"))
        catalogue.push_back({get_field<std::string>(c, "code", "catalogue entry"),
                             get_field<std::string>(c, "label", "catalogue entry"),
                             get_field<int>(c, "ordinal", "catalogue entry")});
    validate_catalogue(catalogue);

    if (!doc.contains("ratings") || !doc["ratings"].is_object())
        throw Error(ErrorCode::SchemaError, "'ratings' must be an object");
    const auto& rj = doc["ratings"];
    LikertScale scale;
    if (rj.contains("scale"))
        scale = LikertScale(get_field<int>(rj["scale"], "min", "ratings.scale"),
                            get_field<int>(rj["scale"], "max", "ratings.scale"));
    std::vector<std::vector<int>> grid;
    for (const auto& row : get_array(rj, "values")) {
        if (!row.is_array()) throw Error(ErrorCode::SchemaError, "ratings.values rows must be arrays");
        std::vector<int> cells;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw Error(ErrorCode::SchemaError, "rating cells must be integers");
            cells.push_back(v.get<int>());
        }
        grid.push_back(std::move(cells));
    }
    auto ratings = RatingMatrix::create(catalogue, panel, scale, grid);

    std::vector<SwaraEntry> svalues;
    for (const auto& e : get_array(doc, "swara_s")) {
        auto code = get_field<std::string>(e, "code", "swara_s entry");
        auto it = std::find_if(catalogue.begin(), catalogue.end(), [&](const Criterion& c) { return c.code == code; });
        if (it == catalogue.end()) throw Error(ErrorCode::UnknownCode, "s-value for '" + code + "' not in catalogue");
        svalues.push_back({*it, get_field<double>(e, "s", "swara_s entry")});
    }

    std::optional<ReferenceTables> reference;
    if (doc.contains("reference")) {
        reference = reference_from_json(doc["reference"]);
        if (reference->empty()) reference.reset();
    }

    ProjectBundle bundle{std::move(panel), std::move(catalogue), std::move(ratings), SwaraInput(std::move(svalues)),
                         std::move(reference)};
    validate_bundle(bundle);
    return bundle;
}

ReferenceTables parse_reference(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("reference")) return reference_from_json(doc["reference"]);
    return reference_from_json(doc);
}

std::string emit_canonical(const RatingMatrix& ratings) {
    std::string out = "code";
    for (const auto& e : ratings.experts()) out += "," + e.id;
    out += "\n";
    for (std::size_t j = 0; j < ratings.n_criteria(); ++j) {
        out += ratings.criteria()[j].code;
        for (int v : ratings.row(j)) out += "," + std::to_string(v);
        out += "\n";
    }
    return out;
}

std::string emit_canonical(const RankMatrix& ranks) {
    std::string out = "code";
    for (const auto& e : ranks.experts()) out += "," + e.id;
    out += "\n";
    for (std::size_t j = 0; j < ranks.n(); ++j) {
        out += ranks.criteria()[j].code;
        for (double v : ranks.row(j)) out += "," + format_decimal(v);
        out += "\n";
    }
    return out;
}

std::string emit_canonical(const SwaraInput& svalues) {
    std::string out = "code,s\n";
    for (const auto& e : svalues.entries()) out += e.criterion.code + "," + format_decimal(e.s) + "\n";
    return out;
}

std::string emit_canonical(const LabelMap& labels) {
    std::string out = "code,decision\n";
    for (const auto& [code, d] : labels) out += code + "," + decision_key(d) + "\n";
    return out;
}

std::string emit_canonical(const ProjectBundle& bundle) {
    json doc = json::object();
    json panel = json::array();
    for (const auto& e : bundle.panel)
        panel.push_back({{"id", e.id}, {"education", education_name(e)}, {"experience_years", e.experience_years}});
    doc["panel"] = std::move(panel);

    json catalogue = json::array();
    for (const auto& c : bundle.catalogue)
        catalogue.push_back({{"code", c.code}, {"label", c.label}, {"ordinal", c.ordinal}});
    doc["catalogue"] = std::move(catalogue);

    json values = json::array();
    for (std::size_t j = 0; j < bundle.ratings.n_criteria(); ++j) {
        auto row = bundle.ratings.row(j);
        values.push_back(std::vector<int>(row.begin(), row.end()));
    }
    doc["ratings"] = {{"scale", {{"min", bundle.ratings.scale().min()}, {"max", bundle.ratings.scale().max()}}},
                      {"values", std::move(values)}};

    json svalues = json::array();
    for (const auto& e : bundle.swara_s.entries())
        svalues.push_back({{"code", e.criterion.code}, {"s", canonical(e.s)}});
    doc["swara_s"] = std::move(svalues);

    if (bundle.reference && !bundle.reference->empty()) doc["reference"] = reference_to_json(*bundle.reference);
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw Error(ErrorCode::IoError, "write to '" + tmp + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw Error(ErrorCode::IoError, "cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

}  // namespace panelrank
