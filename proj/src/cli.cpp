#include "panelrank/cli.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <unistd.h>

#include <CLI11.hpp>

#include "panelrank/concordance.hpp"
#include "panelrank/delphi.hpp"
#include "panelrank/ingest.hpp"
#include "panelrank/pipeline.hpp"
#include "panelrank/report.hpp"
#include "panelrank/sensitivity.hpp"
#include "panelrank/swara.hpp"

namespace panelrank::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    bool paper_data = false;
    std::optional<std::string> project, ratings, ranks, svalues, labels, reference, out, config, mode, emit;
    std::optional<double> threshold, tolerance, epsilon;
    std::optional<std::string> variant, format;
    std::optional<std::uint64_t> iterations, seed;
    std::optional<int> grid, scale_min, scale_max;
    std::optional<unsigned> threads;
    bool audit = false;
};

class Settings {
public:
    explicit Settings(const Flags& flags) {
        if (flags.config) load(*flags.config);
        else if (std::filesystem::exists("panelrank.toml")) load("panelrank.toml");
    }

    template <typename T>
    T get(const std::optional<T>& flag, const std::string& key, T fallback) const {
        if (flag) return *flag;
        auto it = config_.find(key);
        if (it == config_.end()) return fallback;
        if constexpr (std::is_same_v<T, std::string>) {
            return it->second;
        } else {
            T value{};
            const auto& text = it->second;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw UsageError("config key '" + key + "' has invalid value '" + text + "'");
            return value;
        }
    }

    bool has(const std::string& key) const { return config_.count(key) > 0; }

private:
    void load(const std::string& path) {
        std::string text;
        try {
            text = read_file(path);
        } catch (const Error&) {
            throw UsageError("cannot read config file '" + path + "'");
        }
        try {
            config_ = parse_config(text);
        } catch (const Error& e) {
            throw UsageError(std::string("config file '") + path + "': " + e.what());
        }
        static const std::set<std::string> known{"threshold", "variant",   "format", "tolerance", "iterations", "seed",
                                                 "epsilon",   "grid",      "threads", "scale-min", "scale-max", "mode"};
        for (const auto& [key, value] : config_)
            if (!known.count(key)) throw UsageError("unknown config key '" + key + "' in '" + path + "'");
    }

    std::map<std::string, std::string> config_;
};

class Context {
public:
    Context(const Flags& flags, std::ostream& err, bool color) : flags_(flags), settings_(flags), err_(err), color_(color) {}

    const Settings& settings() const { return settings_; }
    Format format() const { return parse_format(settings_.get<std::string>(flags_.format, "format", "markdown")); }

    const ProjectBundle* bundle() {
        if (!bundle_loaded_) {
            bundle_loaded_ = true;
            if (flags_.project) bundle_ = parse_project(read_file(*flags_.project));
            else if (flags_.paper_data) bundle_ = load_paper_dataset();
        }
        return bundle_ ? &*bundle_ : nullptr;
    }

    LikertScale scale() const {
        return LikertScale(settings_.get<int>(flags_.scale_min, "scale-min", 1), settings_.get<int>(flags_.scale_max, "scale-max", 5));
    }

    RatingMatrix ratings() {
        if (flags_.ratings) return parse_ratings(read_file(*flags_.ratings), scale());
        if (auto* b = bundle()) return b->ratings;
        throw UsageError("no ratings: pass --ratings <path>, --project <path> or --paper-data");
    }

    bool has_ratings() { return flags_.ratings || bundle(); }

    RankMatrix ranks() {
        if (flags_.ranks) return parse_ranks(read_file(*flags_.ranks));
        if (has_ratings()) return ratings_to_ranks(ratings(), RankDirection::HigherIsBetter);
        throw UsageError("no ranks: pass --ranks <path>, --ratings <path>, --project <path> or --paper-data");
    }

    SwaraInput svalues() {
        auto* b = bundle();
        if (flags_.svalues) return parse_svalues(read_file(*flags_.svalues), b ? &b->catalogue : nullptr);
        if (b) return b->swara_s;
        throw UsageError("no s-values: pass --svalues <path>, --project <path> or --paper-data");
    }

    std::optional<ReferenceTables> reference() {
        if (flags_.reference) {
            if (*flags_.reference == "bundled") return load_paper_dataset().reference;
            return parse_reference(read_file(*flags_.reference));
        }
        if (auto* b = bundle()) return b->reference;
        return std::nullopt;
    }

    ScreeningRule rule() {
        if (flags_.labels) {
            if (*flags_.labels == "bundled") {
                auto ref = reference();
                if (!ref || ref->table3.empty()) throw UsageError("--labels bundled needs reference labels");
                return ScreeningRule::recorded(ref->labels());
            }
            return ScreeningRule::recorded(parse_labels(read_file(*flags_.labels)));
        }
        return ScreeningRule::mean_at_least(settings_.get<double>(flags_.threshold, "threshold", 4.0));
    }

    void warn(const std::string& message) {
        if (color_) err_ << "\x1b[33mwarning:\x1b[0m " << message << "\n";
        else err_ << "warning: " << message << "\n";
    }

    void warn_disagreements(const std::vector<LabelDisagreement>& dis) {
        if (dis.empty()) return;
        std::string list;
        for (const auto& d : dis)
            list += (list.empty() ? "" : ", ") + d.code + " (mean " + fixed6(d.mean) + ", rule " +
                    std::string(to_string(d.computed)) + ", recorded " + std::string(to_string(d.recorded)) + ")";
        warn(std::to_string(dis.size()) + " criteria disagree with the recorded Accept/Reject labels: " + list);
    }

private:
    const Flags& flags_;
    Settings settings_;
    std::ostream& err_;
    bool color_;
    bool bundle_loaded_ = false;
    std::optional<ProjectBundle> bundle_;
};

void add_inputs(CLI::App* cmd, Flags& f, bool ratings, bool ranks, bool svalues) {
    cmd->add_flag("--paper-data", f.paper_data, "Use the bundled published dataset");
    cmd->add_option("--project", f.project, "Project JSON file");
    if (ratings) {
        cmd->add_option("--ratings", f.ratings, "Ratings CSV (code,<expert-id>,...)");
        cmd->add_option("--scale-min", f.scale_min, "Likert scale minimum (default 1)");
        cmd->add_option("--scale-max", f.scale_max, "Likert scale maximum (default 5)");
    }
    if (ranks) cmd->add_option("--ranks", f.ranks, "Ranks CSV (decimal cells allowed)");
    if (svalues) cmd->add_option("--svalues", f.svalues, "s-values CSV (code,s) in importance order");
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--format", f.format, "markdown | csv | json");
    cmd->add_option("--out", f.out, "Write output to this path instead of stdout");
    cmd->add_option("--config", f.config, "Key/value config file (default ./panelrank.toml if present)");
}

void add_rule(CLI::App* cmd, Flags& f) {
    cmd->add_option("--threshold", f.threshold, "Accept criteria with mean >= threshold (default 4.0)");
    cmd->add_option("--labels", f.labels, "Recorded labels CSV (code,decision) or 'bundled'");
}

void add_reference(CLI::App* cmd, Flags& f) {
    cmd->add_option("--reference", f.reference, "'bundled' or a JSON file with table3/table4");
    cmd->add_option("--tolerance", f.tolerance, "Override every audit tolerance");
}

AuditTolerances tolerances(const Context& ctx, const Flags& f) {
    AuditTolerances tol;
    if (f.tolerance || ctx.settings().has("tolerance")) {
        const double t = ctx.settings().get<double>(f.tolerance, "tolerance", 0.0);
        tol = {t, t, t};
    }
    return tol;
}

std::string cmd_ingest(Context& ctx, const Flags& f) {
    std::string emit = f.emit.value_or("");
    if (emit.empty()) {
        if (f.ranks) emit = "ranks";
        else if (f.ratings) emit = "ratings";
        else if (f.svalues) emit = "svalues";
        else if (f.labels) emit = "labels";
        else emit = "project";
    }
    if (emit == "ratings") return emit_canonical(ctx.ratings());
    if (emit == "ranks") return emit_canonical(ctx.ranks());
    if (emit == "svalues") return emit_canonical(ctx.svalues());
    if (emit == "labels") {
        auto rule = ctx.rule();
        if (rule.is_threshold()) throw UsageError("--emit labels needs --labels");
        return emit_canonical(std::get<RecordedLabels>(rule.variant).labels);
    }
    if (emit == "project") {
        auto* b = ctx.bundle();
        if (!b) throw UsageError("--emit project needs --project or --paper-data");
        return emit_canonical(*b);
    }
    throw UsageError("--emit must be ratings, ranks, svalues, labels or project");
}

std::string cmd_screen(Context& ctx) {
    auto rule = ctx.rule();
    auto outcome = screen(aggregate(ctx.ratings()), rule);
    if (rule.is_threshold())
        if (auto ref = ctx.reference(); ref && !ref->table3.empty())
            ctx.warn_disagreements(label_disagreements(outcome, ref->labels()));
    return render(outcome, ctx.format());
}

std::string cmd_swara(Context& ctx, const Flags& f) {
    auto method = parse_weighting(ctx.settings().get<std::string>(f.variant, "variant", "canonical"));
    const auto format = ctx.format();
    if (method == WeightingMethod::Extended) {
        if (f.audit) throw UsageError("--audit compares s/k/w columns and does not apply to --variant extended");
        auto result = swara_extended(ctx.ranks());
        return render(result, format) + "\n" + render(rank_by_weight(result), format);
    }
    auto result = swara(ctx.svalues(), method == WeightingMethod::Canonical ? SwaraVariant::Canonical : SwaraVariant::FlatK);
    std::string out = render(result, format) + "\n" + render(rank_by_weight(result), format);
    if (f.audit) {
        auto ref = ctx.reference();
        if (!ref || ref->table4.empty()) throw UsageError("--audit needs reference weights (--reference or --paper-data)");
        out += "\n" + render(audit(result, ref->table4, tolerances(ctx, f)), format);
    }
    return out;
}

std::string cmd_concordance(Context& ctx) {
    auto ranks = ctx.ranks();
    auto report = kendalls_w(ranks);
    std::string out = render(report, ctx.format());
    if (ctx.format() == Format::Markdown) {
        try {
            out += "\nMean pairwise Spearman rho: " + fixed6(mean_pairwise_spearman(ranks)) + "\n";
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TiesPresent) throw;
        }
    }
    return out;
}

std::string cmd_sensitivity(Context& ctx, const Flags& f) {
    const auto& s = ctx.settings();
    auto mode = s.get<std::string>(f.mode, "mode", "bootstrap");
    if (mode == "bootstrap") {
        auto report = bootstrap_experts(ctx.ratings(), ctx.rule(), s.get<std::uint64_t>(f.iterations, "iterations", 1000),
                                        s.get<std::uint64_t>(f.seed, "seed", 42), s.get<unsigned>(f.threads, "threads", 1));
        return render(report, ctx.format());
    }
    if (mode == "perturb") {
        auto method = parse_weighting(s.get<std::string>(f.variant, "variant", "canonical"));
        if (method == WeightingMethod::Extended) throw UsageError("perturbation supports canonical and flat-k only");
        auto report = perturb_s(ctx.svalues(), s.get<double>(f.epsilon, "epsilon", 0.05), s.get<int>(f.grid, "grid", 11),
                                method == WeightingMethod::Canonical ? SwaraVariant::Canonical : SwaraVariant::FlatK);
        return render(report, ctx.format());
    }
    throw UsageError("--mode must be bootstrap or perturb");
}

std::string cmd_report(Context& ctx, const Flags& f) {
    const auto format = ctx.format();
    std::string out;
    if (ctx.has_ratings()) {
        auto rule = ctx.rule();
        auto outcome = screen(aggregate(ctx.ratings()), rule);
        if (rule.is_threshold())
            if (auto ref = ctx.reference(); ref && !ref->table3.empty())
                ctx.warn_disagreements(label_disagreements(outcome, ref->labels()));
        out += render(outcome, format) + "\n";
    }
    auto method = parse_weighting(ctx.settings().get<std::string>(f.variant, "variant", "canonical"));
    if (method == WeightingMethod::Extended) {
        auto result = swara_extended(ctx.ranks());
        out += render(result, format) + "\n" + render(rank_by_weight(result), format);
    } else {
        auto result =
            swara(ctx.svalues(), method == WeightingMethod::Canonical ? SwaraVariant::Canonical : SwaraVariant::FlatK);
        out += render(result, format) + "\n" + render(rank_by_weight(result), format);
    }
    return out;
}

std::string cmd_audit(Context& ctx, const Flags& f) {
    auto ref = ctx.reference();
    if (!ref || ref->empty()) throw UsageError("no reference tables: pass --reference, --project with a reference, or --paper-data");
    const auto tol = tolerances(ctx, f);
    DiscrepancyReport combined;
    if (!ref->table3.empty() && ctx.has_ratings()) {
        auto outcome = screen(aggregate(ctx.ratings()), ScreeningRule::mean_at_least(ctx.scale().min()));
        combined.records = audit(outcome, ref->table3, tol).records;
    }
    if (!ref->table4.empty()) {
        auto method = parse_weighting(ctx.settings().get<std::string>(f.variant, "variant", "flat-k"));
        if (method == WeightingMethod::Extended) throw UsageError("audit supports canonical and flat-k only");
        auto result =
            swara(ctx.svalues(), method == WeightingMethod::Canonical ? SwaraVariant::Canonical : SwaraVariant::FlatK);
        auto part = audit(result, ref->table4, tol);
        combined.records.insert(combined.records.end(), part.records.begin(), part.records.end());
    }
    return render(combined, ctx.format());
}

std::string cmd_pipeline(Context& ctx, const Flags& f) {
    auto* b = ctx.bundle();
    if (!b) throw UsageError("pipeline needs --project <path> or --paper-data");
    PipelineConfig config;
    config.rule = ctx.rule();
    config.method = parse_weighting(ctx.settings().get<std::string>(f.variant, "variant", "canonical"));
    config.tolerances = tolerances(ctx, f);
    ProjectBundle project = *b;
    if (f.reference) project.reference = ctx.reference();
    auto result = run_pipeline(project, config);
    ctx.warn_disagreements(result.disagreements);
    return render(result, ctx.format());
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": expected key = value");
            auto key = trim(line.substr(0, eq));
            auto value = trim(line.substr(eq + 1));
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
            if (key.empty()) throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": empty key");
            out[std::string(key)] = std::string(value);
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"panelrank: expert-panel screening, SWARA weighting and concordance", "panelrank"};
    app.require_subcommand(1);
    Flags f;

    auto* ingest = app.add_subcommand("ingest", "Validate input files and emit their canonical form");
    add_inputs(ingest, f, true, true, true);
    ingest->add_option("--labels", f.labels, "Recorded labels CSV (code,decision)");
    ingest->add_option("--emit", f.emit, "ratings | ranks | svalues | labels | project");
    add_common(ingest, f);

    auto* screen_cmd = app.add_subcommand("screen", "Aggregate ratings and screen criteria");
    add_inputs(screen_cmd, f, true, false, false);
    add_rule(screen_cmd, f);
    screen_cmd->add_option("--reference", f.reference, "'bundled' or a JSON file with table3 labels to compare against");
    add_common(screen_cmd, f);

    auto* swara_cmd = app.add_subcommand("swara", "Compute SWARA weights");
    add_inputs(swara_cmd, f, true, true, true);
    swara_cmd->add_option("--variant", f.variant, "canonical | flat-k | extended (default canonical)");
    swara_cmd->add_flag("--audit", f.audit, "Compare k and w with the reference weight table");
    add_reference(swara_cmd, f);
    add_common(swara_cmd, f);

    auto* conc = app.add_subcommand("concordance", "Kendall's W over expert rankings");
    add_inputs(conc, f, true, true, false);
    add_common(conc, f);

    auto* sens = app.add_subcommand("sensitivity", "Bootstrap screening or perturb s-values");
    add_inputs(sens, f, true, false, true);
    add_rule(sens, f);
    sens->add_option("--mode", f.mode, "bootstrap | perturb (default bootstrap)");
    sens->add_option("--iterations", f.iterations, "Bootstrap draws (default 1000)");
    sens->add_option("--seed", f.seed, "Bootstrap seed (default 42)");
    sens->add_option("--threads", f.threads, "Worker threads (default 1; output is identical)");
    sens->add_option("--epsilon", f.epsilon, "Perturbation half-width (default 0.05)");
    sens->add_option("--grid", f.grid, "Grid points per criterion (default 11)");
    sens->add_option("--variant", f.variant, "canonical | flat-k (default canonical)");
    add_common(sens, f);

    auto* rep = app.add_subcommand("report", "Render screening and weight tables");
    add_inputs(rep, f, true, true, true);
    add_rule(rep, f);
    rep->add_option("--variant", f.variant, "canonical | flat-k | extended (default canonical)");
    rep->add_option("--reference", f.reference, "'bundled' or a JSON file with table3 labels");
    add_common(rep, f);

    auto* aud = app.add_subcommand("audit", "Compare recomputed values with published tables");
    add_inputs(aud, f, true, false, true);
    aud->add_option("--variant", f.variant, "canonical | flat-k (default flat-k)");
    add_reference(aud, f);
    add_common(aud, f);

    auto* pipe = app.add_subcommand("pipeline", "Screen, weight and check concordance in one document");
    pipe->add_flag("--paper-data", f.paper_data, "Use the bundled published dataset");
    pipe->add_option("--project", f.project, "Project JSON file");
    add_rule(pipe, f);
    pipe->add_option("--variant", f.variant, "canonical | flat-k | extended (default canonical)");
    add_reference(pipe, f);
    add_common(pipe, f);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const char* no_color = std::getenv("PANELRANK_NO_COLOR");
    const bool color = (!no_color || !*no_color) && &err == &std::cerr && isatty(STDERR_FILENO);

    try {
        if (f.paper_data && f.project) throw UsageError("--paper-data and --project are mutually exclusive");
        Context ctx(f, err, color);
        std::string text;
        if (ingest->parsed()) text = cmd_ingest(ctx, f);
        else if (screen_cmd->parsed()) text = cmd_screen(ctx);
        else if (swara_cmd->parsed()) text = cmd_swara(ctx, f);
        else if (conc->parsed()) text = cmd_concordance(ctx);
        else if (sens->parsed()) text = cmd_sensitivity(ctx, f);
        else if (rep->parsed()) text = cmd_report(ctx, f);
        else if (aud->parsed()) text = cmd_audit(ctx, f);
        else text = cmd_pipeline(ctx, f);

        if (f.out) write_file_atomic(*f.out, text);
        else out << text;
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) {
            // Bad flag values (unknown format or variant, zero iterations).
            err << "usage error: " << e.what() << "\n";
            return kExitUsage;
        }
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace panelrank::cli
