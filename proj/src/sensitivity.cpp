#include "panelrank/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "panelrank/swara.hpp"

namespace panelrank {

namespace {

int sign_of(double a, double b, double rel_tol) {
    if (std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b))) return 0;
    return a > b ? 1 : -1;
}

// Rank positions (0-based) by score descending, catalogue ordinal breaking ties.
std::vector<std::size_t> positions(const std::vector<double>& score, const std::vector<Criterion>& criteria) {
    std::vector<std::size_t> order(score.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return criteria[a].ordinal < criteria[b].ordinal;
    });
    std::vector<std::size_t> pos(score.size());
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
    return pos;
}

std::vector<int> pair_signs(const std::vector<double>& score, double rel_tol) {
    const std::size_t n = score.size();
    std::vector<int> signs(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) signs[a * n + b] = sign_of(score[a], score[b], rel_tol);
    return signs;
}

struct Tally {
    std::vector<std::uint64_t> accepted;
    std::vector<std::vector<std::uint64_t>> histogram;
    std::vector<std::uint64_t> flips;

    explicit Tally(std::size_t n) : accepted(n, 0), histogram(n, std::vector<std::uint64_t>(n, 0)), flips(n * n, 0) {}

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < accepted.size(); ++i) accepted[i] += other.accepted[i];
        for (std::size_t i = 0; i < histogram.size(); ++i)
            for (std::size_t p = 0; p < histogram[i].size(); ++p) histogram[i][p] += other.histogram[i][p];
        for (std::size_t i = 0; i < flips.size(); ++i) flips[i] += other.flips[i];
    }
};

std::vector<double> rates(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    std::vector<double> out;
    for (auto c : counts) out.push_back(static_cast<double>(c) / static_cast<double>(total));
    return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

IndexSampler::IndexSampler(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(splitmix64(seed) ^ stream)) {}

std::size_t IndexSampler::next(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % b);
}

StabilityReport bootstrap_experts(const RatingMatrix& ratings, const ScreeningRule& rule, std::uint64_t iterations,
                                  std::uint64_t seed, unsigned threads) {
    const auto* threshold_rule = std::get_if<MeanAtLeast>(&rule.variant);
    if (!threshold_rule)
        throw Error(ErrorCode::RecordedLabelsUnsupported, "recorded labels do not change under resampling");
    if (iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    const double tau = threshold_rule->threshold;
    if (!std::isfinite(tau) || !ratings.scale().contains(tau))
        throw Error(ErrorCode::ThresholdOutOfScale, "threshold " + std::to_string(tau) + " outside the rating scale");

    const std::size_t n = ratings.n_criteria();
    const std::size_t r = ratings.n_experts();
    const double rd = static_cast<double>(r);

    std::vector<double> base_mean(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto row = ratings.row(j);
        base_mean[j] = static_cast<double>(std::accumulate(row.begin(), row.end(), 0LL)) / rd;
    }
    // Means of equal-size panels are sums over r: exact comparison is safe.
    const auto base_signs = pair_signs(base_mean, 0.0);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, Tally& tally) {
        std::vector<std::size_t> draw(r);
        std::vector<double> mean(n);
        for (std::uint64_t it = begin; it < end; ++it) {
            IndexSampler sampler(seed, it);
            for (auto& d : draw) d = sampler.next(r);
            for (std::size_t j = 0; j < n; ++j) {
                long long sum = 0;
                for (auto k : draw) sum += ratings.at(j, k);
                mean[j] = static_cast<double>(sum) / rd;
                if (mean[j] >= tau) ++tally.accepted[j];
            }
            auto pos = positions(mean, ratings.criteria());
            for (std::size_t j = 0; j < n; ++j) ++tally.histogram[j][pos[j]];
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (a != b && sign_of(mean[a], mean[b], 0.0) != base_signs[a * n + b]) ++tally.flips[a * n + b];
        }
    };

    Tally total(n);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(iterations, 1024))));
    if (workers == 1) {
        run_range(0, iterations, total);
    } else {
        std::vector<Tally> partial(workers, Tally(n));
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                const std::uint64_t begin = iterations * w / workers;
                const std::uint64_t end = iterations * (w + 1) / workers;
                pool.emplace_back([&, w, begin, end] { run_range(begin, end, partial[w]); });
            }
        }
        for (const auto& p : partial) total.merge(p);
    }

    StabilityReport report;
    report.kind = StabilityKind::Bootstrap;
    report.criteria = ratings.criteria();
    report.acceptance_rate = rates(total.accepted, iterations);
    report.rank_histogram = std::move(total.histogram);
    report.pair_flip = rates(total.flips, iterations);
    report.iterations = iterations;
    report.seed = seed;
    return report;
}

StabilityReport perturb_s(const SwaraInput& input, double epsilon, int grid_points, SwaraVariant variant) {
    if (!(epsilon >= 0) || !std::isfinite(epsilon)) throw Error(ErrorCode::NegativeEpsilon, "epsilon must be >= 0");
    if (grid_points < 1) throw Error(ErrorCode::InvalidArgument, "grid must have at least 1 point");
    if (input.empty()) throw Error(ErrorCode::EmptyInput, "no criteria to perturb");

    constexpr double kTieTol = 1e-12;
    const std::size_t n = input.size();
    std::vector<Criterion> criteria;
    for (const auto& e : input.entries()) criteria.push_back(e.criterion);

    auto weights_of = [&](const SwaraInput& in) {
        auto result = swara(in, variant);
        std::vector<double> w;
        for (const auto& r : result.records) w.push_back(r.w);
        return w;
    };
    auto top_group = [&](const std::vector<int>& signs) {
        std::vector<bool> top(n, true);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (signs[a * n + b] < 0) top[a] = false;
        return top;
    };

    const auto base_signs = pair_signs(weights_of(input), kTieTol);
    const auto base_top = top_group(base_signs);

    Tally tally(n);
    StabilityReport report;
    report.kind = StabilityKind::Perturbation;
    report.criteria = criteria;
    report.epsilon = epsilon;
    report.grid_points = grid_points;
    report.iterations = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(grid_points);

    for (std::size_t j = 0; j < n; ++j) {
        const double s = input.entries()[j].s;
        const double lo = std::max(0.0, s - epsilon);
        const double hi = s + epsilon;
        std::uint64_t top_changes = 0;
        std::uint64_t order_changes = 0;
        std::vector<double> boundaries;
        std::vector<int> previous;
        double previous_point = 0;

        for (int g = 0; g < grid_points; ++g) {
            const double point = grid_points == 1 ? s : lo + (hi - lo) * g / (grid_points - 1);
            auto entries = input.entries();
            entries[j].s = point;
            auto w = weights_of(SwaraInput(std::move(entries)));

            auto pos = positions(w, criteria);
            for (std::size_t c = 0; c < n; ++c) ++tally.histogram[c][pos[c]];
            auto signs = pair_signs(w, kTieTol);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (signs[a * n + b] != base_signs[a * n + b]) ++tally.flips[a * n + b];
            if (signs != base_signs) ++order_changes;
            if (top_group(signs) != base_top) ++top_changes;
            if (!previous.empty() && signs != previous) boundaries.push_back((previous_point + point) / 2.0);
            previous = std::move(signs);
            previous_point = point;
        }
        report.top1_change_rate.push_back(static_cast<double>(top_changes) / grid_points);
        report.ranking_change_rate.push_back(static_cast<double>(order_changes) / grid_points);
        report.flip_boundaries.push_back(std::move(boundaries));
    }

    report.rank_histogram = std::move(tally.histogram);
    report.pair_flip = rates(tally.flips, report.iterations);
    return report;
}

}  // namespace panelrank
