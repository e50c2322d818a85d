#ifndef PANELRANK_SENSITIVITY_HPP
#define PANELRANK_SENSITIVITY_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "panelrank/model.hpp"

namespace panelrank {

enum class StabilityKind { Bootstrap, Perturbation };

struct StabilityReport {
    StabilityKind kind = StabilityKind::Bootstrap;
    std::vector<Criterion> criteria;

    // Bootstrap only: fraction of draws in which each criterion was accepted.
    std::vector<double> acceptance_rate;
    // rank_histogram[j][p] counts evaluations placing criterion j at rank p + 1.
    std::vector<std::vector<std::uint64_t>> rank_histogram;
    // n x n row-major; fraction of evaluations in which the pair's order
    // (greater, equal, less) differs from the unperturbed order.
    std::vector<double> pair_flip;

    // Perturbation only, one entry per swept criterion.
    std::vector<double> top1_change_rate;
    std::vector<double> ranking_change_rate;
    std::vector<std::vector<double>> flip_boundaries;

    std::uint64_t iterations = 0;
    std::uint64_t seed = 0;
    double epsilon = 0;
    int grid_points = 0;

    double flip(std::size_t a, std::size_t b) const { return pair_flip[a * criteria.size() + b]; }
};

/// SplitMix64 finalizer; derives the per-iteration generator seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform index in [0, bound) drawn from std::mt19937_64 by rejection
/// sampling. The engine output is fixed by the standard, unlike the
/// standard distributions, so draws are identical on every platform.
/// The engine is seeded with splitmix64(splitmix64(seed) ^ stream).
class IndexSampler {
public:
    IndexSampler(std::uint64_t seed, std::uint64_t stream);
    std::size_t next(std::size_t bound);

private:
    std::mt19937_64 engine_;
};

/// Resamples expert columns with replacement and re-screens each draw.
/// Only threshold rules are accepted. Iteration i draws from a generator
/// seeded with splitmix64(seed, i), so any thread count gives the same report.
StabilityReport bootstrap_experts(const RatingMatrix& ratings, const ScreeningRule& rule, std::uint64_t iterations,
                                  std::uint64_t seed, unsigned threads = 1);

/// Sweeps each s_j over [max(0, s_j - eps), s_j + eps] on `grid_points`
/// evenly spaced values, others held fixed, and records rank changes.
/// Weights within 1e-12 (relative) count as tied.
StabilityReport perturb_s(const SwaraInput& input, double epsilon, int grid_points, SwaraVariant variant);

}  // namespace panelrank

#endif
