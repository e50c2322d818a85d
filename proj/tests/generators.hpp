#ifndef PANELRANK_TESTS_GENERATORS_HPP
#define PANELRANK_TESTS_GENERATORS_HPP

// Hand-rolled generators for the property tests. Each takes the engine by
// reference so a test can replay a failing case from its seed.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "panelrank/delphi.hpp"
#include "panelrank/model.hpp"

namespace gen {

using Engine = std::mt19937_64;

inline int uniform_int(Engine& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform_real(Engine& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::vector<panelrank::Criterion> criteria(std::size_t n) {
    std::vector<panelrank::Criterion> out;
    for (std::size_t j = 0; j < n; ++j)
        out.push_back({"C" + std::to_string(j + 1), "Criterion " + std::to_string(j + 1), static_cast<int>(j) + 1});
    return out;
}

inline std::vector<panelrank::ExpertProfile> experts(std::size_t r) {
    std::vector<panelrank::ExpertProfile> out;
    for (std::size_t k = 0; k < r; ++k) {
        panelrank::ExpertProfile e;
        e.id = "E" + std::to_string(k + 1);
        out.push_back(e);
    }
    return out;
}

inline panelrank::RatingMatrix ratings(Engine& rng, std::size_t n, std::size_t r, int lo = 1, int hi = 5) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(r));
    for (auto& row : rows)
        for (auto& v : row) v = uniform_int(rng, lo, hi);
    return panelrank::RatingMatrix::create(criteria(n), experts(r), panelrank::LikertScale{lo, hi}, rows);
}

/// Each column a uniformly random permutation of 1..n.
inline panelrank::RankMatrix tie_free_ranks(Engine& rng, std::size_t n, std::size_t r) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(r));
    std::vector<double> perm(n);
    for (std::size_t k = 0; k < r; ++k) {
        std::iota(perm.begin(), perm.end(), 1.0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t j = 0; j < n; ++j) rows[j][k] = perm[j];
    }
    return panelrank::RankMatrix::create(criteria(n), experts(r), rows);
}

/// Average ranks of coarse random scores, so ties are common.
inline panelrank::RankMatrix tied_ranks(Engine& rng, std::size_t n, std::size_t r, int levels = 3) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(r));
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<double> scores(n);
        for (auto& s : scores) s = uniform_int(rng, 1, levels);
        auto ranks = panelrank::average_ranks(scores, true);
        for (std::size_t j = 0; j < n; ++j) rows[j][k] = ranks[j];
    }
    return panelrank::RankMatrix::create(criteria(n), experts(r), rows);
}

inline panelrank::SwaraInput svalues(Engine& rng, std::size_t n, double max_s = 1.0) {
    auto crit = criteria(n);
    std::vector<panelrank::SwaraEntry> entries;
    for (auto& c : crit) entries.push_back({c, uniform_real(rng, 0.0, max_s)});
    return panelrank::SwaraInput(std::move(entries));
}

}  // namespace gen

#endif
