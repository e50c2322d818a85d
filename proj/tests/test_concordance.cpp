#include <doctest.h>

#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "support.hpp"
#include "panelrank/concordance.hpp"
#include "panelrank/ingest.hpp"

using namespace panelrank;
using support::code_of;

namespace {

RankMatrix by_columns(const std::vector<std::vector<double>>& cols) {
    const std::size_t n = cols[0].size();
    std::vector<std::vector<double>> rows(n, std::vector<double>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) rows[j][k] = cols[k][j];
    return RankMatrix::create(gen::criteria(n), gen::experts(cols.size()), rows);
}

}  // namespace

TEST_CASE("perfect agreement gives W = 1") {
    auto rep = kendalls_w(by_columns({{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}}));
    CHECK(rep.w == doctest::Approx(1.0));
    CHECK(rep.r == 3);
    CHECK(rep.n == 4);
}

TEST_CASE("three raters, one reversed") {
    auto rep = kendalls_w(by_columns({{1, 2, 3}, {3, 2, 1}, {1, 2, 3}}));
    CHECK(rep.s_statistic == doctest::Approx(2.0));
    CHECK(rep.w == doctest::Approx(1.0 / 9.0));
    CHECK(std::abs(rep.w - 0.1111) < 1e-4);
}

TEST_CASE("two opposite raters give W = 0") {
    auto rep = kendalls_w(by_columns({{1, 2, 3, 4}, {4, 3, 2, 1}}));
    CHECK(rep.w == doctest::Approx(0.0));
}

TEST_CASE("tie correction on a two-item case") {
    auto rep = kendalls_w(by_columns({{1, 2}, {1.5, 1.5}}));
    CHECK(rep.tie_corrections == std::vector<double>{0, 6});
    CHECK(rep.s_statistic == doctest::Approx(0.5));
    CHECK(rep.w == doctest::Approx(0.5));
    auto raw = kendalls_w(by_columns({{1, 2}, {1.5, 1.5}}), TieCorrection::Ignore);
    CHECK(raw.w == doctest::Approx(0.25));
}

TEST_CASE("all-tied input is degenerate") {
    CHECK(code_of([] { kendalls_w(by_columns({{1.5, 1.5}, {1.5, 1.5}})); }) == ErrorCode::DegenerateDenominator);
    CHECK(code_of([] { kendalls_w(by_columns({{2, 2, 2}, {2, 2, 2}, {2, 2, 2}})); }) ==
          ErrorCode::DegenerateDenominator);
}

TEST_CASE("a single item is rejected") {
    CHECK(code_of([] { kendalls_w(by_columns({{1}, {1}})); }) == ErrorCode::TooFewCriteria);
}

TEST_CASE("spearman rejects ties") {
    CHECK(code_of([] { mean_pairwise_spearman(by_columns({{1, 2}, {1.5, 1.5}})); }) == ErrorCode::TiesPresent);
}

TEST_CASE("W on the published grid") {
    const auto& b = load_paper_dataset();
    auto rep = kendalls_w(ratings_to_ranks(b.ratings, RankDirection::HigherIsBetter));
    CHECK(rep.n == 27);
    CHECK(rep.r == 7);
    CHECK(rep.w > 0);
    CHECK(rep.w < 1);
}

TEST_CASE("property: W lies in [0, 1]") {
    gen::Engine rng(21);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 20));
        const auto r = static_cast<std::size_t>(gen::uniform_int(rng, 2, 10));
        auto ranks = trial % 2 ? gen::tie_free_ranks(rng, n, r) : gen::tied_ranks(rng, n, r, 4);
        try {
            auto rep = kendalls_w(ranks);
            REQUIRE(rep.w >= 0);
            REQUIRE(rep.w <= 1);
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::DegenerateDenominator);
        }
    }
}

TEST_CASE("property: W matches the mean pairwise Spearman identity") {
    gen::Engine rng(23);
    for (int trial = 0; trial < 1500; ++trial) {
        const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 25));
        const auto r = static_cast<std::size_t>(gen::uniform_int(rng, 2, 12));
        auto ranks = gen::tie_free_ranks(rng, n, r);
        const double rho = mean_pairwise_spearman(ranks);
        const double expected = ((r - 1.0) * rho + 1.0) / r;
        REQUIRE(std::abs(kendalls_w(ranks).w - expected) < 1e-9);
    }
}

TEST_CASE("property: tie correction never lowers W") {
    gen::Engine rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        auto ranks = gen::tied_ranks(rng, gen::uniform_int(rng, 2, 15), gen::uniform_int(rng, 2, 8), 3);
        try {
            auto with = kendalls_w(ranks, TieCorrection::Apply);
            auto without = kendalls_w(ranks, TieCorrection::Ignore);
            REQUIRE(with.w >= without.w - 1e-12);
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::DegenerateDenominator);
        }
    }
}

TEST_CASE("property: W ignores rater and item order") {
    gen::Engine rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 15));
        const auto r = static_cast<std::size_t>(gen::uniform_int(rng, 2, 8));
        auto ranks = gen::tied_ranks(rng, n, r, 5);
        std::vector<std::size_t> pn(n), pr(r);
        std::iota(pn.begin(), pn.end(), 0);
        std::iota(pr.begin(), pr.end(), 0);
        std::shuffle(pn.begin(), pn.end(), rng);
        std::shuffle(pr.begin(), pr.end(), rng);
        std::vector<std::vector<double>> rows(n, std::vector<double>(r));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < r; ++k) rows[j][k] = ranks.at(pn[j], pr[k]);
        auto shuffled = RankMatrix::create(gen::criteria(n), gen::experts(r), rows);
        try {
            REQUIRE(kendalls_w(ranks).w == doctest::Approx(kendalls_w(shuffled).w).epsilon(1e-12));
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::DegenerateDenominator);
        }
    }
}
