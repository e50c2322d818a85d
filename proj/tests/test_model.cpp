#include <doctest.h>

#include "panelrank/ingest.hpp"
#include "panelrank/model.hpp"

using namespace panelrank;

namespace {

std::vector<Criterion> criteria(std::initializer_list<const char*> codes) {
    std::vector<Criterion> out;
    int i = 0;
    for (auto c : codes) out.push_back({c, c, ++i});
    return out;
}

std::vector<ExpertProfile> experts(int n) {
    std::vector<ExpertProfile> out;
    for (int i = 1; i <= n; ++i) {
        ExpertProfile e;
        e.id = "Expert." + std::to_string(i);
        out.push_back(e);
    }
    return out;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("published grid validates") {
    const auto& b = load_paper_dataset();
    auto m = RatingMatrix::create(b.catalogue, b.panel, LikertScale{1, 5}, [&] {
        std::vector<std::vector<int>> rows;
        for (std::size_t j = 0; j < b.ratings.n_criteria(); ++j) {
            auto r = b.ratings.row(j);
            rows.emplace_back(r.begin(), r.end());
        }
        return rows;
    }());
    CHECK(m.n_criteria() == 27);
    CHECK(m.n_experts() == 7);
}

TEST_CASE("single cell grid is rejected for panel size") {
    CHECK(code_of([] { RatingMatrix::create(criteria({"PF"}), experts(1), {}, {{3}}); }) == ErrorCode::TooFewExperts);
}

TEST_CASE("out-of-scale value names the cell") {
    std::vector<std::vector<int>> rows{{1, 2, 3}, {2, 2, 6}, {1, 1, 1}};
    try {
        RatingMatrix::create(criteria({"PF", "QSO", "CL"}), experts(3), {1, 5}, rows);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfScale);
        REQUIRE(e.cell());
        CHECK(e.cell()->row == "QSO");
        CHECK(e.cell()->col == "Expert.3");
    }
    rows[1][2] = 0;
    CHECK(code_of([&] { RatingMatrix::create(criteria({"PF", "QSO", "CL"}), experts(3), {1, 5}, rows); }) ==
          ErrorCode::OutOfScale);
}

TEST_CASE("ragged grid and duplicate ids") {
    CHECK(code_of([] { RatingMatrix::create(criteria({"A", "B"}), experts(2), {}, {{1, 2}, {3}}); }) ==
          ErrorCode::RaggedGrid);
    CHECK(code_of([] { RatingMatrix::create(criteria({"A", "B"}), experts(2), {}, {{1, 2}}); }) == ErrorCode::RaggedGrid);
    CHECK(code_of([] { RatingMatrix::create(criteria({"A", "A"}), experts(2), {}, {{1, 2}, {3, 4}}); }) ==
          ErrorCode::DuplicateId);
    auto panel = experts(2);
    panel[1].id = panel[0].id;
    CHECK(code_of([&] { RatingMatrix::create(criteria({"A"}), panel, {}, {{1, 2}}); }) == ErrorCode::DuplicateId);
}

TEST_CASE("likert scale bounds") {
    CHECK(code_of([] { LikertScale(5, 5); }) == ErrorCode::InvalidScale);
    CHECK(code_of([] { LikertScale(5, 1); }) == ErrorCode::InvalidScale);
    LikertScale s;
    CHECK(s.min() == 1);
    CHECK(s.max() == 5);
}

TEST_CASE("catalogue ordinals must be contiguous") {
    auto c = criteria({"A", "B", "C"});
    CHECK_NOTHROW(validate_catalogue(c));
    c[2].ordinal = 5;
    CHECK(code_of([&] { validate_catalogue(c); }) == ErrorCode::InvalidCatalogue);
    c[2].code = "";
    CHECK(code_of([&] { validate_catalogue(c); }) == ErrorCode::EmptyId);
}

TEST_CASE("panel experience must be non-negative") {
    auto p = experts(2);
    p[0].experience_years = -1;
    CHECK(code_of([&] { validate_panel(p); }) == ErrorCode::NegativeExperience);
}

TEST_CASE("rank matrix column sums") {
    auto c = criteria({"A", "B", "C"});
    CHECK_NOTHROW(RankMatrix::create(c, experts(2), {{1, 2}, {2, 1}, {3, 3}}));
    CHECK_NOTHROW(RankMatrix::create(c, experts(2), {{1.5, 1}, {1.5, 2}, {3, 3}}));
    CHECK(code_of([&] { RankMatrix::create(c, experts(2), {{1, 1}, {1, 2}, {3, 3}}); }) == ErrorCode::InvalidRanking);
    CHECK(code_of([&] { RankMatrix::create(c, experts(2), {{0, 1}, {3, 2}, {3, 3}}); }) == ErrorCode::NonPositiveRank);
    CHECK(code_of([&] { RankMatrix::create(c, experts(1), {{1}, {2}, {3}}); }) == ErrorCode::TooFewExperts);
}

TEST_CASE("education spellings") {
    ExpertProfile e;
    parse_education("Ph.D.", e);
    CHECK(e.education == Education::PhD);
    parse_education("MASTER.", e);
    CHECK(e.education == Education::Master);
    parse_education("Bachelor", e);
    CHECK(e.education == Education::Other);
    CHECK(education_name(e) == "Bachelor");
}

TEST_CASE("swara input rejects negative and repeated s") {
    Criterion a{"A", "A", 1}, b{"B", "B", 2};
    CHECK(code_of([&] { SwaraInput({{a, 0.1}, {b, -0.1}}); }) == ErrorCode::NegativeS);
    CHECK(code_of([&] { SwaraInput({{a, 0.1}, {a, 0.2}}); }) == ErrorCode::DuplicateId);
    CHECK(SwaraInput({{a, 0.0}, {b, 0.5}}).size() == 2);
}

TEST_CASE("decision parsing") {
    CHECK(parse_decision("Accept") == Decision::Accept);
    CHECK(parse_decision("reject") == Decision::Reject);
    CHECK(code_of([] { parse_decision("maybe"); }) == ErrorCode::SchemaError);
}
