// Bundled expert-panel study on blockchain smart-contract success factors.
// Values are transcribed verbatim from the published tables, including rows
// that disagree with the study's own arithmetic; see report::audit.

#include <array>
#include <string_view>

#include "panelrank/ingest.hpp"

namespace panelrank {

namespace {

struct PanelRow {
    std::string_view id;
    std::string_view education;
    int years;
};

constexpr std::array<PanelRow, 7> kPanel{{
    {"Expert.1", "Ph.D.", 10},
    {"Expert.2", "MASTER.", 11},
    {"Expert.3", "Ph.D.", 14},
    {"Expert.4", "Ph.D.", 22},
    {"Expert.5", "MASTER", 9},
    {"Expert.6", "MASTER", 12},
    {"Expert.7", "Ph.D.", 8},
}};

// Codes are kept exactly as printed next to each label, even where the
// pairing looks shifted (e.g. Turnover/RPA). The catalogue has 27 rows
// although the accompanying text speaks of twenty-six.
struct CatalogueRow {
    std::string_view code;
    std::string_view label;
};

constexpr std::array<CatalogueRow, 27> kCatalogue{{
    {"PF", "Manufacturing Plants"},
    {"QMI", "Purpose of Quality Management"},
    {"QSO", "System Outcome Quality"},
    {"CL", "Claims"},
    {"QI", "Enhancement of Quality"},
    {"De", "Delivery"},
    {"RC", "The Counter Argument"},
    {"OD", "Prompt shipping"},
    {"MO", "In charge: administration and structure"},
    {"OC", "Management of an Organization"},
    {"BP", "Strategic plans"},
    {"CC", "Conversations with Clients"},
    {"IA", "A Check From Inside"},
    {"DA", "Management of information"},
    {"CO", "Vision"},
    {"FL", "Stability in the bank account"},
    {"VIS", "In a Healthy Way Environment"},
    {"FOP", "Mechanics of Coordination"},
    {"HSE", "Connections with government entities"},
    {"ENC", "Subcontractors The Guarantee of Quality"},
    {"RPA", "Turnover"},
    {"SQA", "Components for Building"},
    {"TNO", "Strategies for Subcontractors"},
    {"COR", "The Proposal's Potential Social Effects"},
    {"SUS", "Cost"},
    {"SIP", "Dependability Constant"},
    {"COS", "adaptability"},
}};

struct RatingRow {
    std::array<int, 7> scores;
    double average;
    Decision decision;
};

constexpr auto A = Decision::Accept;
constexpr auto R = Decision::Reject;

// Same row order as kCatalogue.
constexpr std::array<RatingRow, 27> kRatings{{
    {{4, 3, 4, 4, 1, 3, 5}, 3.428571, A},
    {{5, 4, 3, 5, 4, 3, 2}, 3.714286, A},
    {{1, 4, 4, 1, 1, 3, 1}, 2.142857, A},
    {{1, 5, 2, 3, 3, 5, 5}, 3.428571, A},
    {{4, 1, 5, 2, 1, 5, 3}, 3, A},
    {{5, 5, 3, 4, 5, 3, 3}, 4, A},
    {{1, 4, 3, 4, 5, 1, 3}, 3, A},
    {{3, 2, 3, 3, 5, 5, 1}, 3.142857, A},
    {{1, 3, 1, 2, 2, 4, 1}, 2, R},
    {{5, 5, 5, 5, 5, 3, 3}, 4.428571, R},
    {{2, 5, 4, 1, 1, 3, 1}, 2.428571, R},
    {{3, 2, 2, 3, 2, 4, 1}, 2.428571, A},
    {{4, 3, 4, 2, 5, 5, 2}, 3.571429, A},
    {{3, 3, 1, 5, 5, 4, 4}, 3.571429, R},
    {{5, 4, 2, 3, 4, 1, 1}, 2.857143, A},
    {{1, 2, 3, 3, 2, 4, 3}, 2.571429, A},
    {{5, 3, 3, 2, 1, 4, 5}, 3.285714, A},
    {{2, 4, 3, 2, 4, 2, 1}, 2.571429, A},
    {{2, 3, 1, 4, 3, 2, 1}, 2.285714, A},
    {{4, 5, 1, 2, 2, 1, 3}, 2.571429, A},
    {{1, 2, 2, 3, 4, 1, 5}, 2.571429, A},
    {{5, 1, 1, 3, 4, 3, 4}, 3, A},
    {{1, 5, 2, 4, 1, 5, 3}, 3, A},
    {{5, 4, 1, 1, 4, 2, 1}, 2.571429, A},
    {{4, 5, 4, 1, 4, 5, 1}, 3.428571, A},
    {{3, 3, 2, 5, 1, 1, 2}, 2.428571, A},
    {{2, 2, 1, 5, 3, 5, 1}, 2.714286, A},
}};

// Weight table rows, printed by label; each label is the catalogue entry at
// the same position, so the codes below follow catalogue order PF..SQA.
struct WeightRow {
    std::string_view code;
    double s;
    double k;
    double w;
};

constexpr std::array<WeightRow, 22> kWeights{{
    {"PF", 0.27142857, 1.271429, 0.044533},
    {"QMI", 0.34285714, 1.342857, 0.047035},
    {"QSO", 0.35714286, 1.357143, 0.047536},
    {"CL", 0.28571429, 1.285714, 0.045034},
    {"QI", 0.24285714, 1.242857, 0.043533},
    {"De", 0.25714286, 1.257143, 0.044033},
    {"RC", 0.41428571, 1.414286, 0.049537},
    {"OD", 0.3, 1.3, 0.045534},
    {"MO", 0.32857143, 1.328571, 0.046535},
    {"OC", 0.32857143, 1.328571, 0.046535},
    {"BP", 0.2, 1.2, 0.042032},
    {"CC", 0.3, 1.3, 0.045534},
    {"IA", 0.34285714, 1.342857, 0.047035},
    {"DA", 0.31428571, 1.314286, 0.046035},
    {"CO", 0.37142857, 1.371429, 0.048036},
    {"FL", 0.35714286, 1.357143, 0.047536},
    {"VIS", 0.22857143, 1.228571, 0.043032},
    {"FOP", 0.3, 1.3, 0.045534},
    {"HSE", 0.24285714, 1.242857, 0.043533},
    {"ENC", 0.24285714, 1.242857, 0.043533},
    {"RPA", 0.2, 1.2, 0.054},
    {"SQA", 0.32857143, 1.328571, 0.048},
}};

ProjectBundle build() {
    std::vector<ExpertProfile> panel;
    for (const auto& p : kPanel) {
        ExpertProfile e;
        e.id = std::string(p.id);
        parse_education(p.education, e);
        e.experience_years = p.years;
        panel.push_back(std::move(e));
    }

    std::vector<Criterion> catalogue;
    for (std::size_t i = 0; i < kCatalogue.size(); ++i)
        catalogue.push_back({std::string(kCatalogue[i].code), std::string(kCatalogue[i].label), static_cast<int>(i) + 1});

    std::vector<std::vector<int>> grid;
    ReferenceTables reference;
    for (std::size_t i = 0; i < kRatings.size(); ++i) {
        grid.emplace_back(kRatings[i].scores.begin(), kRatings[i].scores.end());
        reference.table3.push_back({catalogue[i].code, kRatings[i].average, kRatings[i].decision});
    }

    std::vector<SwaraEntry> svalues;
    for (std::size_t i = 0; i < kWeights.size(); ++i) {
        const auto& c = catalogue[i];
        svalues.push_back({c, kWeights[i].s});
        reference.table4.push_back({c.code, c.label, kWeights[i].s, kWeights[i].k, kWeights[i].w});
    }

    auto ratings = RatingMatrix::create(catalogue, panel, LikertScale{1, 5}, grid);
    ProjectBundle bundle{std::move(panel), std::move(catalogue), std::move(ratings), SwaraInput(std::move(svalues)),
                         std::move(reference)};
    validate_bundle(bundle);
    return bundle;
}

}  // namespace

const ProjectBundle& load_paper_dataset() {
    static const ProjectBundle bundle = build();
    return bundle;
}

}  // namespace panelrank
