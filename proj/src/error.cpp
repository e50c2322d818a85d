#include "panelrank/error.hpp"

namespace panelrank {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::RaggedGrid: return "RaggedGrid";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyId: return "EmptyId";
    case ErrorCode::TooFewExperts: return "TooFewExperts";
    case ErrorCode::TooFewCriteria: return "TooFewCriteria";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::InvalidCatalogue: return "InvalidCatalogue";
    case ErrorCode::InvalidRanking: return "InvalidRanking";
    case ErrorCode::NonPositiveRank: return "NonPositiveRank";
    case ErrorCode::NegativeExperience: return "NegativeExperience";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::ThresholdOutOfScale: return "ThresholdOutOfScale";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeS: return "NegativeS";
    case ErrorCode::SingleRater: return "SingleRater";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::TiesPresent: return "TiesPresent";
    case ErrorCode::RecordedLabelsUnsupported: return "RecordedLabelsUnsupported";
    case ErrorCode::NegativeEpsilon: return "NegativeEpsilon";
    case ErrorCode::UnknownCode: return "UnknownCode";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail, std::optional<CellRef> cell)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      cell_(std::move(cell)) {}

}  // namespace panelrank
