#ifndef PANELRANK_ERROR_HPP
#define PANELRANK_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace panelrank {

enum class ErrorCode {
    RaggedGrid,
    OutOfScale,
    DuplicateId,
    EmptyId,
    TooFewExperts,
    TooFewCriteria,
    InvalidScale,
    InvalidCatalogue,
    InvalidRanking,
    NonPositiveRank,
    NegativeExperience,
    SchemaError,
    MissingLabel,
    ThresholdOutOfScale,
    EmptyInput,
    NegativeS,
    SingleRater,
    DegenerateDenominator,
    TiesPresent,
    RecordedLabelsUnsupported,
    NegativeEpsilon,
    UnknownCode,
    InvalidArgument,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Grid coordinate named by criterion code and expert id.
struct CellRef {
    std::string row;
    std::string col;
};

/// Every validation failure in the toolkit is reported through this type.
/// The message is prefixed with the error code name so that the CLI can
/// surface it verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail, std::optional<CellRef> cell = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::optional<CellRef>& cell() const noexcept { return cell_; }

private:
    ErrorCode code_;
    std::optional<CellRef> cell_;
};

}  // namespace panelrank

#endif
