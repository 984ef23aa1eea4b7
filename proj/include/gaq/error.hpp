#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaq {

enum class ErrorCode {
    // graph_core
    DisconnectedGraph,
    NegativeWeight,
    SelfLoop,
    NodeIdOutOfRange,
    InvalidDimension,
    ZeroSignal,
    // covariate_space
    NonFiniteCovariate,
    ZeroCovariateColumn,
    RankZero,
    DimensionMismatch,
    // informative
    EmptyActiveSet,
    DegenerateCovariates,
    // representative / selector
    EpsilonOutOfRange,
    InvalidBudget,
    BarrierViolated,
    BudgetExhausted,
    BudgetExceedsN,
    InvalidConfig,
    // recovery
    NonFiniteResponse,
    InvalidClassLabel,
    EmptyMask,
    // synthgen
    GenerationFailed,
    IndexRangeInvalid,
    // ingestion
    ParseError,
    EmptyLabelIntersection,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

    /// Input errors (malformed files, bad config) map to CLI exit code 2,
    /// everything else to exit code 3.
    bool is_input_error() const noexcept;

private:
    ErrorCode code_;
};

}  // namespace gaq
