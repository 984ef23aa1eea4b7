#include "gaq/error.hpp"
#include "gaq/types.hpp"

namespace gaq {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::NodeIdOutOfRange: return "NodeIdOutOfRange";
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::ZeroSignal: return "ZeroSignal";
        case ErrorCode::NonFiniteCovariate: return "NonFiniteCovariate";
        case ErrorCode::ZeroCovariateColumn: return "ZeroCovariateColumn";
        case ErrorCode::RankZero: return "RankZero";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EmptyActiveSet: return "EmptyActiveSet";
        case ErrorCode::DegenerateCovariates: return "DegenerateCovariates";
        case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
        case ErrorCode::InvalidBudget: return "InvalidBudget";
        case ErrorCode::BarrierViolated: return "BarrierViolated";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::BudgetExceedsN: return "BudgetExceedsN";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::NonFiniteResponse: return "NonFiniteResponse";
        case ErrorCode::InvalidClassLabel: return "InvalidClassLabel";
        case ErrorCode::EmptyMask: return "EmptyMask";
        case ErrorCode::GenerationFailed: return "GenerationFailed";
        case ErrorCode::IndexRangeInvalid: return "IndexRangeInvalid";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::EmptyLabelIntersection: return "EmptyLabelIntersection";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool Error::is_input_error() const noexcept {
    switch (code_) {
        case ErrorCode::ParseError:
        case ErrorCode::InvalidConfig:
        case ErrorCode::DisconnectedGraph:
        case ErrorCode::NodeIdOutOfRange:
        case ErrorCode::NegativeWeight:
        case ErrorCode::SelfLoop:
        case ErrorCode::NonFiniteCovariate:
        case ErrorCode::ZeroCovariateColumn:
            return true;
        default:
            return false;
    }
}

std::vector<bool> node_mask(Index n, const std::vector<NodeId>& nodes) {
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    for (NodeId v : nodes) {
        if (v >= 0 && v < n) mask[static_cast<std::size_t>(v)] = true;
    }
    return mask;
}

}  // namespace gaq
