#include "wefsub/errors.hpp"

namespace wefsub {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::WeightSum: return "WeightSumError";
        case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorKind::NonMonotoneValuation: return "NonMonotoneValuation";
        case ErrorKind::UnboundedValuation: return "UnboundedValuation";
        case ErrorKind::NotSupermodular: return "NotSupermodular";
        case ErrorKind::CheckTooLarge: return "CheckTooLarge";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InvalidInstance: return "InvalidInstance";
        case ErrorKind::InvalidAllocation: return "InvalidAllocation";
        case ErrorKind::InvalidOutcome: return "InvalidOutcome";
        case ErrorKind::WrongValuationKind: return "WrongValuationKind";
        case ErrorKind::WrongAgentCount: return "WrongAgentCount";
        case ErrorKind::DegenerateInstance: return "DegenerateInstance";
        case ErrorKind::NotEnvyFreeable: return "NotEnvyFreeable";
        case ErrorKind::NegativeBudget: return "NegativeBudget";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::InternalPathError: return "InternalPathError";
        case ErrorKind::UnknownFixture: return "UnknownFixture";
        case ErrorKind::FixtureMismatch: return "FixtureMismatch";
    }
    return "Error";
}

namespace {

std::string describe(const std::vector<ValidationError::Violation>& violations) {
    std::string msg;
    for (const auto& v : violations) {
        if (!msg.empty()) msg += "; ";
        msg += std::string(error_kind_name(v.kind)) + ": " + v.detail;
    }
    return msg;
}

ErrorKind first_kind(const std::vector<ValidationError::Violation>& violations) {
    return violations.empty() ? ErrorKind::InvalidInstance : violations.front().kind;
}

std::string describe_cycle(const std::vector<std::size_t>& cycle) {
    std::string msg = "positive cycle";
    for (std::size_t i = 0; i <= cycle.size() && !cycle.empty(); ++i) {
        msg += (i ? " -> " : " ") + std::to_string(cycle[i % cycle.size()] + 1);
    }
    return msg;
}

}  // namespace

// The first violation's kind becomes the error kind; the message lists all of them.
ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(first_kind(violations), describe(violations)), violations_(std::move(violations)) {}

NotEnvyFreeableError::NotEnvyFreeableError(std::vector<std::size_t> cycle)
    : Error(ErrorKind::NotEnvyFreeable, describe_cycle(cycle)), cycle_(std::move(cycle)) {}

}  // namespace wefsub
