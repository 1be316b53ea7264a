#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wefsub {

enum class ErrorKind {
    Parse,
    WeightSum,
    NonPositiveWeight,
    NonMonotoneValuation,
    UnboundedValuation,
    NotSupermodular,
    CheckTooLarge,
    TooLarge,
    InvalidInstance,
    InvalidAllocation,
    InvalidOutcome,
    WrongValuationKind,
    WrongAgentCount,
    DegenerateInstance,
    NotEnvyFreeable,
    NegativeBudget,
    InternalInconsistency,
    InternalPathError,
    UnknownFixture,
    FixtureMismatch,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // Errors caused by the input (as opposed to a bug in this library).
    bool is_input_error() const noexcept {
        return kind_ != ErrorKind::InternalInconsistency && kind_ != ErrorKind::InternalPathError;
    }

private:
    ErrorKind kind_;
};

// Raised by validate_instance; carries every violation found, not only the first.
class ValidationError : public Error {
public:
    struct Violation {
        ErrorKind kind;
        std::string detail;
    };

    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Raised when an operation needs an envy-freeable allocation; holds a positive cycle.
class NotEnvyFreeableError : public Error {
public:
    explicit NotEnvyFreeableError(std::vector<std::size_t> cycle);

    const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::size_t> cycle_;
};

}  // namespace wefsub
