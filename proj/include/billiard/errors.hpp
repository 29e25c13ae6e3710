#pragma once

#include <stdexcept>
#include <string>

namespace billiard {

// Bad argument / precondition violation (maps to CLI exit code 2).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Root bracket carries no sign change.
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A function evaluation produced a non-finite value.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iteration failed to converge; carries the last two iterates.
struct ConvergenceError : std::runtime_error {
    double last;
    double previous;
    ConvergenceError(const std::string& msg, double last_, double previous_)
        : std::runtime_error(msg), last(last_), previous(previous_) {}
};

// A requested inverse problem has no solution in the searched range.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace billiard
