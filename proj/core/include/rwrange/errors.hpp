#pragma once

#include <stdexcept>
#include <string>

namespace rwrange {

enum class ErrorCode {
    // graph construction
    NonPositiveWeight,
    SelfLoop,
    DuplicateEdge,
    Disconnected,
    UnknownVertex,
    // builders
    SizeOverflow,
    NotATree,
    LowInternalDegree,
    SpecInvariantViolated,
    DegreeTooSmall,
    // solvers / potential theory
    PartialFunction,
    DisconnectedSets,
    SolverDivergence,
    BallCoversGraph,
    HypothesisViolated,
    NotLayered,
    // experiments
    BudgetExceeded,
    NoReturnMass,
    InvalidInterval,
    InsufficientGrid,
    // front end
    ConfigInvalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace rwrange

#define RWRANGE_REQUIRE(cond, code, msg)                                  \
    do {                                                                  \
        if (!(cond)) ::rwrange::throw_error(::rwrange::ErrorCode::code, (msg)); \
    } while (0)
