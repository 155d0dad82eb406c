#pragma once

#include <stdexcept>
#include <string>

namespace uqsd {

enum class Error {
    DimensionMismatch,
    UnnormalizedState,
    LinearlyDependent,
    BadPriors,
    NotPsd,
    WrongArity,
    NotEquilateral,
    UnsupportedComplexCase,
    DegenerateReduction,
    TriangleClosureFailure,
    BadArgument,
    Internal,
};

const char* error_name(Error e);

/// Typed failure carrying one of the Error codes above plus a message
/// naming the offending quantity.
class UqsdError : public std::runtime_error {
public:
    UqsdError(Error code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Error code() const { return code_; }

private:
    Error code_;
};

[[noreturn]] inline void fail(Error code, const std::string& what) {
    throw UqsdError(code, what);
}

} // namespace uqsd
