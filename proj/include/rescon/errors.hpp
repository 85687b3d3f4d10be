#pragma once

#include <stdexcept>
#include <string>

namespace rescon {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input that cannot be parsed or fails schema validation (CLI exit code 2).
struct InputError : Error {
    using Error::Error;
};

// Probability mass sits where the reference distribution has none.
struct SupportError : Error {
    using Error::Error;
};

// Target state carries no resource, so a rate or ratio is undefined.
struct DegenerateTargetError : Error {
    using Error::Error;
};

// Projected atom count exceeds the configured cap.
struct OverflowGuardError : Error {
    using Error::Error;
};

// Construction and verification passes disagree beyond tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Iterative solver exhausted its step budget.
struct IterationLimitError : Error {
    using Error::Error;
};

}  // namespace rescon
