#pragma once

#include <stdexcept>
#include <string>

namespace og {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value fell outside the finite set it was typed against.
struct DomainError : Error {
    using Error::Error;
};

// Composition of games or lenses whose boundaries do not line up.
struct BoundaryMismatch : Error {
    using Error::Error;
};

// An exhaustive enumeration would exceed the configured cap.
struct EnumerationCapExceeded : Error {
    using Error::Error;
};

struct NotScalar : Error {
    using Error::Error;
};

struct ContextTypeError : Error {
    using Error::Error;
};

struct IncompleteProfile : Error {
    using Error::Error;
};

struct NonNumericOutcome : Error {
    using Error::Error;
};

struct OutcomeTypeMismatch : Error {
    using Error::Error;
};

} // namespace og
