#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Base for all library errors so callers can catch everything at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction found a structural count or identity that does not hold.
// Always a hard error: downstream stages must never see a malformed object.
struct InvariantViolation : Error {
    using Error::Error;
};

struct NotPrime : Error {
    explicit NotPrime(unsigned long long v)
        : Error("not a prime (or prime power): " + std::to_string(v)) {}
};

struct CapExceeded : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("inverse of zero") {}
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct Timeout : Error {
    explicit Timeout(unsigned long long budget)
        : Error("search budget exhausted: " + std::to_string(budget) + " nodes") {}
};

struct EmptyX : Error {
    EmptyX() : Error("vertex subset X is empty") {}
};

struct NotIndependent : Error {
    using Error::Error;
};

struct ConditionViolated : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct SizeExceedsN : Error {
    using Error::Error;
};

// A file could not be opened, or its contents do not parse as the format
// they claim to be.
struct IoError : Error {
    using Error::Error;
};

} // namespace ramsey
