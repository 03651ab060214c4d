#pragma once

#include <stdexcept>
#include <string>

namespace qcong {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two series over incompatible coefficient rings were combined.
struct RingMismatchError : Error {
    explicit RingMismatchError(const std::string& msg) : Error(msg) {}
};

// An operation would consume coefficients beyond the known truncation,
// or an input was not computed to the precision a computation needs.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

struct NonInvertibleError : Error {
    explicit NonInvertibleError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Invalid mathematical input (bad discriminant, wrong residue class, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A consistency check between two computation paths failed.
struct IdentityError : Error {
    explicit IdentityError(const std::string& msg) : Error(msg) {}
};

// Bad command-line usage.
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

} // namespace qcong
