#pragma once

#include <stdexcept>
#include <string>

namespace jacsplit {

/// Base of every error thrown by the library. `code()` is a stable,
/// machine-readable identifier (dotted, lower case) used by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Caller supplied parameters outside an operation's precondition.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what, std::string code = "precondition")
        : Error(std::move(code), what) {}
};

/// Operands living in different fields or rings.
class MixedFieldError : public Error {
public:
    explicit MixedFieldError(const std::string& what) : Error("mixed_fields", what) {}
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error("division_by_zero", what) {}
};

/// An exhaustive enumeration would exceed the configured element guard.
class GuardExceeded : public Error {
public:
    explicit GuardExceeded(const std::string& what) : Error("guard_exceeded", what) {}
};

/// A result contradicts a proven identity (e.g. a count violating the
/// Weil bound). Always indicates a bug, never bad input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal", what) {}
};

}  // namespace jacsplit
