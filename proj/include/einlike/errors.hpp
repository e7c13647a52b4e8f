#pragma once

#include <stdexcept>
#include <string>

namespace einlike {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax or validation error while parsing an expression.
/// `offset` is the byte offset into the source text at which the error was detected.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset)
        : Error(message + " (offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Numerical domain violation during evaluation (log of non-positive value,
/// division by zero, ...). Carries the offending subexpression and the point.
class DomainError : public Error {
public:
    DomainError(const std::string& what_failed, const std::string& subexpr,
                const std::string& point_desc)
        : Error(what_failed + " in '" + subexpr + "' at " + point_desc) {}
};

/// Degenerate or mis-declared metric at an evaluation point.
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& msg) : Error(msg) {}
};

/// Invalid manifest or CLI input.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

} // namespace einlike
