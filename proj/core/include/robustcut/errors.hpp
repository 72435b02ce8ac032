#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robustcut {

/// Caller supplied something outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed file content. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line)
        : InputError(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A certificate or postcondition check failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace robustcut
