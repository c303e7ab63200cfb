#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace origin {

enum class ErrorKind {
    LexError,
    ParseError,
    TypeError,
    NameError,
    ArityError,
    IndexError,
    BudgetExceeded,
    FormatError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Base of every diagnostic raised by the toolchain. `line` is 1-based;
/// 0 means "not yet attributed" and is filled in by the interpreter when a
/// builtin or the device raises without knowing the source position.
class OriginError : public std::runtime_error {
public:
    OriginError(ErrorKind kind, int line, std::string message);

    ErrorKind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

    /// `<kind> at line <n>: <message>`
    std::string describe() const;

private:
    ErrorKind kind_;
    int line_;
    std::string message_;
};

class LexError : public OriginError {
public:
    LexError(int line, int column, std::string message);
    int column() const noexcept { return column_; }

private:
    int column_;
};

class ParseError : public OriginError {
public:
    ParseError(int line, std::string message, std::string expected, std::string found);
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::string expected_;
    std::string found_;
};

class RuntimeError : public OriginError {
public:
    RuntimeError(ErrorKind kind, int line, std::string message);
    RuntimeError with_line(int line) const { return RuntimeError(kind(), line, message()); }
};

/// Malformed trace, WiFi config, transport script or event log input.
class FormatError : public OriginError {
public:
    FormatError(int line, std::string message);
};

} // namespace origin
