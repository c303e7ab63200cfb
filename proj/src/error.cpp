#include "origin/error.h"

#include <utility>

namespace origin {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::LexError: return "LexError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::TypeError: return "TypeError";
        case ErrorKind::NameError: return "NameError";
        case ErrorKind::ArityError: return "ArityError";
        case ErrorKind::IndexError: return "IndexError";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::FormatError: return "FormatError";
    }
    return "Error";
}

OriginError::OriginError(ErrorKind kind, int line, std::string message)
    : std::runtime_error(message), kind_(kind), line_(line), message_(std::move(message)) {}

std::string OriginError::describe() const {
    return std::string(error_kind_name(kind_)) + " at line " + std::to_string(line_) + ": " + message_;
}

LexError::LexError(int line, int column, std::string message)
    : OriginError(ErrorKind::LexError, line, std::move(message)), column_(column) {}

ParseError::ParseError(int line, std::string message, std::string expected, std::string found)
    : OriginError(ErrorKind::ParseError, line, std::move(message)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

RuntimeError::RuntimeError(ErrorKind kind, int line, std::string message)
    : OriginError(kind, line, std::move(message)) {}

FormatError::FormatError(int line, std::string message)
    : OriginError(ErrorKind::FormatError, line, std::move(message)) {}

} // namespace origin
