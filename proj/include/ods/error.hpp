#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ods {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A document could not be turned into a typed value.
class ParseError : public Error {
public:
    enum class Kind {
        Syntax,        // malformed JSON
        DuplicateKey,  // the same key twice in one object
        MissingKey,    // required key absent
        WrongKind,     // known key holds the wrong JSON kind
        InvalidValue,  // right kind, value outside a closed set
    };

    ParseError(Kind kind, std::string pointer, std::string detail,
               std::size_t line = 0, std::size_t column = 0);

    Kind kind() const noexcept { return kind_; }
    const std::string& pointer() const noexcept { return pointer_; }
    const std::string& detail() const noexcept { return detail_; }
    // 1-based; zero when the error is not tied to a source position.
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    Kind kind_;
    std::string pointer_;
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

const char* to_string(ParseError::Kind kind) noexcept;

/// A value violates a constraint that makes the requested operation impossible
/// (bad slug for a template, duplicate inferred names, ...).
class InvalidArgument : public Error {
public:
    InvalidArgument(std::string code, const std::string& message)
        : Error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace ods
