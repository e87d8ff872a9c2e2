#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claimdecomp {

/// Base of every error the library throws. Callers that only need a
/// diagnostic can catch this and print what().
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad input data: malformed records, unknown enum values, indices out of
/// range, dimension mismatches.
class DataError : public Error {
  public:
    using Error::Error;
};

/// A dataset line failed to parse or validate. line() is 1-based.
class ParseError : public DataError {
  public:
    ParseError(std::size_t line, std::string field, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " +
                    (field.empty() ? what : field + ": " + what)),
          m_line(line),
          m_field(std::move(field)) {}

    std::size_t line() const noexcept { return m_line; }
    const std::string& field() const noexcept { return m_field; }

  private:
    std::size_t m_line;
    std::string m_field;
};

/// A function was called outside its precondition (k > M, empty input, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// The external adapter process misbehaved: died, sent malformed JSON,
/// answered with an error object or omitted a required field.
class ProtocolError : public Error {
  public:
    using Error::Error;
};

class TimeoutError : public ProtocolError {
  public:
    using ProtocolError::ProtocolError;
};

/// The rule-based converter refuses the question; fall back to an external
/// converter.
class Unconvertible : public Error {
  public:
    using Error::Error;
};

}  // namespace claimdecomp
