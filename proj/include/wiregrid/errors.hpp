#pragma once

#include <stdexcept>
#include <string>

namespace wiregrid {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration invariant does not hold. `field()` names the offender.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed config text. Line numbers are 1-based; 0 means "not from a file line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Unknown or mismatched unit suffix.
class UnitError : public ParseError {
 public:
  UnitError(std::size_t line, std::string token, const std::string& what)
      : ParseError(line, what + " '" + token + "'"), token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// An argument lies outside the domain of a formula (e.g. x > 1/2 for K').
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition failed (coarse sampling, band outside range, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wiregrid
