#pragma once

#include <stdexcept>
#include <string>

namespace bucketwheel {

/// Root of the library's exception hierarchy. Each subclass maps to one
/// status code of the C API and one CLI exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: a parameter outside its declared domain, a bad config value.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A model function was called outside the domain where it is defined
/// (negative cut depth, zero rake angle, ...).
class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Config text could not be parsed. Carries the offending line and key.
class ParseError : public ValidationError {
public:
  ParseError(std::string file, int line, std::string key, const std::string& what)
      : ValidationError(file + ":" + std::to_string(line) + ": " +
                        (key.empty() ? std::string() : "key '" + key + "': ") + what),
        file_(std::move(file)), line_(line), key_(std::move(key)) {}

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

private:
  std::string file_;
  int line_;
  std::string key_;
};

/// Non-finite values, step-size underflow, or any other failure of the
/// numerical propagation.
class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace bucketwheel
