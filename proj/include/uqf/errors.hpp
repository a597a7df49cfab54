#pragma once

#include <stdexcept>
#include <string>

namespace uqf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class ClassicalityViolation : public Error {
 public:
  using Error::Error;
};

class NotTotallyPositive : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A vector whose norm is not a rational integer was passed where one is required.
class NonIntegralNorm : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace uqf
