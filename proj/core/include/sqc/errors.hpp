#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqc {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class OutOfDomain : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class NonFiniteValue : public Error {
public:
  using Error::Error;
};

class NoGradient : public Error {
public:
  using Error::Error;
};

class PremiseFails : public Error {
public:
  using Error::Error;
};

class NoEffectiveQueries : public Error {
public:
  using Error::Error;
};

class NoViolationFound : public Error {
public:
  using Error::Error;
};

class NotUnimodal : public Error {
public:
  using Error::Error;
};

/// Bad arguments that are neither a domain violation nor an evaluation
/// failure (invalid geometry, malformed config, ...). The CLI maps these
/// to exit code 2.
class UsageError : public Error {
public:
  using Error::Error;
};

// ---- expression language errors ----

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class UnknownIdentifier : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

class ArityMismatch : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

class VariableOutOfRange : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

/// Runtime arithmetic failure (sqrt of a negative, log of a nonpositive,
/// division by zero). Carries the offending subexpression.
class DomainError : public Error {
public:
  DomainError(const std::string& what, std::string subexpr)
      : Error(what + " in '" + subexpr + "'"), subexpr_(std::move(subexpr)) {}
  const std::string& subexpression() const { return subexpr_; }

private:
  std::string subexpr_;
};

}  // namespace sqc
