#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tomt {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Document shape problems: missing keys, wrong JSON types, mixed scene styles.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Scene relation tables that break duality, irreflexivity or index bounds.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

enum class FailureKind {
  NonSingleton,
  SameObject,
  NoRelation,
  UnknownRelation,
  NoMatch,
  AmbiguousPart,
  NoSuchPart,
  UnsupportedStyle,
  TypeMismatch,
  DescriptorError,
  UndefinedVariable,
  UnknownFunction,
  ArityMismatch,
  ReservedVariable,
  UnformattableValue,
};

std::string_view to_string(FailureKind kind);

/// Raised by the interpreter; `step()` is the 1-based plan step index, or 0
/// when the failure did not happen inside a plan (direct tool calls).
class RuntimeFailure : public Error {
 public:
  RuntimeFailure(FailureKind kind, std::string message, int step = 0);

  FailureKind kind() const noexcept { return kind_; }
  int step() const noexcept { return step_; }
  const std::string& detail() const noexcept { return detail_; }

  RuntimeFailure at_step(int step) const { return RuntimeFailure(kind_, detail_, step); }

 private:
  FailureKind kind_;
  std::string detail_;
  int step_;
};

class TaxonomyError : public Error {
 public:
  using Error::Error;
};

class GoldPlanMismatch : public Error {
 public:
  using Error::Error;
};

class MissingGoldPlan : public Error {
 public:
  using Error::Error;
};

class InsufficientExamples : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class TransportError : public GenerationError {
 public:
  using GenerationError::GenerationError;
};

class RateLimited : public TransportError {
 public:
  using TransportError::TransportError;
};

class ReplayMiss : public GenerationError {
 public:
  using GenerationError::GenerationError;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tomt
