#include "tomt/errors.hpp"

namespace tomt {

namespace {

std::string describe_parse_error(std::size_t line, std::size_t column, const std::string& expected) {
  return "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": expected " + expected;
}

std::string describe_failure(FailureKind kind, const std::string& message, int step) {
  std::string out(to_string(kind));
  if (step > 0) out += " at step " + std::to_string(step);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected)
    : Error(describe_parse_error(line, column, expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::NonSingleton: return "NonSingleton";
    case FailureKind::SameObject: return "SameObject";
    case FailureKind::NoRelation: return "NoRelation";
    case FailureKind::UnknownRelation: return "UnknownRelation";
    case FailureKind::NoMatch: return "NoMatch";
    case FailureKind::AmbiguousPart: return "AmbiguousPart";
    case FailureKind::NoSuchPart: return "NoSuchPart";
    case FailureKind::UnsupportedStyle: return "UnsupportedStyle";
    case FailureKind::TypeMismatch: return "TypeMismatch";
    case FailureKind::DescriptorError: return "DescriptorError";
    case FailureKind::UndefinedVariable: return "UndefinedVariable";
    case FailureKind::UnknownFunction: return "UnknownFunction";
    case FailureKind::ArityMismatch: return "ArityMismatch";
    case FailureKind::ReservedVariable: return "ReservedVariable";
    case FailureKind::UnformattableValue: return "UnformattableValue";
  }
  return "Unknown";
}

RuntimeFailure::RuntimeFailure(FailureKind kind, std::string message, int step)
    : Error(describe_failure(kind, message, step)), kind_(kind), detail_(std::move(message)), step_(step) {}

}  // namespace tomt
