#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tomt {

struct StringLiteral {
  std::string value;
  bool operator==(const StringLiteral&) const = default;
};

// Only legal inside list literals.
struct IntLiteral {
  std::int64_t value = 0;
  bool operator==(const IntLiteral&) const = default;
};

struct VarRef {
  std::string name;
  bool operator==(const VarRef&) const = default;
};

using ListElement = std::variant<StringLiteral, IntLiteral, VarRef>;

struct ListLiteral {
  std::vector<ListElement> items;
  bool operator==(const ListLiteral&) const = default;
};

using Arg = std::variant<StringLiteral, IntLiteral, VarRef, ListLiteral>;

struct Call {
  std::string function;
  std::vector<Arg> args;
  bool operator==(const Call&) const = default;
};

struct PlanStep {
  int index = 1;
  std::string target;
  Call call;
  bool operator==(const PlanStep&) const = default;
};

struct Plan {
  std::vector<PlanStep> steps;

  bool empty() const noexcept { return steps.empty(); }
  std::size_t size() const noexcept { return steps.size(); }
  bool operator==(const Plan&) const = default;
};

/// Parses a whole plan: blank lines and one leading "Answer:" header are
/// skipped, every other line must be a step. Throws ParseError.
Plan parse_plan(std::string_view text);

/// Parses one "Step <n>:<var> = <fn>(<args>)" line. Throws ParseError with
/// the given line number.
PlanStep parse_step(std::string_view line, std::size_t line_number = 1);

/// Non-throwing variant of parse_step.
std::optional<PlanStep> try_parse_step(std::string_view line);

/// Keeps only the lines of free-form text that parse as steps.
Plan extract_steps_from_response(std::string_view text);

std::string render_step(const PlanStep& step);

/// Canonical form: one step per line, each terminated by '\n'.
std::string render_plan(const Plan& plan);

std::string render_arg(const Arg& arg);

bool is_identifier(std::string_view text);

}  // namespace tomt
