#include "tomt/plan_dsl.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "text_util.hpp"
#include "tomt/errors.hpp"

namespace tomt {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Recursive-descent cursor over a single step line.
class StepParser {
 public:
  StepParser(std::string_view line, std::size_t line_number) : text_(line), line_(line_number) {}

  PlanStep parse() {
    PlanStep step;
    skip_space();
    expect_keyword("Step");
    skip_space();
    step.index = parse_index();
    skip_space();
    expect_char(':', "':' after step number");
    skip_space();
    step.target = parse_identifier("target variable");
    skip_space();
    expect_char('=', "'='");
    skip_space();
    step.call.function = parse_identifier("function name");
    skip_space();
    expect_char('(', "'('");
    skip_space();
    if (!at(')')) {
      step.call.args.push_back(parse_arg());
      skip_space();
      while (at(',')) {
        ++pos_;
        skip_space();
        step.call.args.push_back(parse_arg());
        skip_space();
      }
    }
    expect_char(')', "',' or ')'");
    skip_space();
    if (pos_ != text_.size()) fail("end of line");
    return step;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(line_, pos_ + 1, expected); }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect_char(char c, const std::string& expected) {
    if (!at(c)) fail(expected);
    ++pos_;
  }

  void expect_keyword(std::string_view keyword) {
    if (text_.substr(pos_, keyword.size()) != keyword) fail("'" + std::string(keyword) + "'");
    pos_ += keyword.size();
  }

  int parse_index() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("step number");
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || value < 1) {
      pos_ = start;
      fail("step number >= 1");
    }
    return value;
  }

  std::string parse_identifier(const std::string& what) {
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail(what);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string parse_string() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\\')) fail("escape \\\" or \\\\");
      }
      out.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) fail("closing '\"'");
    ++pos_;
    return out;
  }

  IntLiteral parse_int() {
    const std::size_t start = pos_;
    if (at('-')) ++pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("integer literal");
    }
    return IntLiteral{value};
  }

  ListElement parse_list_element() {
    if (at('"')) return StringLiteral{parse_string()};
    if (at('\'')) fail("double-quoted string");
    if (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '-')) return parse_int();
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) return VarRef{parse_identifier("variable")};
    fail("string, integer or variable");
  }

  ListLiteral parse_list() {
    ++pos_;  // '['
    ListLiteral list;
    skip_space();
    if (!at(']')) {
      list.items.push_back(parse_list_element());
      skip_space();
      while (at(',')) {
        ++pos_;
        skip_space();
        list.items.push_back(parse_list_element());
        skip_space();
      }
    }
    expect_char(']', "',' or ']'");
    return list;
  }

  Arg parse_arg() {
    if (at('"')) return StringLiteral{parse_string()};
    if (at('[')) return parse_list();
    if (at('\'')) fail("double-quoted string");
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) return VarRef{parse_identifier("variable")};
    fail("string, list or variable argument");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_element(const ListElement& element) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StringLiteral>) return quote(v.value);
        else if constexpr (std::is_same_v<T, IntLiteral>) return std::to_string(v.value);
        else return v.name;
      },
      element);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_number = 1;
  while (true) {
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_number);
    if (newline == std::string_view::npos) break;
    text.remove_prefix(newline + 1);
    ++line_number;
  }
}

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty() || !is_ident_start(text.front())) return false;
  for (char c : text) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

PlanStep parse_step(std::string_view line, std::size_t line_number) { return StepParser(line, line_number).parse(); }

std::optional<PlanStep> try_parse_step(std::string_view line) {
  try {
    return parse_step(line);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

Plan parse_plan(std::string_view text) {
  Plan plan;
  for_each_line(text, [&](std::string_view line, std::size_t line_number) {
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) return;
    if (plan.steps.empty() && trimmed == "Answer:") return;
    plan.steps.push_back(parse_step(line, line_number));
  });
  return plan;
}

Plan extract_steps_from_response(std::string_view text) {
  Plan plan;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    if (auto step = try_parse_step(line)) plan.steps.push_back(std::move(*step));
  });
  return plan;
}

std::string render_arg(const Arg& arg) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ListLiteral>) {
          std::string out = "[";
          for (std::size_t i = 0; i < v.items.size(); ++i) {
            if (i > 0) out += ",";
            out += render_element(v.items[i]);
          }
          return out + "]";
        } else {
          return render_element(ListElement{v});
        }
      },
      arg);
}

std::string render_step(const PlanStep& step) {
  std::string out = "Step " + std::to_string(step.index) + ":" + step.target + " = " + step.call.function + "(";
  for (std::size_t i = 0; i < step.call.args.size(); ++i) {
    if (i > 0) out += ",";
    out += render_arg(step.call.args[i]);
  }
  return out + ")";
}

std::string render_plan(const Plan& plan) {
  std::string out;
  for (const auto& step : plan.steps) out += render_step(step) + "\n";
  return out;
}

}  // namespace tomt
