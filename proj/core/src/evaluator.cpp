#include "tomt/evaluator.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include <json.hpp>

namespace tomt {

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::ParseFailure: return "ParseFailure";
    case DiagnosticKind::UnknownFunction: return "UnknownFunction";
    case DiagnosticKind::ArityMismatch: return "ArityMismatch";
    case DiagnosticKind::ArgTypeMismatch: return "ArgTypeMismatch";
    case DiagnosticKind::UndefinedVariable: return "UndefinedVariable";
    case DiagnosticKind::VocabularyMismatch: return "VocabularyMismatch";
    case DiagnosticKind::RuntimeFailure: return "RuntimeFailure";
    case DiagnosticKind::EmptyResult: return "EmptyResult";
    case DiagnosticKind::NonSequentialIndex: return "NonSequentialIndex";
    case DiagnosticKind::Rebinding: return "Rebinding";
  }
  return "Unknown";
}

bool is_soft(DiagnosticKind kind) {
  return kind == DiagnosticKind::NonSequentialIndex || kind == DiagnosticKind::Rebinding;
}

bool Verdict::has(DiagnosticKind kind) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.kind == kind; });
}

const SignatureTable& signature_table() { return tool_signatures(); }

namespace {

// Static kind of a variable; nullopt when defined by a step that failed the check.
using KindMap = std::map<std::string, std::optional<ValueKind>, std::less<>>;

class Checker {
 public:
  Checker(const SceneGraph& scene, std::vector<Diagnostic>& out) : scene_(scene), out_(out) {
    kinds_[std::string(kAllObjects)] = ValueKind::Objects;
  }

  void check(const Plan& plan) {
    for (std::size_t pos = 0; pos < plan.steps.size(); ++pos) {
      const PlanStep& step = plan.steps[pos];
      if (step.index != static_cast<int>(pos + 1)) {
        add(step, DiagnosticKind::NonSequentialIndex,
            "expected step " + std::to_string(pos + 1) + ", found " + std::to_string(step.index));
      }
      const std::optional<ValueKind> result = check_call(step);
      if (kinds_.count(step.target)) add(step, DiagnosticKind::Rebinding, "'" + step.target + "' assigned again");
      if (step.target != kAllObjects) kinds_[step.target] = result;
      check_vocabulary(step);
    }
  }

 private:
  void add(const PlanStep& step, DiagnosticKind kind, std::string message) {
    out_.push_back(Diagnostic{step.index, kind, std::move(message)});
  }

  // Returns the kind of a referenced variable; reports undefined variables.
  std::optional<ValueKind> var_kind(const PlanStep& step, const VarRef& ref, bool& ok) {
    auto it = kinds_.find(ref.name);
    if (it == kinds_.end()) {
      add(step, DiagnosticKind::UndefinedVariable, "'" + ref.name + "' is used before it is defined");
      ok = false;
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<ValueKind> check_call(const PlanStep& step) {
    const Call& call = step.call;
    bool ok = true;
    // Collect variable kinds first so undefined variables are always reported.
    std::vector<std::optional<ValueKind>> arg_kinds;
    for (const auto& arg : call.args) {
      if (const auto* v = std::get_if<VarRef>(&arg)) {
        arg_kinds.push_back(var_kind(step, *v, ok));
      } else {
        arg_kinds.push_back(std::nullopt);
        if (const auto* list = std::get_if<ListLiteral>(&arg)) {
          for (const auto& item : list->items) {
            if (const auto* v = std::get_if<VarRef>(&item)) {
              const auto k = var_kind(step, *v, ok);
              if (k && *k != ValueKind::Num && *k != ValueKind::Text) {
                add(step, DiagnosticKind::ArgTypeMismatch, "list element '" + v->name + "' must be a number or text");
                ok = false;
              }
            }
          }
        }
      }
    }

    const ToolSignature* tool = find_tool(call.function);
    if (!tool) {
      add(step, DiagnosticKind::UnknownFunction, "'" + call.function + "' is not a tool");
      return std::nullopt;
    }
    auto form = std::find_if(tool->forms.begin(), tool->forms.end(),
                             [&](const auto& f) { return f.size() == call.args.size(); });
    if (form == tool->forms.end()) {
      add(step, DiagnosticKind::ArityMismatch,
          call.function + " does not take " + std::to_string(call.args.size()) + " arguments");
      return std::nullopt;
    }

    std::optional<ValueKind> comparable_kind;
    for (std::size_t i = 0; i < form->size(); ++i) {
      const Arg& arg = call.args[i];
      const ParamKind param = (*form)[i];
      const bool is_var = std::holds_alternative<VarRef>(arg);
      if (is_var && !arg_kinds[i]) continue;  // undefined or unknown: already reported
      std::optional<ValueKind> kind = arg_kinds[i];
      if (std::holds_alternative<StringLiteral>(arg)) kind = ValueKind::Text;

      bool fits = false;
      switch (param) {
        case ParamKind::Objects: fits = kind == ValueKind::Objects; break;
        case ParamKind::Num: fits = kind == ValueKind::Num; break;
        case ParamKind::Text: fits = kind == ValueKind::Text; break;
        case ParamKind::Relations: fits = kind == ValueKind::Relations || kind == ValueKind::Text; break;
        case ParamKind::Comparable:
          fits = kind == ValueKind::Num || kind == ValueKind::Text;
          if (fits && comparable_kind && *comparable_kind != *kind) fits = false;
          if (fits) comparable_kind = kind;
          break;
        case ParamKind::Descriptors: fits = std::holds_alternative<ListLiteral>(arg); break;
      }
      if (!fits) {
        add(step, DiagnosticKind::ArgTypeMismatch,
            call.function + " argument " + std::to_string(i + 1) + " must be " + std::string(to_string(param)));
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return tool->result;
  }

  void vocabulary_miss(const PlanStep& step, const std::string& token, std::string_view what) {
    add(step, DiagnosticKind::VocabularyMismatch, "'" + token + "' is not a " + std::string(what) + " in this scene");
  }

  void check_literal(const PlanStep& step, std::size_t arg, const std::set<std::string>& vocab, std::string_view what) {
    if (arg >= step.call.args.size()) return;
    const auto* literal = std::get_if<StringLiteral>(&step.call.args[arg]);
    if (!literal) return;
    const std::string token = canonical_token(literal->value);
    if (!vocab.count(token)) vocabulary_miss(step, token, what);
  }

  void check_number(const PlanStep& step, std::int64_t value, const std::string& token) {
    if (value < 1 || value > scene_.vocabulary().max_part_count) vocabulary_miss(step, token, "part count");
  }

  void check_descriptors(const PlanStep& step) {
    if (step.call.args.empty()) return;
    const auto* list = std::get_if<ListLiteral>(&step.call.args[0]);
    if (!list) return;
    const VocabularyIndex& vocab = scene_.vocabulary();
    for (const auto& item : list->items) {
      if (const auto* n = std::get_if<IntLiteral>(&item)) {
        check_number(step, n->value, std::to_string(n->value));
        continue;
      }
      const auto* s = std::get_if<StringLiteral>(&item);
      if (!s) continue;
      const std::string token = canonical_token(s->value);
      switch (classify_token(token)) {
        case DescriptorSlot::Number: check_number(step, *number_word_value(token), token); break;
        case DescriptorSlot::Color:
          if (!vocab.colors.count(token)) vocabulary_miss(step, token, "color");
          break;
        case DescriptorSlot::Size:
          if (!vocab.sizes.count(token)) vocabulary_miss(step, token, "size");
          break;
        case DescriptorSlot::Material:
          if (!vocab.materials.count(token)) vocabulary_miss(step, token, "material");
          break;
        case DescriptorSlot::Name:
          if (scene_.style() == SceneStyle::PartBased) {
            if (!vocab.parts.count(token)) vocabulary_miss(step, token, "part");
          } else if (!vocab.categories.count(token)) {
            vocabulary_miss(step, token, "shape");
          }
          break;
      }
    }
  }

  void check_vocabulary(const PlanStep& step) {
    const VocabularyIndex& vocab = scene_.vocabulary();
    const std::string& f = step.call.function;
    if (f == "filter_object" || f == "filter_category") {
      check_literal(step, 0, vocab.categories, "category");
    } else if (f == "filter_part") {
      check_descriptors(step);
    } else if (f == "query_part") {
      check_literal(step, 0, vocab.colors, "color");
    } else if (f == "count_part" || (f == "query_color" && step.call.args.size() == 2)) {
      check_literal(step, 0, vocab.parts, "part");
    }
  }

  const SceneGraph& scene_;
  std::vector<Diagnostic>& out_;
  KindMap kinds_;
};

DiagnosticKind diagnostic_for(FailureKind kind) {
  switch (kind) {
    case FailureKind::UnknownFunction: return DiagnosticKind::UnknownFunction;
    case FailureKind::ArityMismatch: return DiagnosticKind::ArityMismatch;
    case FailureKind::TypeMismatch: return DiagnosticKind::ArgTypeMismatch;
    case FailureKind::UndefinedVariable: return DiagnosticKind::UndefinedVariable;
    default: return DiagnosticKind::RuntimeFailure;
  }
}

bool empty_is_hard(std::string_view function) {
  return function == "filter_object" || function == "filter_part" || function == "filter_category" ||
         function == "query_relation" || function == "intersection";
}

}  // namespace

Verdict evaluate_candidate(const Plan& prefix, const SceneGraph& scene, std::string_view stop_sign) {
  Verdict verdict;
  if (prefix.empty()) {
    verdict.diagnostics.push_back(Diagnostic{0, DiagnosticKind::ParseFailure, "no steps"});
    return verdict;
  }
  Checker(scene, verdict.diagnostics).check(prefix);
  auto any_hard = [&] {
    return std::any_of(verdict.diagnostics.begin(), verdict.diagnostics.end(),
                       [](const Diagnostic& d) { return d.hard(); });
  };

  if (!any_hard()) {
    ExecutionOutcome outcome = run_plan(prefix, scene, stop_sign);
    for (const auto& entry : outcome.trace.entries) {
      const auto* objs = std::get_if<Objects>(&entry.value);
      if (objs && objs->items.empty() && empty_is_hard(entry.step.call.function)) {
        verdict.diagnostics.push_back(Diagnostic{entry.step.index, DiagnosticKind::EmptyResult,
                                                 entry.step.call.function + " returned no objects"});
      }
    }
    if (outcome.failure) {
      verdict.diagnostics.push_back(
          Diagnostic{outcome.failure->step(), diagnostic_for(outcome.failure->kind()), outcome.failure->what()});
    }
  }
  verdict.pass = !any_hard();
  return verdict;
}

Verdict parse_failure_verdict(std::string message) {
  return Verdict{false, {Diagnostic{0, DiagnosticKind::ParseFailure, std::move(message)}}};
}

bool detect_stop(const Plan& prefix, std::string_view stop_sign) {
  return std::any_of(prefix.steps.begin(), prefix.steps.end(),
                     [&](const PlanStep& step) { return step.target == stop_sign; });
}

std::string verdict_to_json(const Verdict& verdict) {
  nlohmann::json diagnostics = nlohmann::json::array();
  for (const auto& d : verdict.diagnostics) {
    diagnostics.push_back({{"step", d.step}, {"kind", std::string(to_string(d.kind))}, {"message", d.message}});
  }
  return nlohmann::json{{"pass", verdict.pass}, {"diagnostics", diagnostics}}.dump();
}

}  // namespace tomt
