#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tomt/interpreter.hpp"
#include "tomt/plan_dsl.hpp"
#include "tomt/scene_graph.hpp"

namespace tomt {

enum class DiagnosticKind {
  ParseFailure,
  UnknownFunction,
  ArityMismatch,
  ArgTypeMismatch,
  UndefinedVariable,
  VocabularyMismatch,
  RuntimeFailure,
  EmptyResult,
  NonSequentialIndex,  // soft
  Rebinding,           // soft
};

std::string_view to_string(DiagnosticKind kind);
bool is_soft(DiagnosticKind kind);

struct Diagnostic {
  int step = 0;  // 1-based step index as written in the plan; 0 when not tied to a step
  DiagnosticKind kind = DiagnosticKind::ParseFailure;
  std::string message;

  bool hard() const { return !is_soft(kind); }
  bool operator==(const Diagnostic&) const = default;
};

struct Verdict {
  bool pass = false;
  std::vector<Diagnostic> diagnostics;

  bool has(DiagnosticKind kind) const;
  bool operator==(const Verdict&) const = default;
};

/// Closed set of callable tools with their accepted parameter lists.
using SignatureTable = std::vector<ToolSignature>;
const SignatureTable& signature_table();

/// Static signature/type check, scene-vocabulary check of literals, execution,
/// then the empty-result policy. Never throws on a bad plan.
Verdict evaluate_candidate(const Plan& prefix, const SceneGraph& scene,
                           std::string_view stop_sign = kDefaultStopSign);

/// Verdict for text that yielded no parseable steps.
Verdict parse_failure_verdict(std::string message);

/// True iff some step assigns the stop sign.
bool detect_stop(const Plan& prefix, std::string_view stop_sign = kDefaultStopSign);

std::string verdict_to_json(const Verdict& verdict);

}  // namespace tomt
