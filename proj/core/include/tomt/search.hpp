#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tomt/evaluator.hpp"
#include "tomt/generator.hpp"
#include "tomt/plan_dsl.hpp"
#include "tomt/scene_graph.hpp"

namespace tomt {

struct SearchConfig {
  SearchMode mode = SearchMode::ToT;
  int branch = 3;
  int max_step = 30;
  int start_depth = 2;  // ToT-OS
  int block_size = 2;   // ToT-Block
  std::string stop_sign = std::string(kDefaultStopSign);

  /// Defaults per mode: b = 3, except b = 5 for ToT-Block; T = 30; sn = 2; k = 2.
  static SearchConfig defaults(SearchMode mode);

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;

  /// Short label such as "tot-os(sn=2)".
  std::string label() const;
};

/// One generator invocation and what became of it.
struct NodeEvent {
  int depth = 1;
  int branch = 0;
  int t = 0;  // generator invocations so far, including this one
  GenerationMode mode;
  std::string generated_text;
  Verdict verdict;
};

struct SearchResult {
  bool success = false;
  bool budget_exhausted = false;
  std::optional<Plan> plan;
  std::string answer;  // formatted; empty unless success
  int steps_used = 0;
  int backtracks = 0;
  bool no_back = true;
  std::vector<NodeEvent> trace;
};

/// Depth-first plan search. Never throws for a bad plan; GenerationError
/// from the generator propagates.
SearchResult solve(const std::string& question, Generator& generator, const SceneGraph& scene,
                   const SearchConfig& config);

/// Single Remaining generation, single evaluation.
SearchResult run_one_stop(const std::string& question, Generator& generator, const SceneGraph& scene,
                          std::string_view stop_sign = kDefaultStopSign);

/// JSON lines, one per node event: {depth, branch, t, mode, generated, verdict}.
std::string trace_to_jsonl(const std::vector<NodeEvent>& trace);

}  // namespace tomt
