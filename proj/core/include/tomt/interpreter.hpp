#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tomt/errors.hpp"
#include "tomt/plan_dsl.hpp"
#include "tomt/scene_graph.hpp"
#include "tomt/tokens.hpp"

namespace tomt {

struct Objects {
  ObjectSet items;
  bool operator==(const Objects&) const = default;
};

struct Num {
  std::int64_t value = 0;
  bool operator==(const Num&) const = default;
};

struct Bool {
  bool value = false;
  bool operator==(const Bool&) const = default;
};

// Canonical lowercase text.
struct Text {
  std::string value;
  bool operator==(const Text&) const = default;
};

struct Relations {
  std::vector<std::string> names;
  bool operator==(const Relations&) const = default;
};

using Value = std::variant<Objects, Num, Bool, Text, Relations>;

enum class ValueKind { Objects, Num, Bool, Text, Relations };

ValueKind kind_of(const Value& value);
std::string_view to_string(ValueKind kind);

inline constexpr std::string_view kAllObjects = "all_obj";
inline constexpr std::string_view kDefaultStopSign = "ans";

// ---------------------------------------------------------------------------
// Tool signatures

enum class ParamKind {
  Objects,
  Num,
  Text,
  Relations,     // Relations value, or a single relation name as Text
  Comparable,    // Num or Text
  Descriptors,   // list literal of strings, integers and Num/Text variables
};

std::string_view to_string(ParamKind kind);

struct ToolSignature {
  std::string name;
  std::vector<std::vector<ParamKind>> forms;  // accepted parameter lists
  ValueKind result;
  std::string description;                    // prompt-facing one-liner
};

/// The 19 tools, in tool-group order (filter, algebra, relation, attribution).
const std::vector<ToolSignature>& tool_signatures();

/// Looks up a tool by name, resolving aliases (fewer_than -> few_than).
const ToolSignature* find_tool(std::string_view name);

// ---------------------------------------------------------------------------
// Tools. Each throws RuntimeFailure on a precondition violation.

namespace tools {

ObjectSet filter_object(const SceneGraph& scene, std::string_view category, const ObjectSet& objs);
ObjectSet filter_part(const SceneGraph& scene, const DescriptorList& descriptors, const ObjectSet& objs);
ObjectSet filter_category(const SceneGraph& scene, std::string_view category, const ObjectSet& objs);
ObjectSet exclude_object(const ObjectSet& obj, const ObjectSet& objs);
ObjectSet intersection(const ObjectSet& a, const ObjectSet& b);
ObjectSet query_relation(const SceneGraph& scene, std::string_view relation, const ObjectSet& obj);
std::vector<std::string> get_relation(const SceneGraph& scene, const ObjectSet& a, const ObjectSet& b);
ObjectSet filter_relation(const SceneGraph& scene, const std::vector<std::string>& relations,
                          const ObjectSet& thing, const ObjectSet& objs);
std::string query_category(const SceneGraph& scene, const ObjectSet& obj);
std::string query_part(const SceneGraph& scene, std::string_view color, const ObjectSet& obj);
std::string query_color(const SceneGraph& scene, std::optional<std::string_view> part, const ObjectSet& obj);
std::string query_size(const SceneGraph& scene, const ObjectSet& obj);
std::int64_t count_part(const SceneGraph& scene, std::string_view part, const ObjectSet& obj);
std::int64_t count_object(const ObjectSet& objs);
std::int64_t sum(std::int64_t a, std::int64_t b);
bool equal(const Value& a, const Value& b);
bool more_than(std::int64_t a, std::int64_t b);
bool few_than(std::int64_t a, std::int64_t b);
bool exist(const ObjectSet& objs);

}  // namespace tools

// ---------------------------------------------------------------------------
// Execution

class Env {
 public:
  explicit Env(const SceneGraph& scene);

  const Value* find(std::string_view name) const;
  void bind(const std::string& name, Value value);  // all_obj is reserved

 private:
  std::map<std::string, Value, std::less<>> bindings_;
};

struct TraceEntry {
  PlanStep step;
  Value value;
  bool operator==(const TraceEntry&) const = default;
};

struct Trace {
  std::vector<TraceEntry> entries;
  std::optional<Value> answer;
  bool operator==(const Trace&) const = default;
};

struct ExecutionOutcome {
  Trace trace;
  std::optional<RuntimeFailure> failure;  // first failure; trace holds the steps before it
};

/// Evaluates one call against an environment (no binding).
Value evaluate_call(const Call& call, const Env& env, const SceneGraph& scene);

/// Runs steps in order until the stop-sign assignment or the first failure.
ExecutionOutcome run_plan(const Plan& plan, const SceneGraph& scene,
                          std::string_view stop_sign = kDefaultStopSign);

/// As run_plan, but rethrows the first failure (with its step index).
Trace execute_plan(const Plan& plan, const SceneGraph& scene, std::string_view stop_sign = kDefaultStopSign);

/// Bool -> yes/no, Num -> digits, Text -> lowercase. Objects and Relations
/// throw RuntimeFailure(UnformattableValue).
std::string format_answer(const Value& value);

/// Compact JSON rendering used in trace lines.
std::string render_value(const Value& value);

/// One JSON object per executed step: {"step","target","value"}.
std::string trace_to_jsonl(const Trace& trace);

}  // namespace tomt
