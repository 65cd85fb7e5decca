#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tomt/plan_dsl.hpp"
#include "tomt/rng.hpp"

namespace tomt {

enum class SearchMode { OneStop, ToT, ToTOS, ToTBlock };

std::string_view to_string(SearchMode mode);
SearchMode search_mode_from_string(std::string_view text);  // throws ConfigError

/// What one generator call is asked to produce.
struct GenerationMode {
  enum class Kind { NextStep, Remaining, Block };

  Kind kind = Kind::NextStep;
  int block_size = 1;  // Block only

  static GenerationMode next_step() { return {Kind::NextStep, 1}; }
  static GenerationMode remaining() { return {Kind::Remaining, 1}; }
  static GenerationMode block(int k) { return {Kind::Block, k}; }

  bool operator==(const GenerationMode&) const = default;
};

std::string to_string(const GenerationMode& mode);

struct GenRequest {
  std::string question;
  Plan trajectory;
  GenerationMode mode;
  int example_count = 4;
  int depth = 1;
  int branch = 0;
};

class Generator {
 public:
  virtual ~Generator() = default;

  /// Raw model-style text; the caller extracts steps from it.
  virtual std::string generate(const GenRequest& request) = 0;
};

/// Mode chosen for the branch-th child of a depth-d node.
GenerationMode variant_dispatch(SearchMode mode, int depth, int branch, int start_depth, int block_size);

// ---------------------------------------------------------------------------
// Seeded mock

enum class CorruptionKind { WrongFunction, WrongLiteral, UndefinedVariable };

std::string_view to_string(CorruptionKind kind);

struct MockConfig {
  Plan gold;
  double p_step = 1.0;  // single-step generation is the correct next gold step
  double p_full = 1.0;  // Remaining/Block generation is entirely correct
  std::vector<CorruptionKind> corruptions = {CorruptionKind::WrongFunction, CorruptionKind::WrongLiteral,
                                             CorruptionKind::UndefinedVariable};
  std::uint64_t seed = 0;
};

/// Emits gold continuations, corrupting one step per failed draw.
class MockGenerator : public Generator {
 public:
  explicit MockGenerator(MockConfig config);

  std::string generate(const GenRequest& request) override;

 private:
  MockConfig config_;
  Rng rng_;
};

/// Applies one corruption; `defined` lists variable names visible at the step.
/// Falls back to another kind when the step offers nothing to corrupt.
PlanStep corrupt_step(const PlanStep& step, CorruptionKind kind, Rng& rng, const std::set<std::string>& defined);

// ---------------------------------------------------------------------------
// Prompt assembly and the chat-backed generator

struct Example {
  std::string question;
  Plan plan;
};

/// m distinct examples, uniformly without replacement. Throws InsufficientExamples.
std::vector<Example> sample_examples(const std::vector<Example>& library, int m, std::uint64_t seed);

/// instruction, tool descriptions, examples, then the question, "Answer:" and
/// the trajectory so far.
std::string build_prompt(std::string_view instruction, const std::vector<std::string>& tool_descriptions,
                         const std::vector<Example>& examples, std::string_view question, const Plan& trajectory);

std::string default_instruction();
std::vector<std::string> default_tool_descriptions();

class CompletionBackend;

struct ChatGeneratorConfig {
  std::string instruction = default_instruction();
  std::vector<std::string> tool_descriptions = default_tool_descriptions();
  std::vector<Example> library;
  int example_count = 4;
  std::uint64_t seed = 0;
};

class ChatGenerator : public Generator {
 public:
  ChatGenerator(ChatGeneratorConfig config, std::shared_ptr<CompletionBackend> backend);

  std::string generate(const GenRequest& request) override;

  /// The prompt generate() would send.
  std::string prompt_for(const GenRequest& request) const;

 private:
  ChatGeneratorConfig config_;
  std::shared_ptr<CompletionBackend> backend_;
};

/// Counts generate() calls on a wrapped generator.
class CountingGenerator : public Generator {
 public:
  explicit CountingGenerator(Generator& inner) : inner_(inner) {}

  std::string generate(const GenRequest& request) override {
    ++calls_;
    return inner_.generate(request);
  }

  int calls() const noexcept { return calls_; }

 private:
  Generator& inner_;
  int calls_ = 0;
};

}  // namespace tomt
