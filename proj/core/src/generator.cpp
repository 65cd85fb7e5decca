#include "tomt/generator.hpp"

#include <algorithm>
#include <numeric>

#include "tomt/errors.hpp"
#include "tomt/interpreter.hpp"
#include "tomt/llm_client.hpp"
#include "tomt/tokens.hpp"

namespace tomt {

std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::OneStop: return "onestop";
    case SearchMode::ToT: return "tot";
    case SearchMode::ToTOS: return "tot-os";
    case SearchMode::ToTBlock: return "tot-block";
  }
  return "unknown";
}

SearchMode search_mode_from_string(std::string_view text) {
  for (SearchMode mode : {SearchMode::OneStop, SearchMode::ToT, SearchMode::ToTOS, SearchMode::ToTBlock}) {
    if (to_string(mode) == text) return mode;
  }
  throw ConfigError("unknown search mode '" + std::string(text) + "' (onestop, tot, tot-os, tot-block)");
}

std::string to_string(const GenerationMode& mode) {
  switch (mode.kind) {
    case GenerationMode::Kind::NextStep: return "next-step";
    case GenerationMode::Kind::Remaining: return "remaining";
    case GenerationMode::Kind::Block: return "block(" + std::to_string(mode.block_size) + ")";
  }
  return "unknown";
}

std::string_view to_string(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::WrongFunction: return "wrong-function";
    case CorruptionKind::WrongLiteral: return "wrong-literal";
    case CorruptionKind::UndefinedVariable: return "undefined-variable";
  }
  return "unknown";
}

GenerationMode variant_dispatch(SearchMode mode, int depth, int branch, int start_depth, int block_size) {
  switch (mode) {
    case SearchMode::OneStop: return GenerationMode::remaining();
    case SearchMode::ToT: return GenerationMode::next_step();
    case SearchMode::ToTOS:
      return depth >= start_depth && branch == 0 ? GenerationMode::remaining() : GenerationMode::next_step();
    case SearchMode::ToTBlock: return GenerationMode::block(block_size);
  }
  return GenerationMode::next_step();
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& relation_pool() {
  static const std::vector<std::string> kPool = {"left", "right", "front", "behind"};
  return kPool;
}

const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> kPool = {
      "chair", "table", "bed",  "cart",  "refrigerator", "cube",    "sphere",    "cylinder",         "leg",
      "back",  "seat",  "door", "drawer", "top",         "wheel",   "body",      "leg bar",          "sleep area",
      "arm vertical bar", "arm horizontal bar"};
  return kPool;
}

std::vector<std::string> number_pool() {
  std::vector<std::string> out;
  for (int i = 1; i <= 10; ++i) out.emplace_back(number_word(i));
  return out;
}

std::string replacement_for(const std::string& original, Rng& rng) {
  const std::string canonical = canonical_token(original);
  std::vector<std::string> pool;
  if (std::find(relation_pool().begin(), relation_pool().end(), canonical) != relation_pool().end()) {
    pool = relation_pool();
  } else {
    switch (classify_token(canonical)) {
      case DescriptorSlot::Number: pool = number_pool(); break;
      case DescriptorSlot::Color: pool = color_tokens(); break;
      case DescriptorSlot::Size: pool = size_tokens(); break;
      case DescriptorSlot::Material: pool = material_tokens(); break;
      case DescriptorSlot::Name: pool = name_pool(); break;
    }
  }
  pool.erase(std::remove(pool.begin(), pool.end(), canonical), pool.end());
  return pool[rng.below(pool.size())];
}

std::string misspell(const std::string& function, Rng& rng) {
  const std::string candidates[] = {function + "s", "get_" + function, function + "_all"};
  std::string chosen = candidates[rng.below(3)];
  if (find_tool(chosen)) chosen = "tool_" + function;
  return chosen;
}

bool replace_literal(PlanStep& step, Rng& rng) {
  std::vector<std::string*> literals;
  for (auto& arg : step.call.args) {
    if (auto* s = std::get_if<StringLiteral>(&arg)) literals.push_back(&s->value);
    if (auto* list = std::get_if<ListLiteral>(&arg)) {
      for (auto& item : list->items) {
        if (auto* s = std::get_if<StringLiteral>(&item)) literals.push_back(&s->value);
      }
    }
  }
  if (literals.empty()) return false;
  std::string* target = literals[rng.below(literals.size())];
  *target = replacement_for(*target, rng);
  return true;
}

bool replace_variable(PlanStep& step, Rng& rng, const std::set<std::string>& defined) {
  std::vector<std::string*> refs;
  for (auto& arg : step.call.args) {
    if (auto* v = std::get_if<VarRef>(&arg)) refs.push_back(&v->name);
    if (auto* list = std::get_if<ListLiteral>(&arg)) {
      for (auto& item : list->items) {
        if (auto* v = std::get_if<VarRef>(&item)) refs.push_back(&v->name);
      }
    }
  }
  if (refs.empty()) return false;
  std::string* target = refs[rng.below(refs.size())];
  std::uint64_t n = 10 + rng.below(90);
  while (defined.count("obj" + std::to_string(n)) || step.target == "obj" + std::to_string(n)) ++n;
  *target = "obj" + std::to_string(n);
  return true;
}

}  // namespace

PlanStep corrupt_step(const PlanStep& step, CorruptionKind kind, Rng& rng, const std::set<std::string>& defined) {
  PlanStep out = step;
  switch (kind) {
    case CorruptionKind::WrongLiteral:
      if (replace_literal(out, rng)) return out;
      [[fallthrough]];
    case CorruptionKind::UndefinedVariable:
      if (replace_variable(out, rng, defined)) return out;
      [[fallthrough]];
    case CorruptionKind::WrongFunction:
      out.call.function = misspell(out.call.function, rng);
      return out;
  }
  return out;
}

MockGenerator::MockGenerator(MockConfig config) : config_(std::move(config)), rng_(config_.seed) {
  if (config_.p_step < 0 || config_.p_step > 1 || config_.p_full < 0 || config_.p_full > 1) {
    throw ConfigError("mock probabilities must lie in [0, 1]");
  }
  if (config_.corruptions.empty()) throw ConfigError("mock needs at least one corruption kind");
}

std::string MockGenerator::generate(const GenRequest& request) {
  const auto& gold = config_.gold.steps;
  const std::size_t start = request.trajectory.size();
  if (start >= gold.size()) return {};

  std::size_t end = gold.size();
  double p_correct = config_.p_full;
  switch (request.mode.kind) {
    case GenerationMode::Kind::NextStep:
      end = start + 1;
      p_correct = config_.p_step;
      break;
    case GenerationMode::Kind::Block:
      end = std::min(gold.size(), start + static_cast<std::size_t>(std::max(1, request.mode.block_size)));
      break;
    case GenerationMode::Kind::Remaining: break;
  }
  Plan chunk{std::vector<PlanStep>(gold.begin() + static_cast<std::ptrdiff_t>(start),
                                   gold.begin() + static_cast<std::ptrdiff_t>(end))};

  if (!rng_.bernoulli(p_correct)) {
    const std::size_t victim = rng_.below(chunk.size());
    const CorruptionKind kind = config_.corruptions[rng_.below(config_.corruptions.size())];
    std::set<std::string> defined = {std::string(kAllObjects)};
    for (const auto& step : request.trajectory.steps) defined.insert(step.target);
    for (std::size_t i = 0; i < victim; ++i) defined.insert(chunk.steps[i].target);
    chunk.steps[victim] = corrupt_step(chunk.steps[victim], kind, rng_, defined);
  }
  return render_plan(chunk);
}

// ---------------------------------------------------------------------------

std::vector<Example> sample_examples(const std::vector<Example>& library, int m, std::uint64_t seed) {
  if (m < 0 || library.size() < static_cast<std::size_t>(m)) {
    throw InsufficientExamples("example library holds " + std::to_string(library.size()) + " examples, " +
                               std::to_string(m) + " requested");
  }
  std::vector<std::size_t> order(library.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::vector<Example> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
    const std::size_t j = i + rng.below(order.size() - i);
    std::swap(order[i], order[j]);
    out.push_back(library[order[i]]);
  }
  return out;
}

std::string build_prompt(std::string_view instruction, const std::vector<std::string>& tool_descriptions,
                         const std::vector<Example>& examples, std::string_view question, const Plan& trajectory) {
  std::string prompt(instruction);
  prompt += "\n\n";
  for (const auto& tool : tool_descriptions) prompt += tool + "\n";
  prompt += "\n";
  for (const auto& example : examples) {
    prompt += "Question: " + example.question + "\nAnswer:\n" + render_plan(example.plan) + "\n";
  }
  prompt += "Question: ";
  prompt += question;
  prompt += "\nAnswer:\n";
  prompt += render_plan(trajectory);
  return prompt;
}

std::string default_instruction() {
  return "Write the steps that answer the question as code, one step per line in the form "
         "\"Step n:variable = tool(arguments)\", using only the tools below. Store the final result in ans.";
}

std::vector<std::string> default_tool_descriptions() {
  std::vector<std::string> out;
  for (const auto& tool : tool_signatures()) out.push_back(tool.description);
  return out;
}

ChatGenerator::ChatGenerator(ChatGeneratorConfig config, std::shared_ptr<CompletionBackend> backend)
    : config_(std::move(config)), backend_(std::move(backend)) {
  if (!backend_) throw ConfigError("chat generator needs a completion backend");
}

std::string ChatGenerator::prompt_for(const GenRequest& request) const {
  // Fresh demonstrations per node, reproducible from the node's position.
  const std::uint64_t node_seed =
      mix_seed(config_.seed, mix_seed(request.trajectory.size(), static_cast<std::uint64_t>(request.branch)));
  const auto examples = sample_examples(config_.library, request.example_count, node_seed);
  return build_prompt(config_.instruction, config_.tool_descriptions, examples, request.question,
                      request.trajectory);
}

std::string ChatGenerator::generate(const GenRequest& request) { return backend_->complete(prompt_for(request)); }

}  // namespace tomt
