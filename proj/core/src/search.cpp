#include "tomt/search.hpp"

#include <json.hpp>

#include "tomt/errors.hpp"
#include "tomt/interpreter.hpp"

namespace tomt {

SearchConfig SearchConfig::defaults(SearchMode mode) {
  SearchConfig config;
  config.mode = mode;
  config.branch = mode == SearchMode::ToTBlock ? 5 : 3;
  return config;
}

void SearchConfig::validate() const {
  if (branch < 1) throw ConfigError("branch must be >= 1");
  if (max_step < 1) throw ConfigError("max_step must be >= 1");
  if (start_depth < 1) throw ConfigError("start depth must be >= 1");
  if (block_size < 1) throw ConfigError("block size must be >= 1");
  if (stop_sign.empty()) throw ConfigError("stop sign must be non-empty");
}

std::string SearchConfig::label() const {
  std::string out(to_string(mode));
  if (mode == SearchMode::ToTOS) out += "(sn=" + std::to_string(start_depth) + ")";
  if (mode == SearchMode::ToTBlock) out += "(k=" + std::to_string(block_size) + ")";
  return out;
}

namespace {

// Steps the model added after the trajectory, cut to what the mode asked for.
Plan new_steps(std::string_view text, const Plan& prefix, const GenerationMode& mode) {
  Plan extracted = extract_steps_from_response(text);
  Plan out;
  std::size_t i = 0;
  // Models sometimes echo the trajectory before continuing.
  while (i < extracted.size() && extracted.steps[i].index <= static_cast<int>(prefix.size())) ++i;
  std::size_t limit = extracted.size() - i;
  if (mode.kind == GenerationMode::Kind::NextStep) limit = std::min<std::size_t>(limit, 1);
  if (mode.kind == GenerationMode::Kind::Block) limit = std::min<std::size_t>(limit, mode.block_size);
  out.steps.assign(extracted.steps.begin() + static_cast<std::ptrdiff_t>(i),
                   extracted.steps.begin() + static_cast<std::ptrdiff_t>(i + limit));
  return out;
}

Plan concat(const Plan& prefix, const Plan& tail) {
  Plan out = prefix;
  out.steps.insert(out.steps.end(), tail.steps.begin(), tail.steps.end());
  return out;
}

Plan cut_at_stop(Plan plan, std::string_view stop_sign) {
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (plan.steps[i].target == stop_sign) {
      plan.steps.resize(i + 1);
      break;
    }
  }
  return plan;
}

void finish(SearchResult& result, Plan plan, const SceneGraph& scene, std::string_view stop_sign) {
  plan = cut_at_stop(std::move(plan), stop_sign);
  result.success = true;
  const ExecutionOutcome outcome = run_plan(plan, scene, stop_sign);
  if (outcome.trace.answer) {
    try {
      result.answer = format_answer(*outcome.trace.answer);
    } catch (const RuntimeFailure&) {
      result.answer.clear();
    }
  }
  result.plan = std::move(plan);
}

class DepthFirstSearch {
 public:
  DepthFirstSearch(const std::string& question, Generator& generator, const SceneGraph& scene,
                   const SearchConfig& config)
      : question_(question), generator_(generator), scene_(scene), config_(config) {}

  SearchResult run() {
    dfs(Plan{}, 1);
    result_.steps_used = t_;
    result_.no_back = result_.backtracks == 0;
    return std::move(result_);
  }

 private:
  bool dfs(const Plan& prefix, int depth) {
    for (int branch = 0; branch < config_.branch; ++branch) {
      if (t_ >= config_.max_step) {
        result_.budget_exhausted = true;
        return false;
      }
      GenRequest request;
      request.question = question_;
      request.trajectory = prefix;
      request.mode = variant_dispatch(config_.mode, depth, branch, config_.start_depth, config_.block_size);
      request.depth = depth;
      request.branch = branch;

      std::string text = generator_.generate(request);
      ++t_;
      const Plan candidate = new_steps(text, prefix, request.mode);
      Plan full = concat(prefix, candidate);
      Verdict verdict = candidate.empty() ? parse_failure_verdict("no step lines in generation")
                                          : evaluate_candidate(full, scene_, config_.stop_sign);
      const bool pass = verdict.pass;
      result_.trace.push_back(NodeEvent{depth, branch, t_, request.mode, std::move(text), std::move(verdict)});

      if (!pass) {
        ++result_.backtracks;
        continue;
      }
      if (detect_stop(candidate, config_.stop_sign)) {
        finish(result_, std::move(full), scene_, config_.stop_sign);
        return true;
      }
      if (dfs(full, depth + 1)) return true;
      if (result_.budget_exhausted) return false;
    }
    ++result_.backtracks;  // every branch of this node failed
    return false;
  }

  const std::string& question_;
  Generator& generator_;
  const SceneGraph& scene_;
  const SearchConfig& config_;
  SearchResult result_;
  int t_ = 0;
};

}  // namespace

SearchResult run_one_stop(const std::string& question, Generator& generator, const SceneGraph& scene,
                          std::string_view stop_sign) {
  SearchResult result;
  GenRequest request;
  request.question = question;
  request.mode = GenerationMode::remaining();
  std::string text = generator.generate(request);
  result.steps_used = 1;
  const Plan plan = new_steps(text, Plan{}, request.mode);
  Verdict verdict =
      plan.empty() ? parse_failure_verdict("no step lines in generation") : evaluate_candidate(plan, scene, stop_sign);
  const bool pass = verdict.pass;
  result.trace.push_back(NodeEvent{1, 0, 1, request.mode, std::move(text), std::move(verdict)});
  if (pass && detect_stop(plan, stop_sign)) {
    finish(result, plan, scene, stop_sign);
  } else {
    result.backtracks = 1;
    result.no_back = false;
  }
  return result;
}

SearchResult solve(const std::string& question, Generator& generator, const SceneGraph& scene,
                   const SearchConfig& config) {
  config.validate();
  if (config.mode == SearchMode::OneStop) return run_one_stop(question, generator, scene, config.stop_sign);
  return DepthFirstSearch(question, generator, scene, config).run();
}

std::string trace_to_jsonl(const std::vector<NodeEvent>& trace) {
  std::string out;
  for (const auto& event : trace) {
    nlohmann::json line = {{"depth", event.depth},
                           {"branch", event.branch},
                           {"t", event.t},
                           {"mode", to_string(event.mode)},
                           {"generated", event.generated_text},
                           {"verdict", nlohmann::json::parse(verdict_to_json(event.verdict))}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace tomt
