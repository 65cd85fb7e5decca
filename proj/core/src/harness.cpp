#include "tomt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <tuple>

#include "tomt/errors.hpp"
#include "tomt/interpreter.hpp"

namespace tomt {

std::string GeneratorSpec::describe() const {
  if (kind == Kind::Chat) {
    return "chat(model=" + client.model + ", mode=" + std::string(to_string(client.mode)) +
           ", examples=" + std::to_string(example_count) + ")";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "mock(p_step=%.3f, p_full=%.3f)", p_step, p_full);
  return buf;
}

std::uint64_t run_seed(std::uint64_t base_seed, int repeat, std::string_view question_id) {
  return mix_seed(base_seed + static_cast<std::uint64_t>(repeat), stable_hash(question_id));
}

const Cell* Report::cell(QuestionType type, std::size_t config_index) const {
  for (const auto& c : cells) {
    if (c.type == type && c.config_index == config_index) return &c;
  }
  return nullptr;
}

namespace {

struct Job {
  const QuestionRecord* question;
  std::size_t config_index;
  int repeat;
};

RunResult run_job(const Job& job, const ExperimentConfig& config,
                  const std::map<QuestionType, std::vector<Example>>& examples,
                  const std::shared_ptr<CompletionBackend>& backend) {
  const QuestionRecord& q = *job.question;
  RunResult r;
  r.question_id = q.id;
  r.type = q.type;
  r.hops = q.hops;
  r.config_index = job.config_index;
  r.repeat = job.repeat;
  r.no_back = false;

  const std::uint64_t seed = run_seed(config.base_seed, job.repeat, q.id);
  std::unique_ptr<Generator> generator;
  const GeneratorSpec& spec = config.generator;
  try {
    if (spec.kind == GeneratorSpec::Kind::Mock) {
      if (!q.gold_plan) throw MissingGoldPlan("mock generator needs a gold plan for '" + q.id + "'");
      generator = std::make_unique<MockGenerator>(MockConfig{*q.gold_plan, spec.p_step, spec.p_full, spec.corruptions, seed});
    } else {
      ChatGeneratorConfig chat;
      auto it = examples.find(q.type);
      if (it != examples.end()) chat.library = it->second;
      chat.example_count = spec.example_count;
      chat.seed = seed;
      generator = std::make_unique<ChatGenerator>(std::move(chat), backend);
    }
  } catch (const Error& e) {
    r.error = e.what();
    return r;
  }

  CountingGenerator counted(*generator);
  try {
    const SearchResult s = solve(q.question, counted, *q.scene, config.configs[job.config_index]);
    r.success = s.success;
    r.budget_exhausted = s.budget_exhausted;
    r.steps_used = s.steps_used;
    r.backtracks = s.backtracks;
    r.no_back = s.no_back;
    r.answer = s.answer;
    r.correct = s.success && answers_match(s.answer, q.answer);
  } catch (const Error& e) {
    r.error = e.what();
    r.steps_used = counted.calls();
  }
  return r;
}

bool run_order(const RunResult& a, const RunResult& b) {
  return std::tie(a.question_id, a.config_index, a.repeat) < std::tie(b.question_id, b.config_index, b.repeat);
}

double mean(const std::vector<double>& values) {
  double total = 0;
  for (double v : values) total += v;
  return values.empty() ? 0 : total / static_cast<double>(values.size());
}

}  // namespace

ExperimentResult run_experiment(const std::vector<QuestionRecord>& questions, const ExperimentConfig& config,
                                const std::vector<QuestionRecord>& library) {
  for (const auto& c : config.configs) c.validate();
  if (config.repeats < 1) throw ConfigError("repeats must be >= 1");

  std::map<QuestionType, std::vector<Example>> examples;
  for (const auto& record : library) {
    if (record.gold_plan) examples[record.type].push_back(Example{record.question, *record.gold_plan});
  }
  std::shared_ptr<CompletionBackend> backend = config.generator.backend;
  if (config.generator.kind == GeneratorSpec::Kind::Chat && !backend) {
    backend = std::make_shared<ChatClient>(config.generator.client);
  }

  std::vector<Job> jobs;
  for (const auto& q : questions) {
    for (std::size_t c = 0; c < config.configs.size(); ++c) {
      for (int rep = 0; rep < config.repeats; ++rep) jobs.push_back(Job{&q, c, rep});
    }
  }

  std::vector<RunResult> runs(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) runs[i] = run_job(jobs[i], config, examples, backend);
  };
  std::size_t workers = config.workers > 0 ? static_cast<std::size_t>(config.workers)
                                           : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult result;
  result.report = aggregate(runs, config);
  std::sort(runs.begin(), runs.end(), run_order);
  result.runs = std::move(runs);
  return result;
}

Report aggregate(std::vector<RunResult> runs, const ExperimentConfig& config) {
  std::sort(runs.begin(), runs.end(), run_order);

  Report report;
  report.configs = config.configs;
  report.generator = config.generator.describe();
  report.repeats = config.repeats;
  report.base_seed = config.base_seed;
  {
    std::vector<std::string> ids;
    for (const auto& r : runs) {
      if (ids.empty() || ids.back() != r.question_id) ids.push_back(r.question_id);
    }
    report.questions = static_cast<int>(ids.size());
  }

  std::map<std::pair<QuestionType, std::size_t>, std::vector<const RunResult*>> groups;
  for (const auto& r : runs) groups[{r.type, r.config_index}].push_back(&r);

  for (QuestionType type : kQuestionTypes) {
    for (std::size_t c = 0; c < config.configs.size(); ++c) {
      auto it = groups.find({type, c});
      if (it == groups.end()) continue;
      Cell cell;
      cell.type = type;
      cell.config_index = c;
      double hop_total = 0;
      for (const RunResult* r : it->second) {
        ++cell.runs;
        cell.correct += r->correct;
        cell.success += r->success;
        cell.no_back += r->no_back;
        cell.no_back_correct += r->no_back && r->correct;
        cell.inconsistency += r->success && !r->correct;
        cell.total_steps += r->steps_used;
        hop_total += r->hops;
      }
      cell.backtracked = cell.runs - cell.no_back;
      cell.mean_hop = hop_total / cell.runs;
      report.cells.push_back(cell);
    }
  }

  // RSSI against the first plain ToT config.
  std::optional<std::size_t> baseline;
  for (std::size_t c = 0; c < config.configs.size() && !baseline; ++c) {
    if (config.configs[c].mode == SearchMode::ToT) baseline = c;
  }
  if (baseline) {
    std::map<std::tuple<std::string, int>, int> tot_steps;
    for (const auto& r : runs) {
      if (r.config_index == *baseline) tot_steps[{r.question_id, r.repeat}] = r.steps_used;
    }
    for (std::size_t c = 0; c < config.configs.size(); ++c) {
      const SearchMode mode = config.configs[c].mode;
      if (mode != SearchMode::ToTOS && mode != SearchMode::ToTBlock) continue;
      std::vector<std::optional<QuestionType>> scopes;
      for (QuestionType type : kQuestionTypes) {
        if (report.cell(type, c) && report.cell(type, *baseline)) scopes.emplace_back(type);
      }
      scopes.emplace_back(std::nullopt);
      for (const auto& scope : scopes) {
        std::vector<double> base_steps, variant_steps, ratios;
        for (const auto& r : runs) {
          if (r.config_index != c || (scope && r.type != *scope)) continue;
          auto it = tot_steps.find({r.question_id, r.repeat});
          if (it == tot_steps.end()) continue;
          base_steps.push_back(it->second);
          variant_steps.push_back(r.steps_used);
          if (r.steps_used > 0) ratios.push_back(static_cast<double>(it->second) / r.steps_used);
        }
        if (base_steps.empty()) continue;
        RssiEntry entry;
        entry.type = scope;
        entry.config_index = c;
        try {
          entry.ratio_of_means = rssi(mean(base_steps), mean(variant_steps));
        } catch (const DivisionByZero&) {
        }
        if (!ratios.empty()) entry.mean_of_ratios = mean(ratios);
        report.rssi.push_back(entry);
      }
    }
  }

  // Hop against accuracy, steps and NoBack, across question types.
  for (std::size_t c = 0; c < config.configs.size(); ++c) {
    std::vector<double> hop, acc, steps, no_back;
    for (const auto& cell : report.cells) {
      if (cell.config_index != c) continue;
      hop.push_back(cell.mean_hop);
      acc.push_back(cell.accuracy());
      steps.push_back(cell.mean_steps());
      no_back.push_back(static_cast<double>(cell.no_back) / config.repeats);
    }
    CorrelationEntry entry;
    entry.config_index = c;
    auto correlate = [&](const std::vector<double>& y) -> std::optional<double> {
      try {
        return pearson(hop, y);
      } catch (const DegenerateInput&) {
        return std::nullopt;
      }
    };
    entry.accuracy = correlate(acc);
    if (config.configs[c].mode != SearchMode::OneStop) entry.steps = correlate(steps);
    entry.no_back = correlate(no_back);
    report.correlations.push_back(entry);
  }
  return report;
}

}  // namespace tomt
