// tomt: plan search experiments from the command line.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "tomt/dataset.hpp"
#include "tomt/errors.hpp"
#include "tomt/evaluator.hpp"
#include "tomt/harness.hpp"
#include "tomt/interpreter.hpp"
#include "tomt/plan_dsl.hpp"
#include "tomt/search.hpp"

namespace {

constexpr int kValidationError = 1;
constexpr int kConfigError = 2;

struct CommonOptions {
  std::string dataset;
  std::string split = "test";
  int synthetic = 0;
  int min_hop = 2;
  int max_hop = 10;
  std::string generator = "mock";
  double p_step = 1.0;
  double p_full = 1.0;
  std::uint64_t seed = 0;
  int repeats = 3;
  int workers = 0;
  std::string out;
  std::string format = "table";
  // chat
  std::string model;
  std::string base_url = "https://api.openai.com";
  std::string api_key_env = std::string(tomt::kDefaultApiKeyEnv);
  std::string client_mode = "live";
  std::string cache;
  int examples = 4;
  double temperature = 1.0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--dataset", o.dataset, "JSONL dataset (default: bundled fixtures)");
  cmd->add_option("--split", o.split, "test, library or all")->check(CLI::IsMember({"test", "library", "all"}));
  cmd->add_option("--synthetic", o.synthetic, "use N synthetic chain questions instead of a dataset");
  cmd->add_option("--min-hop", o.min_hop, "synthetic: shortest chain");
  cmd->add_option("--max-hop", o.max_hop, "synthetic: longest chain");
  cmd->add_option("--generator", o.generator, "mock or chat")->check(CLI::IsMember({"mock", "chat"}));
  cmd->add_option("--p-step", o.p_step, "mock: chance a next-step generation is correct");
  cmd->add_option("--p-full", o.p_full, "mock: chance a multi-step generation is correct");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--repeats", o.repeats, "runs per question");
  cmd->add_option("--workers", o.workers, "worker threads (0: all cores)");
  cmd->add_option("--out", o.out, "write the report here");
  cmd->add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--model", o.model, "chat: model id");
  cmd->add_option("--base-url", o.base_url, "chat: API base URL");
  cmd->add_option("--api-key-env", o.api_key_env, "chat: environment variable holding the API key");
  cmd->add_option("--client-mode", o.client_mode, "chat: live, record or replay")
      ->check(CLI::IsMember({"live", "record", "replay"}));
  cmd->add_option("--cache", o.cache, "chat: record/replay cache file");
  cmd->add_option("--examples", o.examples, "chat: examples per prompt");
  cmd->add_option("--temperature", o.temperature, "chat: sampling temperature");
}

struct Questions {
  std::vector<tomt::QuestionRecord> test;
  std::vector<tomt::QuestionRecord> library;
};

Questions load_questions(const CommonOptions& o) {
  Questions q;
  if (o.synthetic > 0) {
    q.test = tomt::synthetic_questions({o.synthetic, o.min_hop, o.max_hop, 8, o.seed});
    return q;
  }
  const tomt::DatasetSplit data = o.dataset.empty() ? tomt::bundled_fixtures() : tomt::load_dataset(o.dataset);
  q.library = data.library;
  if (o.split == "test" || o.split == "all") q.test.insert(q.test.end(), data.test.begin(), data.test.end());
  if (o.split == "library" || o.split == "all") {
    q.test.insert(q.test.end(), data.library.begin(), data.library.end());
  }
  return q;
}

tomt::ExperimentConfig experiment(const CommonOptions& o, std::vector<tomt::SearchConfig> configs) {
  tomt::ExperimentConfig config;
  config.configs = std::move(configs);
  config.repeats = o.repeats;
  config.base_seed = o.seed;
  config.workers = o.workers;
  auto& g = config.generator;
  if (o.generator == "chat") {
    g.kind = tomt::GeneratorSpec::Kind::Chat;
    g.client.model = o.model;
    g.client.base_url = o.base_url;
    g.client.api_key_env = o.api_key_env;
    g.client.mode = tomt::client_mode_from_string(o.client_mode);
    g.client.cache_path = o.cache;
    g.client.temperature = o.temperature;
    g.example_count = o.examples;
    if (g.client.model.empty()) throw tomt::ConfigError("--model is required with --generator chat");
  } else {
    g.p_step = o.p_step;
    g.p_full = o.p_full;
  }
  return config;
}

void emit(const tomt::Report& report, const CommonOptions& o) {
  const auto format = tomt::report_format_from_string(o.format);
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw tomt::ConfigError("cannot write " + o.out);
    // Files default to JSON so `report` can read them back.
    out << tomt::render_report(report, o.format == "table" ? tomt::ReportFormat::Json : format);
  }
  std::cout << tomt::render_report(report, format);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tomt::ConfigError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw tomt::ConfigError("not a number in grid: '" + item + "'");
    }
  }
  if (out.empty()) throw tomt::ConfigError("empty grid");
  return out;
}

std::vector<tomt::SearchConfig> all_modes(int max_step, int start_depth, int block_size) {
  std::vector<tomt::SearchConfig> out;
  for (auto mode : {tomt::SearchMode::OneStop, tomt::SearchMode::ToT, tomt::SearchMode::ToTOS,
                    tomt::SearchMode::ToTBlock}) {
    auto c = tomt::SearchConfig::defaults(mode);
    c.max_step = max_step;
    c.start_depth = start_depth;
    c.block_size = block_size;
    out.push_back(c);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan search over scene graphs: run, benchmark and inspect."};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string mode = "tot";
  int branch = 0, max_step = 30, start_depth = 2, block_size = 2;
  auto* run = app.add_subcommand("run", "run one search configuration over a dataset");
  add_common(run, run_opts);
  run->add_option("--mode", mode, "onestop, tot, tot-os or tot-block")
      ->check(CLI::IsMember({"onestop", "tot", "tot-os", "tot-block"}));
  run->add_option("--branch", branch, "children per node (0: 3, or 5 for tot-block)");
  run->add_option("--max-step", max_step, "generator budget per question");
  run->add_option("--start-depth", start_depth, "tot-os: first depth that tries the remaining steps");
  run->add_option("--block-size", block_size, "tot-block: steps per node");

  CommonOptions bench_opts;
  int bench_max_step = 30, bench_start_depth = 2, bench_block_size = 2;
  auto* bench = app.add_subcommand("bench", "run all four algorithms and report");
  add_common(bench, bench_opts);
  bench->add_option("--max-step", bench_max_step, "generator budget per question");
  bench->add_option("--start-depth", bench_start_depth, "tot-os start depth");
  bench->add_option("--block-size", bench_block_size, "tot-block block size");

  std::string plan_path, scene_path;
  auto* eval_plan = app.add_subcommand("eval-plan", "check and execute a plan on a scene");
  eval_plan->add_option("--plan", plan_path, "plan text file")->required();
  eval_plan->add_option("--scene", scene_path, "scene JSON file")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-dataset", "load a dataset and re-execute its gold plans");
  validate->add_option("--dataset", validate_path, "JSONL dataset (default: bundled fixtures)");

  CommonOptions sim_opts;
  sim_opts.synthetic = 100;
  sim_opts.format = "csv";
  std::string p_step_grid = "0.5,0.7,0.9", p_full_grid = "0.3,0.5,0.7";
  int sim_max_step = 30;
  auto* simulate = app.add_subcommand("simulate", "sweep mock accuracy over a p_step x p_full grid");
  add_common(simulate, sim_opts);
  simulate->add_option("--p-step-grid", p_step_grid, "comma-separated p_step values");
  simulate->add_option("--p-full-grid", p_full_grid, "comma-separated p_full values");
  simulate->add_option("--max-step", sim_max_step, "generator budget per question");

  std::string report_in, report_format = "table";
  auto* report = app.add_subcommand("report", "render a saved JSON report");
  report->add_option("--in", report_in, "JSON report")->required();
  report->add_option("--format", report_format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (run->parsed()) {
      auto config = tomt::SearchConfig::defaults(tomt::search_mode_from_string(mode));
      if (branch != 0) config.branch = branch;  // 0 keeps the mode default; negatives fail validation
      config.max_step = max_step;
      config.start_depth = start_depth;
      config.block_size = block_size;
      const auto questions = load_questions(run_opts);
      const auto result = tomt::run_experiment(questions.test, experiment(run_opts, {config}), questions.library);
      emit(result.report, run_opts);
    } else if (bench->parsed()) {
      const auto questions = load_questions(bench_opts);
      const auto configs = all_modes(bench_max_step, bench_start_depth, bench_block_size);
      const auto result = tomt::run_experiment(questions.test, experiment(bench_opts, configs), questions.library);
      emit(result.report, bench_opts);
    } else if (eval_plan->parsed()) {
      const tomt::Plan plan = tomt::parse_plan(slurp(plan_path));
      const tomt::SceneGraph scene = tomt::load_scene(slurp(scene_path));
      const tomt::Verdict verdict = tomt::evaluate_candidate(plan, scene);
      if (!verdict.pass) {
        std::cerr << tomt::verdict_to_json(verdict) << "\n";
        return kValidationError;
      }
      const tomt::Trace trace = tomt::execute_plan(plan, scene);
      std::cout << tomt::trace_to_jsonl(trace);
      if (!trace.answer) {
        std::cerr << "plan never assigns " << tomt::kDefaultStopSign << "\n";
        return kValidationError;
      }
      std::cout << "answer: " << tomt::format_answer(*trace.answer) << "\n";
    } else if (validate->parsed()) {
      const tomt::DatasetSplit data =
          validate_path.empty() ? tomt::bundled_fixtures() : tomt::load_dataset(validate_path);
      std::map<std::string, std::pair<int, int>> counts;
      for (const auto& r : data.library) ++counts[std::string(tomt::to_string(r.type))].first;
      for (const auto& r : data.test) ++counts[std::string(tomt::to_string(r.type))].second;
      std::printf("%-12s %8s %6s\n", "type", "library", "test");
      for (const auto& [type, c] : counts) std::printf("%-12s %8d %6d\n", type.c_str(), c.first, c.second);
      std::printf("ok: %zu records\n", data.library.size() + data.test.size());
    } else if (simulate->parsed()) {
      const auto questions = load_questions(sim_opts);
      std::string out = "p_step,p_full,algorithm,accuracy,mean_steps,no_back,inconsistency\n";
      for (double ps : parse_grid(p_step_grid)) {
        for (double pf : parse_grid(p_full_grid)) {
          CommonOptions o = sim_opts;
          o.p_step = ps;
          o.p_full = pf;
          const auto configs = all_modes(sim_max_step, 2, 2);
          const auto result = tomt::run_experiment(questions.test, experiment(o, configs), questions.library);
          for (std::size_t c = 0; c < configs.size(); ++c) {
            int runs = 0, correct = 0, no_back = 0, inconsistency = 0;
            long steps = 0;
            for (const auto& r : result.runs) {
              if (r.config_index != c) continue;
              ++runs;
              correct += r.correct;
              no_back += r.no_back;
              inconsistency += r.success && !r.correct;
              steps += r.steps_used;
            }
            char line[256];
            std::snprintf(line, sizeof line, "%.2f,%.2f,%s,%.2f,%.2f,%.2f,%.2f\n", ps, pf, configs[c].label().c_str(),
                          runs ? 100.0 * correct / runs : 0.0, runs ? double(steps) / runs : 0.0,
                          double(no_back) / o.repeats, double(inconsistency) / o.repeats);
            out += line;
          }
        }
      }
      if (!sim_opts.out.empty()) {
        std::ofstream f(sim_opts.out, std::ios::binary);
        f << out;
      }
      std::cout << out;
    } else if (report->parsed()) {
      const tomt::Report r = tomt::report_from_json(slurp(report_in));
      std::cout << tomt::render_report(r, tomt::report_format_from_string(report_format));
    }
  } catch (const tomt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const tomt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return 0;
}
