#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tomt/dataset.hpp"
#include "tomt/generator.hpp"
#include "tomt/llm_client.hpp"
#include "tomt/metrics.hpp"
#include "tomt/search.hpp"

namespace tomt {

struct GeneratorSpec {
  enum class Kind { Mock, Chat };

  Kind kind = Kind::Mock;
  // Mock
  double p_step = 1.0;
  double p_full = 1.0;
  std::vector<CorruptionKind> corruptions = {CorruptionKind::WrongFunction, CorruptionKind::WrongLiteral,
                                             CorruptionKind::UndefinedVariable};
  // Chat
  ClientConfig client;
  int example_count = 4;
  std::shared_ptr<CompletionBackend> backend;  // built from `client` when null

  std::string describe() const;
};

struct ExperimentConfig {
  std::vector<SearchConfig> configs;
  GeneratorSpec generator;
  int repeats = 3;
  std::uint64_t base_seed = 0;
  int workers = 0;  // 0: hardware concurrency
};

/// Seed for one (question, repeat) pair. Independent of the search config, so
/// runs under different budgets see the same generator stream.
std::uint64_t run_seed(std::uint64_t base_seed, int repeat, std::string_view question_id);

/// Aggregates over every run of one question type under one config.
struct Cell {
  QuestionType type = QuestionType::ShortRel;
  std::size_t config_index = 0;
  int runs = 0;
  int correct = 0;
  int success = 0;
  int no_back = 0;          // runs with zero backtracks
  int no_back_correct = 0;  // ... that also answered correctly
  int backtracked = 0;
  int inconsistency = 0;
  long total_steps = 0;
  double mean_hop = 0;

  double accuracy() const { return runs ? 100.0 * correct / runs : 0.0; }
  double mean_steps() const { return runs ? static_cast<double>(total_steps) / runs : 0.0; }
};

struct RssiEntry {
  std::optional<QuestionType> type;  // nullopt: all types
  std::size_t config_index = 0;
  std::optional<double> ratio_of_means;
  std::optional<double> mean_of_ratios;
};

struct CorrelationEntry {
  std::size_t config_index = 0;
  std::optional<double> accuracy;
  std::optional<double> steps;  // absent for one-stop
  std::optional<double> no_back;
};

struct Report {
  std::vector<SearchConfig> configs;
  std::string generator;
  int repeats = 0;
  std::uint64_t base_seed = 0;
  int questions = 0;
  std::vector<Cell> cells;  // type-major, then config order
  std::vector<RssiEntry> rssi;
  std::vector<CorrelationEntry> correlations;

  const Cell* cell(QuestionType type, std::size_t config_index) const;
};

struct ExperimentResult {
  std::vector<RunResult> runs;  // sorted by (question id, config, repeat)
  Report report;
};

/// Runs every question x config x repeat. Per-question failures are recorded
/// in the run results, never thrown.
ExperimentResult run_experiment(const std::vector<QuestionRecord>& questions, const ExperimentConfig& config,
                                const std::vector<QuestionRecord>& library = {});

/// Builds a report from run results; the input order does not matter.
Report aggregate(std::vector<RunResult> runs, const ExperimentConfig& config);

enum class ReportFormat { Table, Csv, Json };

ReportFormat report_format_from_string(std::string_view text);  // throws ConfigError
std::string render_report(const Report& report, ReportFormat format);

/// Inverse of the JSON rendering. Throws SchemaError.
Report report_from_json(std::string_view text);

/// Cells parsed back from the CSV rendering.
struct CsvCell {
  std::string structure;
  std::string type;
  std::string algorithm;
  int runs = 0;
  double accuracy = 0;
  double mean_steps = 0;
  double mean_hop = 0;
  double no_back = 0;
  double backtracked = 0;
  double inconsistency = 0;
};
std::vector<CsvCell> parse_report_csv(std::string_view csv);

}  // namespace tomt
