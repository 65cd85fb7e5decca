#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "golden_support.hpp"
#include "tomt/harness.hpp"

using namespace tomt;

namespace {

std::vector<SearchConfig> all_modes() {
  return {SearchConfig::defaults(SearchMode::OneStop), SearchConfig::defaults(SearchMode::ToT),
          SearchConfig::defaults(SearchMode::ToTOS), SearchConfig::defaults(SearchMode::ToTBlock)};
}

ExperimentConfig mock_config(double p_step, double p_full, int repeats = 2) {
  ExperimentConfig config;
  config.configs = all_modes();
  config.generator.p_step = p_step;
  config.generator.p_full = p_full;
  config.repeats = repeats;
  config.base_seed = 11;
  config.workers = 4;
  return config;
}

const std::vector<QuestionRecord>& fixtures() { return bundled_fixtures().test; }

}  // namespace

TEST(Harness, PerfectOracleIsAlwaysRight) {
  const auto result = run_experiment(fixtures(), mock_config(1, 1));
  EXPECT_EQ(result.runs.size(), fixtures().size() * 4 * 2);
  for (const auto& r : result.runs) {
    EXPECT_TRUE(r.correct) << r.question_id << " " << r.config_index << " " << r.error;
    EXPECT_TRUE(r.no_back);
  }
  for (const auto& cell : result.report.cells) {
    EXPECT_DOUBLE_EQ(cell.accuracy(), 100.0);
    EXPECT_EQ(cell.inconsistency, 0);
  }
}

TEST(Harness, HopelessOneStopScoresZero) {
  ExperimentConfig config = mock_config(1, 0);
  config.configs = {SearchConfig::defaults(SearchMode::OneStop)};
  // a swapped literal can still land on the right answer, so only fatal corruptions here
  config.generator.corruptions = {CorruptionKind::WrongFunction, CorruptionKind::UndefinedVariable};
  const auto result = run_experiment(fixtures(), config);
  for (const auto& cell : result.report.cells) EXPECT_EQ(cell.correct, 0);
}

TEST(Harness, NoBackPlusBacktrackedIsRuns) {
  const auto result = run_experiment(fixtures(), mock_config(0.6, 0.3));
  for (const auto& cell : result.report.cells) {
    EXPECT_EQ(cell.no_back + cell.backtracked, cell.runs);
    EXPECT_LE(cell.no_back_correct, cell.no_back);
    EXPECT_LE(cell.correct, cell.success);
    EXPECT_EQ(cell.inconsistency, cell.success - cell.correct);
  }
}

TEST(Harness, AggregateIgnoresRunOrderAndWorkerCount) {
  ExperimentConfig config = mock_config(0.7, 0.5);
  const auto a = run_experiment(fixtures(), config);
  config.workers = 1;
  const auto b = run_experiment(fixtures(), config);
  EXPECT_EQ(render_report(a.report, ReportFormat::Json), render_report(b.report, ReportFormat::Json));

  std::vector<RunResult> shuffled = a.runs;
  std::mt19937 g(3);
  std::shuffle(shuffled.begin(), shuffled.end(), g);
  EXPECT_EQ(render_report(aggregate(shuffled, config), ReportFormat::Json),
            render_report(a.report, ReportFormat::Json));
}

TEST(Harness, QuestionOrderDoesNotMatter) {
  std::vector<QuestionRecord> reversed(fixtures().rbegin(), fixtures().rend());
  const auto config = mock_config(0.7, 0.5);
  EXPECT_EQ(render_report(run_experiment(fixtures(), config).report, ReportFormat::Csv),
            render_report(run_experiment(reversed, config).report, ReportFormat::Csv));
}

TEST(Harness, RssiEqualsBlockSizeWhenItDividesEveryHop) {
  std::vector<QuestionRecord> even;
  for (const auto& q : synthetic_questions(SyntheticOptions{30, 2, 10, 8, 4})) {
    if (q.hops % 2 == 0) even.push_back(q);
  }
  ASSERT_FALSE(even.empty());
  ExperimentConfig config = mock_config(1, 1, 1);
  config.configs = {SearchConfig::defaults(SearchMode::ToT), SearchConfig::defaults(SearchMode::ToTBlock)};
  const auto result = run_experiment(even, config);
  ASSERT_FALSE(result.report.rssi.empty());
  for (const auto& entry : result.report.rssi) {
    EXPECT_DOUBLE_EQ(*entry.ratio_of_means, 2.0);
    EXPECT_DOUBLE_EQ(*entry.mean_of_ratios, 2.0);
  }
}

TEST(Harness, CorrelationsAreNullForOneStopSteps) {
  const auto result = run_experiment(fixtures(), mock_config(0.8, 0.5));
  ASSERT_EQ(result.report.correlations.size(), 4u);
  EXPECT_FALSE(result.report.correlations[0].steps);
  EXPECT_TRUE(result.report.correlations[1].steps);
  // perfect ToT: NoBack is constant across types, so that correlation is undefined
  const auto perfect = run_experiment(fixtures(), mock_config(1, 1));
  EXPECT_FALSE(perfect.report.correlations[1].no_back);
}

TEST(Harness, MissingGoldPlanIsRecordedNotThrown) {
  QuestionRecord q = fixtures().front();
  q.gold_plan.reset();
  ExperimentConfig config = mock_config(1, 1, 1);
  config.configs = {SearchConfig::defaults(SearchMode::ToT)};
  const auto result = run_experiment({q}, config);
  ASSERT_EQ(result.runs.size(), 1u);
  EXPECT_FALSE(result.runs[0].error.empty());
  EXPECT_FALSE(result.runs[0].correct);
}

TEST(Harness, RejectsBadConfig) {
  ExperimentConfig config = mock_config(1, 1);
  config.repeats = 0;
  EXPECT_THROW(run_experiment(fixtures(), config), ConfigError);
  config = mock_config(1, 1);
  config.configs[1].branch = 0;
  EXPECT_THROW(run_experiment(fixtures(), config), ConfigError);
}

TEST(Harness, RunSeedIndependentOfConfig) {
  EXPECT_EQ(run_seed(5, 1, "q1"), run_seed(5, 1, "q1"));
  EXPECT_NE(run_seed(5, 1, "q1"), run_seed(5, 2, "q1"));
  EXPECT_NE(run_seed(5, 1, "q1"), run_seed(5, 1, "q2"));
}

TEST(Report, GoldenRenderings) {
  ExperimentConfig config = mock_config(1, 1);
  config.base_seed = 0;
  const auto result = run_experiment(fixtures(), config);
  expect_golden("report_perfect.txt", render_report(result.report, ReportFormat::Table));
  expect_golden("report_perfect.csv", render_report(result.report, ReportFormat::Csv));
  expect_golden("report_perfect.json", render_report(result.report, ReportFormat::Json));
}

TEST(Report, EmptyConfigListGivesHeaderOnly) {
  ExperimentConfig config = mock_config(1, 1);
  config.configs.clear();
  const auto result = run_experiment(fixtures(), config);
  EXPECT_TRUE(result.report.cells.empty());
  const std::string table = render_report(result.report, ReportFormat::Table);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1);
  expect_golden("report_empty.txt", table);
}

TEST(Report, CsvParsesBack) {
  const auto result = run_experiment(fixtures(), mock_config(0.7, 0.4));
  const auto rows = parse_report_csv(render_report(result.report, ReportFormat::Csv));
  ASSERT_EQ(rows.size(), result.report.cells.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Cell& cell = result.report.cells[i];
    EXPECT_EQ(rows[i].type, to_string(cell.type));
    EXPECT_EQ(rows[i].runs, cell.runs);
    EXPECT_NEAR(rows[i].accuracy, cell.accuracy(), 0.005 + 1e-9);
    EXPECT_NEAR(rows[i].mean_steps, cell.mean_steps(), 0.005 + 1e-9);
    EXPECT_NEAR(rows[i].no_back + rows[i].backtracked, static_cast<double>(cell.runs) / 2, 0.005 + 1e-9);
  }
}

TEST(Report, JsonRoundTrip) {
  const auto result = run_experiment(fixtures(), mock_config(0.7, 0.4));
  const std::string json = render_report(result.report, ReportFormat::Json);
  EXPECT_EQ(render_report(report_from_json(json), ReportFormat::Json), json);
  EXPECT_EQ(render_report(report_from_json(json), ReportFormat::Table),
            render_report(result.report, ReportFormat::Table));
  EXPECT_THROW(report_from_json("{}"), SchemaError);
  EXPECT_THROW(report_from_json("not json"), SchemaError);
}

TEST(Report, FormatNames) {
  EXPECT_EQ(report_format_from_string("csv"), ReportFormat::Csv);
  EXPECT_THROW(report_format_from_string("xml"), ConfigError);
}
