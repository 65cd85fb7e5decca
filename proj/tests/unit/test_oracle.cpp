// Cross-checks the interpreter against the brute-force oracle.
#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "brute_oracle.hpp"
#include "tomt/dataset.hpp"
#include "tomt/generator.hpp"
#include "tomt/interpreter.hpp"

using namespace tomt;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string oracle_form(const Value& value) {
  struct {
    std::string operator()(const Objects& v) const {
      std::string out = "objs:";
      for (std::size_t i = 0; i < v.items.size(); ++i) out += (i ? "," : "") + std::to_string(v.items[i]);
      return out;
    }
    std::string operator()(const Num& v) const { return "num:" + std::to_string(v.value); }
    std::string operator()(const Bool& v) const { return std::string("bool:") + (v.value ? "yes" : "no"); }
    std::string operator()(const Text& v) const { return "text:" + v.value; }
    std::string operator()(const Relations& v) const {
      std::string out = "rels:";
      for (std::size_t i = 0; i < v.names.size(); ++i) out += (i ? "," : "") + v.names[i];
      return out;
    }
  } visitor;
  return std::visit(visitor, value);
}

void compare(const QuestionRecord& r, const Plan& plan, int& agreed_ok, int& agreed_fail) {
  const nlohmann::json scene = nlohmann::json::parse(record_to_json(r))["scene"];
  std::vector<std::string> lines;
  for (const auto& step : plan.steps) lines.push_back(render_step(step));
  const oracle::Outcome expected = oracle::run(lines, scene);

  const ExecutionOutcome actual = run_plan(plan, *r.scene);
  bool ok = !actual.failure && actual.trace.answer;
  std::string answer;
  if (ok) {
    try {
      answer = format_answer(*actual.trace.answer);
    } catch (const RuntimeFailure&) {
      ok = false;
    }
  }
  const std::string context = r.id + "\n" + render_plan(plan);
  ASSERT_EQ(ok, expected.ok) << context << "oracle: " << expected.failure;
  const std::size_t shared = std::min(expected.values.size(), actual.trace.entries.size());
  for (std::size_t i = 0; i < shared; ++i) {
    EXPECT_EQ(lower(oracle_form(actual.trace.entries[i].value)), lower(expected.values[i])) << context << "step " << i + 1;
  }
  if (ok) {
    EXPECT_EQ(answer, expected.answer) << context;
    ++agreed_ok;
  } else {
    ++agreed_fail;
  }
}

}  // namespace

TEST(Oracle, AgreesOnGoldPlans) {
  int ok = 0, fail = 0;
  const DatasetSplit& fixtures = bundled_fixtures();
  for (const auto* records : {&fixtures.library, &fixtures.test}) {
    for (const auto& r : *records) compare(r, *r.gold_plan, ok, fail);
  }
  for (const auto& r : synthetic_questions(SyntheticOptions{50, 1, 12, 8, 31})) compare(r, *r.gold_plan, ok, fail);
  EXPECT_EQ(fail, 0);
  EXPECT_GT(ok, 100);
}

TEST(Oracle, AgreesOnCorruptedPlans) {
  int ok = 0, fail = 0;
  const auto& records = bundled_fixtures().test;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (const auto& r : records) {
      MockGenerator mock(MockConfig{*r.gold_plan, 0.0, 0.0, MockConfig{}.corruptions, seed});
      GenRequest request;
      request.mode = GenerationMode::remaining();
      compare(r, parse_plan(mock.generate(request)), ok, fail);
    }
  }
  // Swapped literals sometimes still resolve; most corruptions must fail.
  EXPECT_GT(fail, ok);
}
