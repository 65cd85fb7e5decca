#include <gtest/gtest.h>

#include <deque>

#include <json.hpp>

#include "test_support.hpp"
#include "tomt/dataset.hpp"
#include "tomt/search.hpp"

using namespace tomt;

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

SearchConfig config(SearchMode mode) { return SearchConfig::defaults(mode); }

// Plays back canned generations in order.
class Scripted : public Generator {
 public:
  explicit Scripted(std::vector<std::string> replies) : replies_(replies.begin(), replies.end()) {}
  std::string generate(const GenRequest& request) override {
    requests.push_back(request);
    if (replies_.empty()) return {};
    std::string out = replies_.front();
    replies_.pop_front();
    return out;
  }
  std::vector<GenRequest> requests;

 private:
  std::deque<std::string> replies_;
};

const SceneGraph& ptr() {
  static const SceneGraph scene = load_scene(data_file("ptr_scene.json"));
  return scene;
}

}  // namespace

TEST(SearchConfig, DefaultsAndValidation) {
  EXPECT_EQ(config(SearchMode::ToT).branch, 3);
  EXPECT_EQ(config(SearchMode::ToTBlock).branch, 5);
  EXPECT_EQ(config(SearchMode::ToT).max_step, 30);
  EXPECT_EQ(config(SearchMode::ToTOS).start_depth, 2);
  EXPECT_EQ(config(SearchMode::ToTBlock).block_size, 2);
  EXPECT_EQ(config(SearchMode::ToTOS).label(), "tot-os(sn=2)");
  SearchConfig bad = config(SearchMode::ToT);
  bad.branch = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = config(SearchMode::ToT);
  bad.max_step = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = config(SearchMode::ToT);
  bad.stop_sign.clear();
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Search, PerfectOracleStepCounts) {
  for (const auto& r : bundled_fixtures().test) {
    const int h = hop_of(r);
    for (SearchMode mode : {SearchMode::OneStop, SearchMode::ToT, SearchMode::ToTOS, SearchMode::ToTBlock}) {
      MockGenerator mock(MockConfig{*r.gold_plan, 1.0, 1.0, MockConfig{}.corruptions, 1});
      const SearchResult result = solve(r.question, mock, *r.scene, config(mode));
      ASSERT_TRUE(result.success) << r.id << " " << to_string(mode);
      EXPECT_TRUE(answers_match(result.answer, r.answer)) << r.id;
      EXPECT_TRUE(result.no_back);
      EXPECT_EQ(result.backtracks, 0);
      int expected = 0;
      switch (mode) {
        case SearchMode::OneStop: expected = 1; break;
        case SearchMode::ToT: expected = h; break;
        case SearchMode::ToTOS: expected = std::min(2, h); break;
        case SearchMode::ToTBlock: expected = ceil_div(h, 2); break;
      }
      EXPECT_EQ(result.steps_used, expected) << r.id << " " << to_string(mode);
      EXPECT_EQ(result.plan, r.gold_plan);
    }
  }
}

TEST(Search, BlockAndStartDepthParameters) {
  const auto& r = bundled_fixtures().test.front();
  const int h = hop_of(r);
  for (int k = 1; k <= 4; ++k) {
    MockGenerator mock(MockConfig{*r.gold_plan, 1, 1, MockConfig{}.corruptions, 0});
    SearchConfig c = config(SearchMode::ToTBlock);
    c.block_size = k;
    EXPECT_EQ(solve(r.question, mock, *r.scene, c).steps_used, ceil_div(h, k));
  }
  for (int sn = 1; sn <= 4; ++sn) {
    MockGenerator mock(MockConfig{*r.gold_plan, 1, 1, MockConfig{}.corruptions, 0});
    SearchConfig c = config(SearchMode::ToTOS);
    c.start_depth = sn;
    EXPECT_EQ(solve(r.question, mock, *r.scene, c).steps_used, std::min(sn, h));
  }
}

TEST(Search, NeverExceedsBudget) {
  const auto questions = synthetic_questions(SyntheticOptions{40, 2, 10, 8, 5});
  for (int budget : {1, 3, 7, 30}) {
    for (SearchMode mode : {SearchMode::ToT, SearchMode::ToTOS, SearchMode::ToTBlock}) {
      for (std::size_t i = 0; i < questions.size(); ++i) {
        const auto& q = questions[i];
        MockGenerator mock(MockConfig{*q.gold_plan, 0.6, 0.4, MockConfig{}.corruptions, i});
        SearchConfig c = config(mode);
        c.max_step = budget;
        const SearchResult result = solve(q.question, mock, *q.scene, c);
        EXPECT_LE(result.steps_used, budget);
        EXPECT_EQ(result.steps_used, static_cast<int>(result.trace.size()));
        EXPECT_EQ(result.no_back, result.backtracks == 0);
        if (!result.success) EXPECT_TRUE(result.answer.empty());
        if (result.success) EXPECT_TRUE(detect_stop(*result.plan));
      }
    }
  }
}

TEST(Search, RejectedBranchThenRecovery) {
  Scripted gen({"Step 1:obj1 = filter_objects(\"chair\",all_obj)",  // unknown tool
                "Step 1:obj1 = filter_object(\"chair\",all_obj)",
                "Step 2:ans = count_object(obj1)"});
  const SearchResult result = solve("how many chairs?", gen, ptr(), config(SearchMode::ToT));
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.answer, "2");
  EXPECT_EQ(result.steps_used, 3);
  EXPECT_EQ(result.backtracks, 1);
  EXPECT_FALSE(result.no_back);
  ASSERT_EQ(result.trace.size(), 3u);
  EXPECT_FALSE(result.trace[0].verdict.pass);
  EXPECT_EQ(result.trace[1].branch, 1);
  EXPECT_EQ(result.trace[2].depth, 2);
  EXPECT_EQ(gen.requests[2].trajectory.size(), 1u);
}

TEST(Search, ExhaustedSubtreeCountsAsBacktrack) {
  // depth 1 branch 0 passes; its three children fail; depth 1 branch 1 then succeeds.
  Scripted gen({"Step 1:obj1 = filter_object(\"table\",all_obj)",
                "Step 2:x = nope(obj1)", "Step 2:x = nope(obj1)", "Step 2:x = nope(obj1)",
                "Step 1:ans = count_object(all_obj)"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::ToT));
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.answer, "3");
  EXPECT_EQ(result.steps_used, 5);
  EXPECT_EQ(result.backtracks, 4);  // three rejections plus the exhausted node
}

TEST(Search, BudgetExhaustion) {
  Scripted gen({});
  SearchConfig c = config(SearchMode::ToT);
  c.max_step = 4;
  const SearchResult result = solve("q", gen, ptr(), c);
  EXPECT_FALSE(result.success);
  EXPECT_FALSE(result.budget_exhausted);  // three empty branches exhaust the root first
  EXPECT_EQ(result.steps_used, 3);

  Scripted deep(std::vector<std::string>(10, "Step 9:obj9 = filter_object(\"chair\",all_obj)"));
  c.max_step = 5;
  const SearchResult r2 = solve("q", deep, ptr(), c);
  EXPECT_FALSE(r2.success);
  EXPECT_TRUE(r2.budget_exhausted);
  EXPECT_EQ(r2.steps_used, 5);
}

TEST(Search, EchoedTrajectoryIsSkipped) {
  Scripted gen({"Step 1:obj1 = filter_object(\"chair\",all_obj)",
                "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:ans = count_object(obj1)"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::ToT));
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.plan->size(), 2u);
}

TEST(Search, NextStepKeepsOnlyOneLine) {
  Scripted gen({"Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:ans = count_object(obj1)",
                "Step 2:ans = exist(obj1)"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::ToT));
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.answer, "yes");
}

TEST(Search, CustomStopSign) {
  Scripted gen({"Step 1:ans = count_object(all_obj)", "Step 2:final = exist(all_obj)"});
  SearchConfig c = config(SearchMode::ToT);
  c.stop_sign = "final";
  const SearchResult result = solve("q", gen, ptr(), c);
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.answer, "yes");
  EXPECT_EQ(result.steps_used, 2);
}

TEST(Search, LinesAfterStopAreStillChecked) {
  Scripted gen({"Step 1:ans = count_object(all_obj)\nStep 2:junk = nope()"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::OneStop));
  // The evaluator sees the whole generation, so the junk line rejects it.
  EXPECT_FALSE(result.success);
  Scripted clean({"Step 1:ans = count_object(all_obj)\n"});
  EXPECT_TRUE(solve("q", clean, ptr(), config(SearchMode::OneStop)).success);
}

TEST(Search, OneStopFailure) {
  Scripted gen({"I cannot answer that."});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::OneStop));
  EXPECT_FALSE(result.success);
  EXPECT_EQ(result.steps_used, 1);
  EXPECT_FALSE(result.no_back);
  EXPECT_TRUE(result.trace[0].verdict.has(DiagnosticKind::ParseFailure));
}

TEST(Search, UnformattableAnswerSucceedsWithEmptyAnswer) {
  Scripted gen({"Step 1:ans = filter_object(\"chair\",all_obj)"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::ToT));
  EXPECT_TRUE(result.success);
  EXPECT_TRUE(result.answer.empty());
}

TEST(Search, OsModeAsksForRemainingAtStartDepth) {
  Scripted gen({"Step 1:obj1 = filter_object(\"chair\",all_obj)",
                "Step 2:n = count_object(obj1)\nStep 3:ans = more_than(n,n)"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::ToTOS));
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.answer, "no");
  EXPECT_EQ(gen.requests[0].mode, GenerationMode::next_step());
  EXPECT_EQ(gen.requests[1].mode, GenerationMode::remaining());
}

TEST(Search, TraceJsonl) {
  Scripted gen({"Step 1:ans = count_object(all_obj)"});
  const SearchResult result = solve("q", gen, ptr(), config(SearchMode::ToT));
  const auto line = nlohmann::json::parse(trace_to_jsonl(result.trace));
  EXPECT_EQ(line["depth"], 1);
  EXPECT_EQ(line["mode"], "next-step");
  EXPECT_TRUE(line["verdict"]["pass"].get<bool>());
}

TEST(Search, GenerationErrorsPropagate) {
  struct Throwing : Generator {
    std::string generate(const GenRequest&) override { throw TransportError("down"); }
  } gen;
  EXPECT_THROW(solve("q", gen, ptr(), config(SearchMode::ToT)), TransportError);
}
