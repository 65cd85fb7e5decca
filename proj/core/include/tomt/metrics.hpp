#pragma once

#include <string>
#include <vector>

#include "tomt/dataset.hpp"

namespace tomt {

/// Outcome of one search over one question.
struct RunResult {
  std::string question_id;
  QuestionType type = QuestionType::ShortRel;
  int hops = 0;
  std::size_t config_index = 0;
  int repeat = 0;
  bool success = false;  // evaluator-accepted complete plan that executed
  bool correct = false;  // success and the answer matches the gold answer
  bool budget_exhausted = false;
  int steps_used = 0;
  int backtracks = 0;
  bool no_back = true;
  std::string answer;
  std::string error;  // generator or setup failure, if any
};

/// mean_steps_tot / mean_steps_variant. Throws DivisionByZero when the variant mean is not positive.
double rssi(double mean_steps_tot, double mean_steps_variant);

/// Sample Pearson correlation. Throws DegenerateInput for mismatched sizes,
/// fewer than two points or zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Successful plans whose answer is wrong.
int inconsistency_count(const std::vector<RunResult>& results);

}  // namespace tomt
