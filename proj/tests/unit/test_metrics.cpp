#include <gtest/gtest.h>

#include "tomt/errors.hpp"
#include "tomt/metrics.hpp"

using namespace tomt;

TEST(Rssi, PublishedRatios) {
  EXPECT_NEAR(rssi(5.48, 3.04), 1.8026, 1e-4);
  EXPECT_NEAR(rssi(15.90, 9.63), 1.6511, 1e-4);
  EXPECT_DOUBLE_EQ(rssi(5.48, 3.04), 5.48 / 3.04);
  EXPECT_DOUBLE_EQ(rssi(4.0, 4.0), 1.0);
}

TEST(Rssi, NonPositiveDenominator) {
  EXPECT_THROW(rssi(3.0, 0.0), DivisionByZero);
  EXPECT_THROW(rssi(3.0, -1.0), DivisionByZero);
}

TEST(Pearson, KnownValues) {
  EXPECT_NEAR(pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-12);
  EXPECT_NEAR(pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-12);
  // deviations -1.5,-.5,.5,1.5 against -1.5,.5,-.5,1.5: 4 / 5
  EXPECT_NEAR(pearson({1, 2, 3, 4}, {1, 3, 2, 4}), 0.8, 1e-12);
  EXPECT_NEAR(pearson({1, 2, 3}, {1, 3, 2}), 0.5, 1e-12);
}

TEST(Pearson, SymmetricAndScaleInvariant) {
  const std::vector<double> x = {2, 4, 4, 5, 9}, y = {1, 0.5, 3, 2, 7};
  std::vector<double> scaled;
  for (double v : y) scaled.push_back(3 * v + 10);
  EXPECT_NEAR(pearson(x, y), pearson(y, x), 1e-12);
  EXPECT_NEAR(pearson(x, y), pearson(x, scaled), 1e-12);
  EXPECT_LE(std::abs(pearson(x, y)), 1.0);
}

TEST(Pearson, Degenerate) {
  EXPECT_THROW(pearson({1}, {2}), DegenerateInput);
  EXPECT_THROW(pearson({1, 2}, {1, 2, 3}), DegenerateInput);
  EXPECT_THROW(pearson({1, 1, 1}, {1, 2, 3}), DegenerateInput);
  EXPECT_THROW(pearson({1, 2, 3}, {5, 5, 5}), DegenerateInput);
}

TEST(Inconsistency, CountsSuccessfulWrongAnswers) {
  auto run = [](bool success, bool correct) {
    RunResult r;
    r.success = success;
    r.correct = correct;
    return r;
  };
  EXPECT_EQ(inconsistency_count({run(true, true), run(true, false), run(true, true)}), 1);
  EXPECT_EQ(inconsistency_count({run(false, false), run(true, true)}), 0);
  EXPECT_EQ(inconsistency_count({}), 0);
}
