/*
 * Copyright 2026 The fairda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairda/metrics.h"

#include <cmath>
#include <vector>

#include "fairda/error.h"
#include "fairda/random.h"
#include "gtest/gtest.h"
#include "testing/reference.h"

namespace fairda {
namespace {

std::vector<Prediction> FromVectors(const std::vector<int>& truth, const std::vector<int>& pred,
                                    const std::vector<double>& score = {},
                                    const std::vector<int>& group = {}) {
  std::vector<Prediction> out;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    out.push_back({truth[i], pred[i], score.empty() ? 0.0 : score[i],
                   group.empty() ? 0 : group[i]});
  }
  return out;
}

// Group A: 2 negatives, 1 FP. Group B: 4 negatives, 1 FP.
std::vector<Prediction> FpedFixture() {
  return FromVectors({0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {}, {0, 0, 1, 1, 1, 1});
}

TEST(F1Macro, Perfect) {
  EXPECT_DOUBLE_EQ(f1_macro(FromVectors({1, 0, 1, 0}, {1, 0, 1, 0})), 1.0);
}

TEST(F1Macro, HandWorkedExample) {
  // F1 of class 1 is 2/3, of class 0 is 4/5.
  EXPECT_NEAR(f1_macro(FromVectors({1, 1, 0, 0}, {1, 0, 0, 0})), (2.0 / 3 + 0.8) / 2, 1e-12);
}

TEST(F1Macro, AbsentClassScoresZero) {
  EXPECT_NEAR(f1_macro(FromVectors({1, 0}, {1, 1})), 1.0 / 3, 1e-12);
  // Class 0 absent from truth and predictions.
  EXPECT_DOUBLE_EQ(f1_macro(FromVectors({1, 1}, {1, 1})), 0.5);
}

TEST(Auc, PerfectRanking) {
  EXPECT_DOUBLE_EQ(auc(FromVectors({0, 0, 1, 1}, {0, 0, 0, 0}, {0.1, 0.2, 0.3, 0.4})), 1.0);
}

TEST(Auc, AllTies) {
  EXPECT_DOUBLE_EQ(auc(FromVectors({0, 1, 1, 0}, {0, 0, 0, 0}, {0.3, 0.3, 0.3, 0.3})), 0.5);
}

TEST(Auc, HandWorkedPairs) {
  EXPECT_DOUBLE_EQ(auc(FromVectors({1, 0, 1, 0}, {0, 0, 0, 0}, {0.9, 0.8, 0.7, 0.6})), 0.75);
}

TEST(Auc, SingleClassIsUndefined) {
  try {
    auc(FromVectors({1, 1}, {1, 0}, {0.2, 0.4}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedMetric);
  }
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    auto preds = reference::random_predictions(rng, 4, 40);
    preds[0].truth = 0;
    preds[1].truth = 1;
    const double before = auc(preds);
    for (auto& p : preds) p.score = std::exp(3 * p.score) - 7;
    EXPECT_DOUBLE_EQ(auc(preds), before);
  }
}

TEST(EqualityDifference, HandWorkedFped) {
  EXPECT_NEAR(equality_difference(FpedFixture(), ErrorRate::kFalsePositive), 0.25, 1e-12);
}

TEST(EqualityDifference, IdenticalRatesGiveZero) {
  const auto preds = FromVectors({0, 0, 1, 1, 0, 0, 1, 1}, {1, 0, 1, 0, 1, 0, 1, 0}, {},
                                 {0, 0, 0, 0, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(equality_difference(preds, ErrorRate::kFalsePositive), 0.0);
  EXPECT_DOUBLE_EQ(equality_difference(preds, ErrorRate::kFalseNegative), 0.0);
}

TEST(EqualityDifference, SingleGroupIsZero) {
  const auto preds = FromVectors({0, 0, 1, 1, 0}, {1, 0, 0, 1, 1});
  EXPECT_DOUBLE_EQ(equality_difference(preds, ErrorRate::kFalsePositive), 0.0);
  EXPECT_DOUBLE_EQ(equality_difference(preds, ErrorRate::kFalseNegative), 0.0);
}

TEST(EqualityDifference, ZeroDenominatorErrorsNamingGroup) {
  // Group 1 has no true positives.
  const auto preds = FromVectors({1, 0, 0}, {1, 0, 1}, {}, {0, 0, 1});
  try {
    equality_difference(preds, ErrorRate::kFalseNegative);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedMetric);
    EXPECT_NE(std::string(e.what()).find("group 1"), std::string::npos);
  }
}

TEST(EqualityDifference, ZeroDenominatorSkipFlagsGroup) {
  const auto preds = FromVectors({1, 0, 0, 1}, {1, 0, 1, 0}, {}, {0, 0, 1, 0});
  std::vector<int> skipped;
  const double fned =
      equality_difference(preds, ErrorRate::kFalseNegative, ZeroDenominator::kSkip, &skipped);
  EXPECT_EQ(skipped, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(fned, 0.0);
}

TEST(EqualityDifference, InvariantUnderGroupRelabeling) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    auto preds = reference::random_predictions(rng, 20, 50);
    std::vector<int> skipped;
    const double fped = equality_difference(preds, ErrorRate::kFalsePositive,
                                            ZeroDenominator::kSkip, &skipped);
    for (auto& p : preds) p.group = p.group == 0 ? 7 : 3;
    EXPECT_DOUBLE_EQ(equality_difference(preds, ErrorRate::kFalsePositive,
                                         ZeroDenominator::kSkip, &skipped),
                     fped);
  }
}

TEST(Evaluate, MatchesBruteForceReference) {
  Rng rng(2024);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    auto preds = reference::random_predictions(rng, 30, 30);
    preds[0] = {0, 0, 0.1, 0};
    preds[1] = {1, 1, 0.9, 0};
    preds[2] = {0, 1, 0.4, 1};
    preds[3] = {1, 0, 0.6, 1};
    const EvalReport r = evaluate(preds);
    EXPECT_NEAR(r.f1_macro, reference::f1_macro(preds), 1e-12);
    EXPECT_NEAR(r.auc, reference::auc(preds), 1e-12);
    EXPECT_NEAR(r.fped, reference::equality_difference(preds, true), 1e-12);
    EXPECT_NEAR(r.fned, reference::equality_difference(preds, false), 1e-12);
    EXPECT_EQ(r.fair, r.fped + r.fned);
    EXPECT_EQ(r.n, 30u);
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

TEST(Evaluate, PerfectClassifierBalancedGroups) {
  const auto preds = FromVectors({0, 1, 0, 1}, {0, 1, 0, 1}, {0.1, 0.9, 0.2, 0.8}, {0, 0, 1, 1});
  const EvalReport r = evaluate(preds);
  EXPECT_DOUBLE_EQ(r.f1_macro, 1.0);
  EXPECT_DOUBLE_EQ(r.auc, 1.0);
  EXPECT_DOUBLE_EQ(r.fair, 0.0);
  ASSERT_EQ(r.per_group.size(), 2u);
  EXPECT_EQ(r.per_group.at(0).support, 2u);
  EXPECT_DOUBLE_EQ(*r.per_group.at(1).fpr, 0.0);
}

TEST(Evaluate, PooledSingleGroupHasZeroFair) {
  Rng rng(3);
  auto preds = reference::random_predictions(rng, 40, 40);
  preds[0].truth = 0;
  preds[1].truth = 1;
  for (auto& p : preds) p.group = 0;
  EXPECT_DOUBLE_EQ(evaluate(preds).fair, 0.0);
}

TEST(Evaluate, JsonRoundTrip) {
  const auto preds = FromVectors({0, 1, 0, 1, 0}, {1, 1, 0, 0, 0}, {0.6, 0.9, 0.2, 0.3, 0.1},
                                 {0, 0, 1, 1, 1});
  const EvalReport r = evaluate(preds);
  const EvalReport back = EvalReport::from_json(r.to_json());
  EXPECT_EQ(back.f1_macro, r.f1_macro);
  EXPECT_EQ(back.fair, r.fair);
  EXPECT_EQ(back.per_group.at(1).fpr, r.per_group.at(1).fpr);
  EXPECT_EQ(back.n, r.n);
}

TEST(Evaluate, CsvRowInPercent) {
  EvalReport r;
  r.n = 10;
  r.f1_macro = 0.87149;
  r.auc = 0.983;
  r.fped = 0.02;
  r.fned = 0.022;
  r.fair = 0.042;
  EXPECT_EQ(EvalReport::csv_header(), "n,f1_macro,auc,fped,fned,fair");
  EXPECT_EQ(r.csv_row(), "10,87.1,98.3,2.0,2.2,4.2");
}

TEST(FormatPercent, NoNegativeZero) {
  EXPECT_EQ(format_percent(-0.0001), "0.0");
  EXPECT_EQ(format_percent(0.042), "4.2");
}

}  // namespace
}  // namespace fairda
