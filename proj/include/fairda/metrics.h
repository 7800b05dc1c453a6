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

#ifndef FAIRDA_METRICS_H_
#define FAIRDA_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace fairda {

struct Prediction {
  int truth = 0;
  int predicted = 0;
  // Predicted probability of the positive class; used by AUC only.
  double score = 0.0;
  int group = 0;
};

using GroupedPredictions = std::vector<Prediction>;

// Unweighted mean of the per-class F1 over {0, 1}. A class absent from both
// truth and predictions contributes 0.
double f1_macro(std::span<const Prediction> preds);

// Mann-Whitney form: P(s+ > s-) + P(s+ = s-) / 2 over all positive/negative
// pairs. Throws Error(kUndefinedMetric) unless both classes are present.
double auc(std::span<const Prediction> preds);

enum class ErrorRate { kFalsePositive, kFalseNegative };

// What to do with a group whose rate has a zero denominator.
enum class ZeroDenominator { kError, kSkip };

// Sum over groups of |rate(group) - rate(all)|. FPR = FP / (FP + TN),
// FNR = FN / (FN + TP); the overall rate is pooled over every instance.
// Groups are those present in `preds`. Skipped groups are appended to
// `skipped` when the policy is kSkip.
double equality_difference(std::span<const Prediction> preds, ErrorRate kind,
                           ZeroDenominator policy = ZeroDenominator::kError,
                           std::vector<int>* skipped = nullptr);

struct GroupRates {
  // Absent when the group has no true negatives / true positives.
  std::optional<double> fpr;
  std::optional<double> fnr;
  std::size_t support = 0;
};

struct EvalReport {
  double f1_macro = 0.0;
  double auc = 0.0;
  double fped = 0.0;
  double fned = 0.0;
  double fair = 0.0;
  std::map<int, GroupRates> per_group;
  std::size_t n = 0;
  // Groups left out of FPED/FNED under ZeroDenominator::kSkip.
  std::vector<int> skipped_groups;

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);

  static std::string csv_header();
  // f1, auc and fair in percent with one decimal.
  std::string csv_row() const;
};

EvalReport evaluate(std::span<const Prediction> preds,
                    ZeroDenominator policy = ZeroDenominator::kError);

// Percent with one decimal, as reported in result tables.
std::string format_percent(double fraction);

}  // namespace fairda

#endif  // FAIRDA_METRICS_H_
