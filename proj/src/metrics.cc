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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "fairda/error.h"

namespace fairda {
namespace {

using nlohmann::json;

struct Counts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  void add(const Prediction& p) {
    if (p.truth == 1) {
      (p.predicted == 1 ? tp : fn) += 1;
    } else {
      (p.predicted == 1 ? fp : tn) += 1;
    }
  }
  std::optional<double> fpr() const {
    if (fp + tn == 0) return std::nullopt;
    return static_cast<double>(fp) / static_cast<double>(fp + tn);
  }
  std::optional<double> fnr() const {
    if (fn + tp == 0) return std::nullopt;
    return static_cast<double>(fn) / static_cast<double>(fn + tp);
  }
};

double f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

double f1_macro(std::span<const Prediction> preds) {
  Counts c;
  for (const auto& p : preds) c.add(p);
  // For class 0 the roles of positives and negatives swap.
  return 0.5 * (f1(c.tp, c.fp, c.fn) + f1(c.tn, c.fn, c.fp));
}

double auc(std::span<const Prediction> preds) {
  std::vector<std::pair<double, int>> scored;
  scored.reserve(preds.size());
  std::size_t positives = 0;
  for (const auto& p : preds) {
    scored.emplace_back(p.score, p.truth);
    positives += p.truth == 1 ? 1 : 0;
  }
  const std::size_t negatives = preds.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorKind::kUndefinedMetric, "AUC needs both classes in the ground truth");
  }
  std::sort(scored.begin(), scored.end());

  double wins = 0.0;
  std::size_t negatives_below = 0;
  for (std::size_t i = 0; i < scored.size();) {
    std::size_t pos_tied = 0, neg_tied = 0;
    const double score = scored[i].first;
    for (; i < scored.size() && scored[i].first == score; ++i) {
      (scored[i].second == 1 ? pos_tied : neg_tied) += 1;
    }
    wins += static_cast<double>(pos_tied) *
            (static_cast<double>(negatives_below) + 0.5 * static_cast<double>(neg_tied));
    negatives_below += neg_tied;
  }
  return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

double equality_difference(std::span<const Prediction> preds, ErrorRate kind,
                           ZeroDenominator policy, std::vector<int>* skipped) {
  Counts overall;
  std::map<int, Counts> by_group;
  for (const auto& p : preds) {
    overall.add(p);
    by_group[p.group].add(p);
  }
  const auto rate = [kind](const Counts& c) {
    return kind == ErrorRate::kFalsePositive ? c.fpr() : c.fnr();
  };
  const char* what = kind == ErrorRate::kFalsePositive ? "true negatives (FPR undefined)"
                                                       : "true positives (FNR undefined)";
  const auto pooled = rate(overall);
  double sum = 0.0;
  for (const auto& [group, counts] : by_group) {
    const auto r = rate(counts);
    if (!r || !pooled) {
      if (policy == ZeroDenominator::kError) {
        throw Error(ErrorKind::kUndefinedMetric,
                    "group " + std::to_string(group) + " has no " + what);
      }
      if (skipped) skipped->push_back(group);
      continue;
    }
    sum += std::abs(*r - *pooled);
  }
  return sum;
}

EvalReport evaluate(std::span<const Prediction> preds, ZeroDenominator policy) {
  if (preds.empty()) throw Error(ErrorKind::kUndefinedMetric, "no predictions to evaluate");
  EvalReport report;
  report.n = preds.size();
  report.f1_macro = f1_macro(preds);
  report.auc = auc(preds);
  std::vector<int> skipped;
  report.fped = equality_difference(preds, ErrorRate::kFalsePositive, policy, &skipped);
  report.fned = equality_difference(preds, ErrorRate::kFalseNegative, policy, &skipped);
  report.fair = report.fped + report.fned;
  std::sort(skipped.begin(), skipped.end());
  skipped.erase(std::unique(skipped.begin(), skipped.end()), skipped.end());
  report.skipped_groups = std::move(skipped);

  std::map<int, Counts> by_group;
  for (const auto& p : preds) by_group[p.group].add(p);
  for (const auto& [group, c] : by_group) {
    report.per_group[group] = {c.fpr(), c.fnr(), c.tp + c.fp + c.tn + c.fn};
  }
  return report;
}

json EvalReport::to_json() const {
  json groups = json::object();
  for (const auto& [group, rates] : per_group) {
    groups[std::to_string(group)] = {{"fpr", optional_to_json(rates.fpr)},
                                     {"fnr", optional_to_json(rates.fnr)},
                                     {"support", rates.support}};
  }
  return {{"f1_macro", f1_macro}, {"auc", auc},   {"fped", fped},
          {"fned", fned},         {"fair", fair}, {"n", n},
          {"per_group", std::move(groups)},       {"skipped_groups", skipped_groups}};
}

EvalReport EvalReport::from_json(const json& j) {
  try {
    EvalReport r;
    r.f1_macro = j.at("f1_macro").get<double>();
    r.auc = j.at("auc").get<double>();
    r.fped = j.at("fped").get<double>();
    r.fned = j.at("fned").get<double>();
    r.fair = j.at("fair").get<double>();
    r.n = j.at("n").get<std::size_t>();
    for (const auto& [key, value] : j.at("per_group").items()) {
      r.per_group[std::stoi(key)] = {optional_from_json(value.at("fpr")),
                                     optional_from_json(value.at("fnr")),
                                     value.at("support").get<std::size_t>()};
    }
    r.skipped_groups = j.value("skipped_groups", std::vector<int>{});
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed evaluation report: ") + e.what());
  }
}

std::string EvalReport::csv_header() { return "n,f1_macro,auc,fped,fned,fair"; }

std::string EvalReport::csv_row() const {
  return std::to_string(n) + "," + format_percent(f1_macro) + "," + format_percent(auc) +
         "," + format_percent(fped) + "," + format_percent(fned) + "," +
         format_percent(fair);
}

std::string format_percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * fraction);
  std::string out(buf);
  if (out == "-0.0") out = "0.0";
  return out;
}

}  // namespace fairda
