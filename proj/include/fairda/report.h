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

#ifndef FAIRDA_REPORT_H_
#define FAIRDA_REPORT_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairda/experiment.h"
#include "json.hpp"

namespace fairda {

struct MetricSummary {
  double mean = 0.0;
  // Population standard deviation over runs.
  double std = 0.0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

// One (method, language) cell of the results table, in percent.
struct MethodAggregate {
  std::string method;
  std::string display_name;
  std::string language;
  int runs = 0;
  MetricSummary f1_macro;
  MetricSummary auc;
  MetricSummary fair;

  friend bool operator==(const MethodAggregate&, const MethodAggregate&) = default;
};

// Relative change, in percent, of the adapted method against an anchor.
struct DeltaRow {
  std::string language;
  std::optional<double> f1_macro;
  std::optional<double> auc;
  std::optional<double> fair;

  friend bool operator==(const DeltaRow&, const DeltaRow&) = default;
};

struct AggregateReport {
  std::vector<MethodAggregate> rows;
  std::vector<DeltaRow> delta_r;
  std::vector<DeltaRow> delta_f;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  static AggregateReport from_json(const nlohmann::json& j);

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

// Definition printed with every rendered report.
extern const char* const kDeltaDefinition;

// Means and standard deviations per (method, language), plus
//   Delta-R = 100 * (m_DA - m_regular) / m_regular
//   Delta-F = 100 * (m_DA - m_best_fair) / m_best_fair
// per metric, where m_DA is the standalone feda method and the best fair
// baseline is chosen per metric (highest F1/AUC, lowest Fair) among the
// blind / instance_weight methods present. Missing anchors leave the delta
// out and add a warning.
AggregateReport aggregate(std::span<const RunReport> reports);

enum class ReportFormat { kCsv, kJson, kMarkdown };

ReportFormat parse_report_format(std::string_view name);
std::string_view report_format_extension(ReportFormat format);

void render_report(const AggregateReport& report, ReportFormat format, std::ostream& out);
// Throws Error(kIo) if the file cannot be written.
void render_report(const AggregateReport& report, ReportFormat format,
                   const std::filesystem::path& path);

}  // namespace fairda

#endif  // FAIRDA_REPORT_H_
