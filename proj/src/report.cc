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

#include "fairda/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "fairda/error.h"

namespace fairda {
namespace {

using nlohmann::json;

MetricSummary summarize_metric(const std::vector<double>& values) {
  MetricSummary s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

std::optional<double> relative_change(double value, double anchor) {
  if (anchor == 0.0) return std::nullopt;
  return 100.0 * (value - anchor) / anchor;
}

std::string one_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  std::string out(buf);
  if (out == "-0.0") out = "0.0";
  return out;
}

std::string one_decimal(const std::optional<double>& v) { return v ? one_decimal(*v) : "n/a"; }

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json summary_to_json(const MetricSummary& s) { return {{"mean", s.mean}, {"std", s.std}}; }

MetricSummary summary_from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("std").get<double>()};
}

json delta_to_json(const DeltaRow& d) {
  return {{"language", d.language},
          {"f1_macro", optional_to_json(d.f1_macro)},
          {"auc", optional_to_json(d.auc)},
          {"fair", optional_to_json(d.fair)}};
}

DeltaRow delta_from_json(const json& j) {
  return {j.at("language").get<std::string>(), optional_from_json(j.at("f1_macro")),
          optional_from_json(j.at("auc")), optional_from_json(j.at("fair"))};
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* const kDeltaDefinition =
    "Delta-R = 100*(LR-DA - LR)/LR per metric; Delta-F = 100*(LR-DA - best fair "
    "baseline)/best fair baseline per metric, best = highest F1-macro/AUC or lowest "
    "Fair among the Blind/IW methods run. Values in percent.";

AggregateReport aggregate(std::span<const RunReport> reports) {
  AggregateReport out;
  std::vector<std::pair<std::string, std::string>> order;  // (language, method)
  std::map<std::pair<std::string, std::string>, std::vector<const RunReport*>> cells;
  for (const auto& r : reports) {
    const auto key = std::make_pair(r.language, r.method);
    auto& cell = cells[key];
    if (cell.empty()) order.push_back(key);
    cell.push_back(&r);
  }

  std::vector<std::string> languages;
  for (const auto& [lang, method] : order) {
    if (std::find(languages.begin(), languages.end(), lang) == languages.end()) {
      languages.push_back(lang);
    }
    const auto& runs = cells[{lang, method}];
    std::vector<double> f1, auc_values, fair;
    for (const auto* r : runs) {
      f1.push_back(100.0 * r->eval.f1_macro);
      auc_values.push_back(100.0 * r->eval.auc);
      fair.push_back(100.0 * r->eval.fair);
    }
    out.rows.push_back({method, runs.front()->display_name, lang, static_cast<int>(runs.size()),
                        summarize_metric(f1), summarize_metric(auc_values),
                        summarize_metric(fair)});
  }

  for (const auto& lang : languages) {
    const MethodAggregate* regular = nullptr;
    const MethodAggregate* adapted = nullptr;
    std::vector<const MethodAggregate*> fair_baselines;
    for (const auto& row : out.rows) {
      if (row.language != lang) continue;
      const Method m = Method::parse(row.method);
      if (m.is_regular()) regular = &row;
      if (m.is_standalone_feda()) adapted = &row;
      if (m.is_fair_baseline()) fair_baselines.push_back(&row);
    }
    if (!adapted) {
      out.warnings.push_back("language '" + lang + "': no feda method, deltas omitted");
      continue;
    }
    if (regular) {
      DeltaRow d{lang, relative_change(adapted->f1_macro.mean, regular->f1_macro.mean),
                 relative_change(adapted->auc.mean, regular->auc.mean),
                 relative_change(adapted->fair.mean, regular->fair.mean)};
      if (!d.f1_macro || !d.auc || !d.fair) {
        out.warnings.push_back("language '" + lang +
                               "': regular baseline has a zero metric, Delta-R partly omitted");
      }
      out.delta_r.push_back(d);
    } else {
      out.warnings.push_back("language '" + lang + "': no regular baseline, Delta-R omitted");
    }
    if (!fair_baselines.empty()) {
      double best_f1 = -1.0, best_auc = -1.0, best_fair = 1e300;
      for (const auto* row : fair_baselines) {
        best_f1 = std::max(best_f1, row->f1_macro.mean);
        best_auc = std::max(best_auc, row->auc.mean);
        best_fair = std::min(best_fair, row->fair.mean);
      }
      DeltaRow d{lang, relative_change(adapted->f1_macro.mean, best_f1),
                 relative_change(adapted->auc.mean, best_auc),
                 relative_change(adapted->fair.mean, best_fair)};
      if (!d.f1_macro || !d.auc || !d.fair) {
        out.warnings.push_back("language '" + lang +
                               "': best fair baseline has a zero metric, Delta-F partly omitted");
      }
      out.delta_f.push_back(d);
    } else {
      out.warnings.push_back("language '" + lang + "': no fair baseline, Delta-F omitted");
    }
  }
  return out;
}

json AggregateReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"method", r.method},
                         {"display_name", r.display_name},
                         {"language", r.language},
                         {"runs", r.runs},
                         {"f1_macro", summary_to_json(r.f1_macro)},
                         {"auc", summary_to_json(r.auc)},
                         {"fair", summary_to_json(r.fair)}});
  }
  json dr = json::array(), df = json::array();
  for (const auto& d : delta_r) dr.push_back(delta_to_json(d));
  for (const auto& d : delta_f) df.push_back(delta_to_json(d));
  return {{"format", "fairda.aggregate"},
          {"version", 1},
          {"units", "percent"},
          {"delta_definition", kDeltaDefinition},
          {"rows", std::move(rows_json)},
          {"delta_r", std::move(dr)},
          {"delta_f", std::move(df)},
          {"warnings", warnings}};
}

AggregateReport AggregateReport::from_json(const json& j) {
  try {
    if (j.at("format") != "fairda.aggregate") throw Error(ErrorKind::kParse, "not an aggregate report");
    AggregateReport out;
    for (const auto& r : j.at("rows")) {
      out.rows.push_back({r.at("method").get<std::string>(),
                          r.at("display_name").get<std::string>(),
                          r.at("language").get<std::string>(), r.at("runs").get<int>(),
                          summary_from_json(r.at("f1_macro")), summary_from_json(r.at("auc")),
                          summary_from_json(r.at("fair"))});
    }
    for (const auto& d : j.at("delta_r")) out.delta_r.push_back(delta_from_json(d));
    for (const auto& d : j.at("delta_f")) out.delta_f.push_back(delta_from_json(d));
    out.warnings = j.at("warnings").get<std::vector<std::string>>();
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed aggregate report: ") + e.what());
  }
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md" || name == "markdown-table") return ReportFormat::kMarkdown;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown report format '" + std::string(name) + "'; allowed values: csv, json, markdown");
}

std::string_view report_format_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return "csv";
    case ReportFormat::kJson:
      return "json";
    case ReportFormat::kMarkdown:
      return "md";
  }
  return "txt";
}

void render_report(const AggregateReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::kJson) {
    out << report.to_json().dump(2) << '\n';
    return;
  }

  if (format == ReportFormat::kCsv) {
    out << "method,display_name,language,runs,f1_macro_mean,f1_macro_std,auc_mean,auc_std,"
           "fair_mean,fair_std\n";
    for (const auto& r : report.rows) {
      out << csv_quote(r.method) << ',' << csv_quote(r.display_name) << ','
          << csv_quote(r.language) << ',' << r.runs << ',' << one_decimal(r.f1_macro.mean) << ','
          << one_decimal(r.f1_macro.std) << ',' << one_decimal(r.auc.mean) << ','
          << one_decimal(r.auc.std) << ',' << one_decimal(r.fair.mean) << ','
          << one_decimal(r.fair.std) << '\n';
    }
    const auto delta_rows = [&](const char* name, const std::vector<DeltaRow>& rows) {
      for (const auto& d : rows) {
        out << name << ',' << name << ',' << csv_quote(d.language) << ",," << one_decimal(d.f1_macro)
            << ",," << one_decimal(d.auc) << ",," << one_decimal(d.fair) << ",\n";
      }
    };
    delta_rows("Delta-R", report.delta_r);
    delta_rows("Delta-F", report.delta_f);
    return;
  }

  std::vector<std::string> languages;
  std::vector<std::pair<std::string, std::string>> methods;  // (method, display)
  for (const auto& r : report.rows) {
    if (std::find(languages.begin(), languages.end(), r.language) == languages.end()) {
      languages.push_back(r.language);
    }
    const auto m = std::make_pair(r.method, r.display_name);
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }
  out << "Scores in percent, mean over runs. Lower Fair is better.\n";
  out << kDeltaDefinition << "\n\n";
  out << "| Method |";
  for (const auto& lang : languages) out << ' ' << lang << " F1-macro | " << lang << " AUC | " << lang << " Fair |";
  out << "\n|---|";
  for (std::size_t i = 0; i < languages.size(); ++i) out << "---:|---:|---:|";
  out << '\n';
  for (const auto& [method, display] : methods) {
    out << "| " << display << " |";
    for (const auto& lang : languages) {
      const auto it = std::find_if(report.rows.begin(), report.rows.end(), [&](const auto& r) {
        return r.method == method && r.language == lang;
      });
      if (it == report.rows.end()) {
        out << " n/a | n/a | n/a |";
      } else {
        out << ' ' << one_decimal(it->f1_macro.mean) << " | " << one_decimal(it->auc.mean) << " | "
            << one_decimal(it->fair.mean) << " |";
      }
    }
    out << '\n';
  }
  const auto delta_line = [&](const char* name, const std::vector<DeltaRow>& rows) {
    if (rows.empty()) return;
    out << "| " << name << " (%) |";
    for (const auto& lang : languages) {
      const auto it = std::find_if(rows.begin(), rows.end(),
                                   [&](const auto& d) { return d.language == lang; });
      if (it == rows.end()) {
        out << " n/a | n/a | n/a |";
      } else {
        out << ' ' << one_decimal(it->f1_macro) << " | " << one_decimal(it->auc) << " | "
            << one_decimal(it->fair) << " |";
      }
    }
    out << '\n';
  };
  delta_line("Delta-R", report.delta_r);
  delta_line("Delta-F", report.delta_f);
  if (!report.warnings.empty()) {
    out << '\n';
    for (const auto& w : report.warnings) out << "Warning: " << w << '\n';
  }
}

void render_report(const AggregateReport& report, ReportFormat format,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write report '" + path.string() + "'");
  render_report(report, format, out);
  if (!out) throw Error(ErrorKind::kIo, "failed writing report '" + path.string() + "'");
}

}  // namespace fairda
