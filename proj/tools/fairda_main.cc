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

// Command-line front end: synth, prepare, run and report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairda/corpus.h"
#include "fairda/error.h"
#include "fairda/experiment.h"
#include "fairda/report.h"
#include "fairda/synth.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fairda {
namespace {

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, "'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create '" + dir.string() + "': " + ec.message());
}

// Applies "a.b.c=value" to a JSON object. The value is parsed as JSON when
// possible and taken as a string otherwise.
void apply_override(json& target, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorKind::kConfig, "override '" + assignment + "' must look like key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  json* node = &target;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw Error(ErrorKind::kConfig, "override key '" + key + "' is malformed");
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int env_threads() {
  const char* value = std::getenv("FAIRDA_THREADS");
  if (!value || !*value) return 0;
  try {
    return std::stoi(value);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig, "FAIRDA_THREADS must be an integer");
  }
}

struct SynthArgs {
  std::string spec_path;
  std::string out_dir = "synth-out";
  std::vector<std::string> overrides;
};

int run_synth(const SynthArgs& args) {
  json spec_json = args.spec_path.empty() ? json::object() : read_json_file(args.spec_path);
  for (const auto& o : args.overrides) apply_override(spec_json, o);
  const SynthSpec spec = SynthSpec::from_json(spec_json);
  const std::vector<Document> docs = generate(spec);

  const fs::path dir = args.out_dir;
  ensure_directory(dir);
  std::ostringstream corpus;
  write_corpus_jsonl(corpus, docs);
  write_text_file(dir / "corpus.jsonl", corpus.str());
  write_text_file(dir / "synth_spec.json", spec.to_json().dump(2) + "\n");
  std::string lexicon = "# group-indicative tokens\n";
  std::vector<std::string> tokens(synth_lexicon(spec).tokens().begin(),
                                  synth_lexicon(spec).tokens().end());
  std::sort(tokens.begin(), tokens.end());
  for (const auto& t : tokens) lexicon += t + "\n";
  write_text_file(dir / ("lexicon." + spec.language + ".txt"), lexicon);
  std::cout << "wrote " << docs.size() << " documents to " << (dir / "corpus.jsonl").string()
            << '\n';
  return 0;
}

struct PrepareArgs {
  std::string corpus;
  std::string format = "jsonl";
  std::string groups = "male,female";
  std::string out_dir = "prepared";
};

int run_prepare(const PrepareArgs& args) {
  const GroupRegistry groups(split_list(args.groups));
  std::vector<Document> docs = load_corpus(args.corpus, parse_corpus_format(args.format), groups);
  for (auto& doc : docs) {
    doc = anonymize_document(std::move(doc));
    doc.tokens = tokenize(doc.raw_text);
  }
  const fs::path dir = args.out_dir;
  ensure_directory(dir);
  std::ostringstream prepared;
  write_corpus_jsonl(prepared, docs, groups);
  write_text_file(dir / "prepared.jsonl", prepared.str());

  std::map<std::string, std::vector<Document>> by_language;
  for (const auto& doc : docs) by_language[doc.language].push_back(doc);
  const int female = groups.find("female").value_or(groups.size() > 1 ? 1 : 0);
  json stats = json::array();
  std::ostringstream table;
  table << "| Lang | Docs | Tokens | F-Ratio | L-Ratio |\n|---|---:|---:|---:|---:|\n";
  for (const auto& [lang, lang_docs] : by_language) {
    const CorpusSummary s = summarize(lang_docs, female);
    stats.push_back({{"language", lang},
                     {"docs", s.doc_count},
                     {"mean_tokens", s.mean_tokens},
                     {"female_ratio", s.female_ratio},
                     {"positive_label_ratio", s.positive_label_ratio}});
    char row[160];
    std::snprintf(row, sizeof(row), "| %s | %zu | %.3f | %.3f | %.3f |\n", lang.c_str(),
                  s.doc_count, s.mean_tokens, s.female_ratio, s.positive_label_ratio);
    table << row;
  }
  write_text_file(dir / "stats.json", stats.dump(2) + "\n");
  write_text_file(dir / "stats.md", table.str());
  std::cout << table.str();
  return 0;
}

struct RunArgs {
  std::string config_path;
  std::string corpus;
  std::string output;
  std::string methods;
  int runs = 0;
  int threads = 0;
  std::vector<std::string> overrides;
};

int run_run(const RunArgs& args) {
  json config_json = args.config_path.empty() ? json::object() : read_json_file(args.config_path);
  if (const char* env = std::getenv("FAIRDA_OUTPUT_DIR"); env && *env) {
    config_json["output_dir"] = env;
  }
  if (const int t = env_threads(); t > 0) config_json["threads"] = t;
  if (!args.corpus.empty()) config_json["corpus"]["path"] = args.corpus;
  if (!args.output.empty()) config_json["output_dir"] = args.output;
  if (!args.methods.empty()) config_json["methods"] = split_list(args.methods);
  if (args.runs > 0) config_json["runs"] = args.runs;
  if (args.threads > 0) config_json["threads"] = args.threads;
  for (const auto& o : args.overrides) apply_override(config_json, o);
  const ExperimentConfig config = ExperimentConfig::from_json(config_json);
  if (config.corpus_path.empty()) {
    throw Error(ErrorKind::kConfig, "no corpus given; set corpus.path or pass --corpus");
  }

  // Everything is computed before the first file is written.
  const std::vector<RunReport> reports = run_all(config);
  const AggregateReport agg = aggregate(reports);
  const std::string runs_text = runs_to_json(config, reports).dump(2) + "\n";
  std::ostringstream md, csv, js;
  render_report(agg, ReportFormat::kMarkdown, md);
  render_report(agg, ReportFormat::kCsv, csv);
  render_report(agg, ReportFormat::kJson, js);

  ensure_directory(config.output_dir);
  write_text_file(config.output_dir / "runs.json", runs_text);
  write_text_file(config.output_dir / "report.md", md.str());
  write_text_file(config.output_dir / "report.csv", csv.str());
  write_text_file(config.output_dir / "report.json", js.str());
  std::cout << md.str();
  return 0;
}

struct ReportArgs {
  std::vector<std::string> runs;
  std::string format = "markdown";
  std::string out;
};

int run_report(const ReportArgs& args) {
  std::vector<RunReport> reports;
  for (const auto& path : args.runs) {
    auto part = runs_from_json(read_json_file(path));
    reports.insert(reports.end(), part.begin(), part.end());
  }
  const AggregateReport agg = aggregate(reports);
  const ReportFormat format = parse_report_format(args.format);
  if (args.out.empty()) {
    render_report(agg, format, std::cout);
  } else {
    render_report(agg, format, fs::path(args.out));
  }
  return 0;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace
}  // namespace fairda

int main(int argc, char** argv) {
  using namespace fairda;
  CLI::App app{"Fairness-aware text classification with feature-space domain adaptation"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic group-annotated corpus");
  synth->add_option("--spec", synth_args.spec_path, "Synth spec JSON file");
  synth->add_option("--out", synth_args.out_dir, "Output directory");
  synth->add_option("--set", synth_args.overrides, "Override a spec field, e.g. bias=0.8");

  PrepareArgs prepare_args;
  auto* prepare = app.add_subcommand("prepare", "Anonymize, tokenize and summarize a corpus");
  prepare->add_option("--corpus", prepare_args.corpus, "Corpus file")->required();
  prepare->add_option("--format", prepare_args.format, "jsonl or csv");
  prepare->add_option("--groups", prepare_args.groups, "Comma-separated group registry");
  prepare->add_option("--out", prepare_args.out_dir, "Output directory");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run an experiment");
  run->add_option("--config", run_args.config_path, "Experiment config JSON file");
  run->add_option("--corpus", run_args.corpus, "Corpus file (overrides corpus.path)");
  run->add_option("--output", run_args.output, "Output directory (overrides output_dir)");
  run->add_option("--methods", run_args.methods, "Comma-separated methods");
  run->add_option("--runs", run_args.runs, "Number of runs");
  run->add_option("--threads", run_args.threads, "Worker threads");
  run->add_option("--set", run_args.overrides, "Override a config field, e.g. train.l2=0.001");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Aggregate run files and render a report");
  report->add_option("--runs", report_args.runs, "runs.json files")->required();
  report->add_option("--format", report_args.format, "csv, json or markdown");
  report->add_option("--out", report_args.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (*synth) return run_synth(synth_args);
    if (*prepare) return run_prepare(prepare_args);
    if (*run) return run_run(run_args);
    if (*report) return run_report(report_args);
  } catch (const Error& e) {
    print_error(std::string(error_kind_name(e.kind())), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
