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

#include "fairda/experiment.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "fairda/adaptation.h"
#include "fairda/error.h"
#include "fairda/hash.h"
#include "json_keys.h"

namespace fairda {
namespace {

using nlohmann::json;

constexpr int kRunsFormatVersion = 1;

std::string_view zero_denominator_name(ZeroDenominator policy) {
  return policy == ZeroDenominator::kError ? "error" : "skip";
}

ZeroDenominator parse_zero_denominator(std::string_view name) {
  if (name == "error") return ZeroDenominator::kError;
  if (name == "skip") return ZeroDenominator::kSkip;
  throw Error(ErrorKind::kConfig, "zero_denominator must be 'error' or 'skip'");
}

template <typename Fn>
auto rethrow_as_config(const char* section, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("config section '") + section + "': " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    throw Error(ErrorKind::kConfig, std::string("config section '") + section + "': " + e.what());
  }
}

}  // namespace

Method Method::parse(std::string_view name) {
  Method m;
  bool regular = false;
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t plus = std::min(name.find('+', start), name.size());
    const std::string_view part = name.substr(start, plus - start);
    if (part == "regular") {
      regular = true;
    } else if (part == "blind") {
      m.blind = true;
    } else if (part == "instance_weight" || part == "iw") {
      m.instance_weight = true;
    } else if (part == "feda" || part == "da") {
      m.feda = true;
    } else {
      throw Error(ErrorKind::kConfig,
                  "unknown method '" + std::string(name) +
                      "'; allowed values: regular, blind, instance_weight, feda "
                      "(combinations joined with '+')");
    }
    start = plus + 1;
  }
  if (regular && !m.is_regular()) {
    throw Error(ErrorKind::kConfig, "'regular' cannot be combined with other methods");
  }
  return m;
}

std::string Method::name() const {
  if (is_regular()) return "regular";
  std::string out;
  const auto append = [&out](const char* part) {
    if (!out.empty()) out += "+";
    out += part;
  };
  if (feda) append("feda");
  if (blind) append("blind");
  if (instance_weight) append("instance_weight");
  return out;
}

std::string Method::display_name() const {
  std::string out = "LR";
  if (feda) out += "-DA";
  if (blind) out += "-Blind";
  if (instance_weight) out += "-IW";
  return out;
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw Error(ErrorKind::kConfig, "runs must be >= 1");
  if (threads < 1) throw Error(ErrorKind::kConfig, "threads must be >= 1");
  if (methods.empty()) throw Error(ErrorKind::kConfig, "methods must list at least one method");
  for (const auto& m : methods) {
    if (m.feda && (m.blind || m.instance_weight) && !allow_feda_combination) {
      throw Error(ErrorKind::kConfig,
                  "method '" + m.name() +
                      "' combines feda with another method; set allow_feda_combination");
    }
    if ((m.blind || m.instance_weight) && lexicons.empty()) {
      throw Error(ErrorKind::kConfig,
                  "method '" + m.name() + "' needs a lexicon; set lexicons.<lang> to a file");
    }
  }
  rethrow_as_config("groups", [&] { return GroupRegistry(groups); });
  rethrow_as_config("split", [&] { split.validate(); return 0; });
  rethrow_as_config("train", [&] { train.validate(); return 0; });
  rethrow_as_config("vocabulary", [&] { vocabulary.validate(); return 0; });
  rethrow_as_config("weighting", [&] { weighting.validate(); return 0; });
}

json ExperimentConfig::fingerprint_json() const {
  json method_names = json::array();
  for (const auto& m : methods) method_names.push_back(m.name());
  json lexicon_paths = json::object();
  for (const auto& [lang, path] : lexicons) lexicon_paths[lang] = path.generic_string();
  return json{
      {"corpus", {{"path", corpus_path.generic_string()},
                  {"format", corpus_format_name(format)}}},
      {"language", language},
      {"groups", groups},
      {"methods", std::move(method_names)},
      {"split", {{"train", split.train_frac},
                 {"dev", split.dev_frac},
                 {"test", split.test_frac},
                 {"seed", split.seed},
                 {"stratified", split.stratified}}},
      {"train", train.to_json()},
      {"vocabulary", {{"ngram_range", {vocabulary.min_n, vocabulary.max_n}},
                      {"max_features", vocabulary.max_features},
                      {"min_doc_freq", vocabulary.min_doc_freq}}},
      {"lexicons", std::move(lexicon_paths)},
      {"weighting", {{"z_bins", weighting.lower_edges},
                     {"clip", {weighting.clip_low, weighting.clip_high}}}},
      {"runs", runs},
      {"allow_feda_combination", allow_feda_combination},
      {"domain_aware_inference", domain_aware_inference},
      {"zero_denominator", zero_denominator_name(zero_denominator)},
  };
}

json ExperimentConfig::to_json() const {
  json j = fingerprint_json();
  j["output_dir"] = output_dir.generic_string();
  j["threads"] = threads;
  return j;
}

std::string ExperimentConfig::hash() const {
  return to_hex(fnv1a64(fingerprint_json().dump()));
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "config must be a JSON object");
  detail::reject_unknown_keys(j, c.to_json(), ErrorKind::kConfig);
  rethrow_as_config("corpus", [&] {
    if (const auto it = j.find("corpus"); it != j.end()) {
      c.corpus_path = it->value("path", std::string());
      c.format = parse_corpus_format(it->value("format", std::string("jsonl")));
    }
    return 0;
  });
  c.language = rethrow_as_config("language", [&] { return j.value("language", c.language); });
  c.groups = rethrow_as_config("groups", [&] { return j.value("groups", c.groups); });
  rethrow_as_config("methods", [&] {
    if (const auto it = j.find("methods"); it != j.end()) {
      c.methods.clear();
      for (const auto& name : *it) c.methods.push_back(Method::parse(name.get<std::string>()));
    }
    return 0;
  });
  rethrow_as_config("split", [&] {
    if (const auto it = j.find("split"); it != j.end()) {
      c.split.train_frac = it->value("train", c.split.train_frac);
      c.split.dev_frac = it->value("dev", c.split.dev_frac);
      c.split.test_frac = it->value("test", c.split.test_frac);
      c.split.seed = it->value("seed", c.split.seed);
      c.split.stratified = it->value("stratified", c.split.stratified);
    }
    return 0;
  });
  rethrow_as_config("train", [&] {
    if (const auto it = j.find("train"); it != j.end()) c.train = TrainConfig::from_json(*it);
    return 0;
  });
  rethrow_as_config("vocabulary", [&] {
    if (const auto it = j.find("vocabulary"); it != j.end()) {
      if (const auto range = it->find("ngram_range"); range != it->end()) {
        c.vocabulary.min_n = range->at(0).get<std::size_t>();
        c.vocabulary.max_n = range->at(1).get<std::size_t>();
      }
      c.vocabulary.max_features = it->value("max_features", c.vocabulary.max_features);
      c.vocabulary.min_doc_freq = it->value("min_doc_freq", c.vocabulary.min_doc_freq);
    }
    return 0;
  });
  rethrow_as_config("lexicons", [&] {
    if (const auto it = j.find("lexicons"); it != j.end()) {
      for (const auto& [lang, path] : it->items()) c.lexicons[lang] = path.get<std::string>();
    }
    return 0;
  });
  rethrow_as_config("weighting", [&] {
    if (const auto it = j.find("weighting"); it != j.end()) {
      c.weighting.lower_edges = it->value("z_bins", c.weighting.lower_edges);
      if (const auto clip = it->find("clip"); clip != it->end()) {
        c.weighting.clip_low = clip->at(0).get<double>();
        c.weighting.clip_high = clip->at(1).get<double>();
      }
    }
    return 0;
  });
  rethrow_as_config("runs", [&] { c.runs = j.value("runs", c.runs); return 0; });
  c.allow_feda_combination = rethrow_as_config(
      "allow_feda_combination", [&] { return j.value("allow_feda_combination", false); });
  c.domain_aware_inference = rethrow_as_config(
      "domain_aware_inference", [&] { return j.value("domain_aware_inference", false); });
  c.zero_denominator = rethrow_as_config("zero_denominator", [&] {
    return parse_zero_denominator(j.value("zero_denominator", std::string("error")));
  });
  rethrow_as_config("output_dir", [&] {
    c.output_dir = j.value("output_dir", c.output_dir.string());
    return 0;
  });
  rethrow_as_config("threads", [&] { c.threads = j.value("threads", c.threads); return 0; });
  c.validate();
  return c;
}

json RunReport::to_json() const {
  return json{{"method", method},
              {"display_name", display_name},
              {"language", language},
              {"run", run},
              {"split_seed", split_seed},
              {"train_seed", train_seed},
              {"base_dim", base_dim},
              {"feature_dim", feature_dim},
              {"train_size", train_size},
              {"dev_size", dev_size},
              {"test_size", test_size},
              {"selected_epoch", selected_epoch},
              {"config_hash", config_hash},
              {"eval", eval.to_json()}};
}

RunReport RunReport::from_json(const json& j) {
  try {
    RunReport r;
    r.method = j.at("method").get<std::string>();
    r.display_name = j.at("display_name").get<std::string>();
    r.language = j.at("language").get<std::string>();
    r.run = j.at("run").get<int>();
    r.split_seed = j.at("split_seed").get<std::uint64_t>();
    r.train_seed = j.at("train_seed").get<std::uint64_t>();
    r.base_dim = j.at("base_dim").get<std::size_t>();
    r.feature_dim = j.at("feature_dim").get<std::size_t>();
    r.train_size = j.at("train_size").get<std::size_t>();
    r.dev_size = j.at("dev_size").get<std::size_t>();
    r.test_size = j.at("test_size").get<std::size_t>();
    r.selected_epoch = j.at("selected_epoch").get<int>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.eval = EvalReport::from_json(j.at("eval"));
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed run report: ") + e.what());
  }
}

void prepare_documents(std::span<Document> docs) {
  for (auto& doc : docs) {
    if (doc.tokens.empty()) {
      doc.raw_text = anonymize(doc.raw_text);
      doc.tokens = tokenize(doc.raw_text);
    }
  }
}

LexiconSet load_lexicons(const ExperimentConfig& config) {
  LexiconSet out;
  for (const auto& [lang, path] : config.lexicons) out.emplace(lang, Lexicon::load(path, lang));
  return out;
}

RunReport run_once(const ExperimentConfig& config, const Method& method,
                   std::span<const Document> docs, const LexiconSet& lexicons,
                   const std::string& language, int run) {
  const GroupRegistry groups(config.groups);
  const Lexicon* lexicon = nullptr;
  if (method.blind || method.instance_weight) {
    const auto it = lexicons.find(language);
    if (it == lexicons.end()) {
      throw Error(ErrorKind::kConfig, "method '" + method.name() +
                                          "' needs a lexicon for language '" + language +
                                          "'; set lexicons." + language);
    }
    lexicon = &it->second;
  }

  SplitSpec split_spec = config.split;
  split_spec.seed = config.split.seed + static_cast<std::uint64_t>(run);
  const Splits splits = split(docs, split_spec);

  const auto tokens_of = [&](const Document& doc) {
    return method.blind ? blind_mask(doc.tokens, *lexicon) : doc.tokens;
  };
  std::vector<std::vector<std::string>> train_tokens;
  train_tokens.reserve(splits.train.size());
  for (const auto& doc : splits.train) train_tokens.push_back(tokens_of(doc));
  const Vocabulary vocab = Vocabulary::fit_tokens(train_tokens, config.vocabulary);

  std::optional<FedaLayout> layout;
  if (method.feda) layout.emplace(vocab.size(), groups.size());
  std::optional<WeightTable> weights;
  if (method.instance_weight) {
    LexiconSet one;
    one.emplace(language, *lexicon);
    weights = WeightTable::fit(splits.train, one, config.weighting);
  }

  const auto encode = [&](const SparseVector& x, const Document& doc, bool training) {
    if (!layout) return x;
    if (training || config.domain_aware_inference) return augment_train(x, doc.group, *layout);
    return augment_test(x, *layout);
  };

  std::vector<TrainingExample> train_examples;
  train_examples.reserve(splits.train.size());
  for (std::size_t i = 0; i < splits.train.size(); ++i) {
    const Document& doc = splits.train[i];
    const double w = weights ? weights->weight(doc.label, count_sensitive(doc.tokens, *lexicon))
                             : 1.0;
    train_examples.push_back({encode(vocab.transform(train_tokens[i]), doc, true), doc.label, w});
  }
  std::vector<TrainingExample> dev_examples;
  for (const auto& doc : splits.dev) {
    dev_examples.push_back({encode(vocab.transform(tokens_of(doc)), doc, false), doc.label, 1.0});
  }

  TrainConfig train_config = config.train;
  train_config.seed = config.train.seed + static_cast<std::uint64_t>(run);
  const TrainResult trained = train_detailed(train_examples, train_config, dev_examples);

  GroupedPredictions preds;
  preds.reserve(splits.test.size());
  for (const auto& doc : splits.test) {
    const SparseVector x = encode(vocab.transform(tokens_of(doc)), doc, false);
    const double p = predict_proba(trained.model, x);
    preds.push_back({doc.label, p >= 0.5 ? 1 : 0, p, doc.group});
  }

  RunReport report;
  report.method = method.name();
  report.display_name = method.display_name();
  report.language = language;
  report.run = run;
  report.split_seed = split_spec.seed;
  report.train_seed = train_config.seed;
  report.base_dim = vocab.size();
  report.feature_dim = layout ? layout->total_dim() : vocab.size();
  report.train_size = splits.train.size();
  report.dev_size = splits.dev.size();
  report.test_size = splits.test.size();
  report.selected_epoch = trained.selected_epoch;
  report.config_hash = config.hash();
  report.eval = evaluate(preds, config.zero_denominator);
  return report;
}

std::vector<RunReport> run_experiment(const ExperimentConfig& config, const Method& method,
                                      std::span<const Document> docs,
                                      const LexiconSet& lexicons,
                                      const std::string& language) {
  std::vector<RunReport> out;
  for (int r = 0; r < config.runs; ++r) {
    out.push_back(run_once(config, method, docs, lexicons, language, r));
  }
  return out;
}

std::vector<RunReport> run_all(const ExperimentConfig& config, std::span<const Document> corpus,
                               const LexiconSet& lexicons) {
  config.validate();
  std::vector<std::string> languages;
  if (!config.language.empty()) {
    languages.push_back(config.language);
  } else {
    std::set<std::string> seen;
    for (const auto& doc : corpus) seen.insert(doc.language);
    languages.assign(seen.begin(), seen.end());
  }
  std::map<std::string, std::vector<Document>> by_language;
  for (const auto& lang : languages) by_language[lang];
  for (const auto& doc : corpus) {
    if (const auto it = by_language.find(doc.language); it != by_language.end()) {
      it->second.push_back(doc);
    }
  }
  for (const auto& [lang, docs] : by_language) {
    if (docs.empty()) {
      throw Error(ErrorKind::kConfig, "corpus has no documents for language '" + lang + "'");
    }
  }

  struct Task {
    const std::string* language;
    const Method* method;
    int run;
  };
  std::vector<Task> tasks;
  for (const auto& lang : languages) {
    for (const auto& method : config.methods) {
      for (int r = 0; r < config.runs; ++r) tasks.push_back({&lang, &method, r});
    }
  }

  std::vector<std::optional<RunReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& t = tasks[i];
        results[i] = run_once(config, *t.method, by_language.at(*t.language), lexicons,
                              *t.language, t.run);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), tasks.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunReport> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

std::vector<RunReport> run_all(const ExperimentConfig& config) {
  config.validate();
  std::vector<Document> corpus =
      load_corpus(config.corpus_path, config.format, GroupRegistry(config.groups));
  prepare_documents(corpus);
  const LexiconSet lexicons = load_lexicons(config);
  return run_all(config, corpus, lexicons);
}

json runs_to_json(const ExperimentConfig& config, std::span<const RunReport> reports) {
  json runs = json::array();
  for (const auto& r : reports) runs.push_back(r.to_json());
  return json{{"format", "fairda.runs"},
              {"version", kRunsFormatVersion},
              {"config_hash", config.hash()},
              {"config", config.fingerprint_json()},
              {"runs", std::move(runs)}};
}

std::vector<RunReport> runs_from_json(const json& j) {
  if (!j.is_object() || j.value("format", std::string()) != "fairda.runs") {
    throw Error(ErrorKind::kParse, "not a runs file");
  }
  if (j.value("version", 0) != kRunsFormatVersion) {
    throw Error(ErrorKind::kParse, "unsupported runs file version");
  }
  std::vector<RunReport> out;
  for (const auto& r : j.at("runs")) out.push_back(RunReport::from_json(r));
  return out;
}

}  // namespace fairda
