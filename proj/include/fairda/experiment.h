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

#ifndef FAIRDA_EXPERIMENT_H_
#define FAIRDA_EXPERIMENT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairda/corpus.h"
#include "fairda/debias.h"
#include "fairda/document.h"
#include "fairda/features.h"
#include "fairda/metrics.h"
#include "fairda/model.h"
#include "json.hpp"

namespace fairda {

// A training recipe. The four standalone recipes are regular (LR), blind
// (LR-Blind), instance_weight (LR-IW) and feda (LR-DA). feda may be combined
// with blind and/or instance_weight when the config allows it.
struct Method {
  bool blind = false;
  bool instance_weight = false;
  bool feda = false;

  // Accepts "regular", "blind", "instance_weight", "feda" and '+'-joined
  // combinations such as "feda+blind".
  static Method parse(std::string_view name);
  std::string name() const;
  std::string display_name() const;

  bool is_regular() const { return !blind && !instance_weight && !feda; }
  bool is_fair_baseline() const { return !feda && (blind || instance_weight); }
  bool is_standalone_feda() const { return feda && !blind && !instance_weight; }

  friend bool operator==(const Method&, const Method&) = default;
};

struct ExperimentConfig {
  std::filesystem::path corpus_path;
  CorpusFormat format = CorpusFormat::kJsonl;
  // Empty: one experiment per language found in the corpus.
  std::string language;
  std::vector<std::string> groups = {"male", "female"};
  std::vector<Method> methods = {Method{}, Method{false, false, true}};
  // Fractions and base seed; run r splits with seed + r.
  SplitSpec split;
  // Run r trains with seed + r.
  TrainConfig train;
  VocabularyOptions vocabulary;
  // Language code -> lexicon file; needed by blind and instance_weight.
  std::map<std::string, std::filesystem::path> lexicons;
  WeightTable::Options weighting;
  int runs = 3;
  bool allow_feda_combination = false;
  // Ablation: score test documents with their own domain block as well.
  bool domain_aware_inference = false;
  ZeroDenominator zero_denominator = ZeroDenominator::kError;
  // Not part of the fingerprint: they do not change results.
  std::filesystem::path output_dir = "fairda-out";
  int threads = 1;

  // Throws Error(kConfig) with an actionable message.
  void validate() const;
  nlohmann::json to_json() const;
  // Fields absent from `j` keep their defaults.
  static ExperimentConfig from_json(const nlohmann::json& j);
  // Result-affecting fields only.
  nlohmann::json fingerprint_json() const;
  std::string hash() const;
};

struct RunReport {
  std::string method;
  std::string display_name;
  std::string language;
  int run = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t train_seed = 0;
  std::size_t base_dim = 0;
  // base_dim * (1 + groups) for feda, base_dim otherwise.
  std::size_t feature_dim = 0;
  std::size_t train_size = 0;
  std::size_t dev_size = 0;
  std::size_t test_size = 0;
  int selected_epoch = 0;
  std::string config_hash;
  EvalReport eval;

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
};

// Normalizes a loaded corpus: anonymizes text and tokenizes documents that
// carry no tokens yet.
void prepare_documents(std::span<Document> docs);

LexiconSet load_lexicons(const ExperimentConfig& config);

// One run of one method on one language's documents (already prepared).
RunReport run_once(const ExperimentConfig& config, const Method& method,
                   std::span<const Document> docs, const LexiconSet& lexicons,
                   const std::string& language, int run);

// All runs of one method on one language.
std::vector<RunReport> run_experiment(const ExperimentConfig& config, const Method& method,
                                      std::span<const Document> docs,
                                      const LexiconSet& lexicons,
                                      const std::string& language);

// Every (language, method, run) of the config, loading the corpus and
// lexicons from disk. Independent runs execute on config.threads workers;
// the result order is (language, method, run) regardless.
std::vector<RunReport> run_all(const ExperimentConfig& config);
std::vector<RunReport> run_all(const ExperimentConfig& config, std::span<const Document> corpus,
                               const LexiconSet& lexicons);

// Serialized run file: config echo, fingerprint and per-run reports.
nlohmann::json runs_to_json(const ExperimentConfig& config,
                            std::span<const RunReport> reports);
std::vector<RunReport> runs_from_json(const nlohmann::json& j);

}  // namespace fairda

#endif  // FAIRDA_EXPERIMENT_H_
