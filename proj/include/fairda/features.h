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

#ifndef FAIRDA_FEATURES_H_
#define FAIRDA_FEATURES_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fairda/document.h"
#include "fairda/sparse_vector.h"
#include "json.hpp"

namespace fairda {

struct VocabularyOptions {
  std::size_t min_n = 1;
  std::size_t max_n = 3;
  std::size_t max_features = 15000;
  std::size_t min_doc_freq = 3;
  // N-grams containing any of these tokens are never counted.
  std::vector<std::string> excluded_tokens = {"<ident>"};

  void validate() const;
};

// Joins tokens [begin, begin + n) with single spaces.
std::string join_ngram(std::span<const std::string> tokens);

// TF-IDF n-gram vocabulary fitted on a training split.
//
// Candidates are n-grams with document frequency >= min_doc_freq. They are
// ranked by total term frequency (ties: lexicographic byte order) and the top
// max_features are kept. Retained n-grams are indexed in lexicographic order.
// idf(j) = ln((1 + N) / (1 + df(j))) + 1.
class Vocabulary {
 public:
  struct Entry {
    std::string ngram;
    std::size_t doc_freq = 0;
    double idf = 0.0;
  };

  // Throws Error(kInvalidArgument) on an empty training set.
  static Vocabulary fit(std::span<const Document> train_docs,
                        const VocabularyOptions& options = {});
  static Vocabulary fit_tokens(std::span<const std::vector<std::string>> train_docs,
                               const VocabularyOptions& options = {});

  std::size_t size() const { return entries_.size(); }
  std::size_t num_train_docs() const { return num_train_docs_; }
  const VocabularyOptions& options() const { return options_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Feature index of an n-gram, or -1.
  long find(std::string_view ngram) const;

  // Raw-count TF times IDF, then L2-normalized. Out-of-vocabulary n-grams are
  // ignored; a document with none yields an empty vector of dim size().
  SparseVector transform(std::span<const std::string> tokens) const;
  SparseVector transform(const Document& doc) const { return transform(doc.tokens); }

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  static double smoothed_idf(std::size_t num_docs, std::size_t doc_freq);
  void build_index();

  VocabularyOptions options_;
  std::size_t num_train_docs_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_set<std::string> excluded_;
};

}  // namespace fairda

#endif  // FAIRDA_FEATURES_H_
