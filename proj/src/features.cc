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

#include "fairda/features.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "fairda/error.h"

namespace fairda {
namespace {

using nlohmann::json;

constexpr int kVocabularyFormatVersion = 1;

struct NgramCounts {
  std::size_t term_freq = 0;
  std::size_t doc_freq = 0;
  std::size_t last_doc = static_cast<std::size_t>(-1);
};

// Calls fn(ngram) for every n-gram of the allowed orders, skipping windows
// that contain an excluded token.
template <typename Fn>
void for_each_ngram(std::span<const std::string> tokens,
                    const VocabularyOptions& options,
                    const std::unordered_set<std::string>& excluded, Fn&& fn) {
  std::vector<char> blocked(tokens.size(), 0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    blocked[i] = excluded.count(tokens[i]) ? 1 : 0;
  }
  std::string ngram;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    ngram.clear();
    for (std::size_t n = 1; n <= options.max_n && start + n <= tokens.size(); ++n) {
      const std::size_t last = start + n - 1;
      if (blocked[last]) break;
      if (n > 1) ngram.push_back(' ');
      ngram += tokens[last];
      if (n >= options.min_n) fn(ngram);
    }
  }
}

}  // namespace

void VocabularyOptions::validate() const {
  if (min_n < 1 || max_n < min_n) {
    throw Error(ErrorKind::kInvalidArgument, "n-gram range must satisfy 1 <= min_n <= max_n");
  }
  if (max_features < 1) throw Error(ErrorKind::kInvalidArgument, "max_features must be >= 1");
  if (min_doc_freq < 1) throw Error(ErrorKind::kInvalidArgument, "min_doc_freq must be >= 1");
}

std::string join_ngram(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

double Vocabulary::smoothed_idf(std::size_t num_docs, std::size_t doc_freq) {
  return std::log((1.0 + static_cast<double>(num_docs)) /
                  (1.0 + static_cast<double>(doc_freq))) +
         1.0;
}

Vocabulary Vocabulary::fit(std::span<const Document> train_docs,
                           const VocabularyOptions& options) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(train_docs.size());
  for (const auto& doc : train_docs) tokens.push_back(doc.tokens);
  return fit_tokens(tokens, options);
}

Vocabulary Vocabulary::fit_tokens(std::span<const std::vector<std::string>> train_docs,
                                  const VocabularyOptions& options) {
  options.validate();
  if (train_docs.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot fit a vocabulary on an empty training set");
  }
  const std::unordered_set<std::string> excluded(options.excluded_tokens.begin(),
                                                 options.excluded_tokens.end());

  std::unordered_map<std::string, NgramCounts> counts;
  for (std::size_t d = 0; d < train_docs.size(); ++d) {
    for_each_ngram(train_docs[d], options, excluded, [&](const std::string& ngram) {
      NgramCounts& c = counts[ngram];
      ++c.term_freq;
      if (c.last_doc != d) {
        c.last_doc = d;
        ++c.doc_freq;
      }
    });
  }

  struct Candidate {
    const std::string* ngram;
    NgramCounts counts;
  };
  std::vector<Candidate> candidates;
  for (const auto& [ngram, c] : counts) {
    if (c.doc_freq >= options.min_doc_freq) candidates.push_back({&ngram, c});
  }
  const auto by_rank = [](const Candidate& a, const Candidate& b) {
    if (a.counts.term_freq != b.counts.term_freq) {
      return a.counts.term_freq > b.counts.term_freq;
    }
    return *a.ngram < *b.ngram;
  };
  if (candidates.size() > options.max_features) {
    std::nth_element(candidates.begin(),
                     candidates.begin() + static_cast<long>(options.max_features),
                     candidates.end(), by_rank);
    candidates.resize(options.max_features);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return *a.ngram < *b.ngram; });

  Vocabulary vocab;
  vocab.options_ = options;
  vocab.num_train_docs_ = train_docs.size();
  vocab.entries_.reserve(candidates.size());
  for (const auto& c : candidates) {
    vocab.entries_.push_back(
        {*c.ngram, c.counts.doc_freq, smoothed_idf(train_docs.size(), c.counts.doc_freq)});
  }
  vocab.build_index();
  return vocab;
}

void Vocabulary::build_index() {
  index_.clear();
  index_.reserve(entries_.size());
  for (std::size_t j = 0; j < entries_.size(); ++j) index_.emplace(entries_[j].ngram, j);
  excluded_ = std::unordered_set<std::string>(options_.excluded_tokens.begin(),
                                              options_.excluded_tokens.end());
}

long Vocabulary::find(std::string_view ngram) const {
  const auto it = index_.find(std::string(ngram));
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SparseVector Vocabulary::transform(std::span<const std::string> tokens) const {
  std::vector<std::size_t> hits;
  for_each_ngram(tokens, options_, excluded_, [&](const std::string& ngram) {
    const auto it = index_.find(ngram);
    if (it != index_.end()) hits.push_back(it->second);
  });
  std::sort(hits.begin(), hits.end());

  std::vector<std::size_t> indices;
  std::vector<double> values;
  for (std::size_t k = 0; k < hits.size();) {
    const std::size_t j = hits[k];
    std::size_t tf = 0;
    for (; k < hits.size() && hits[k] == j; ++k) ++tf;
    indices.push_back(j);
    values.push_back(static_cast<double>(tf) * entries_[j].idf);
  }
  double sum_sq = 0.0;
  for (double v : values) sum_sq += v * v;
  const double norm = std::sqrt(sum_sq);
  SparseVectorBuilder out(entries_.size());
  out.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) out.push_back(indices[k], values[k] / norm);
  return std::move(out).build();
}

json Vocabulary::to_json() const {
  json entries = json::array();
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    entries.push_back(json::array({entries_[j].ngram, j, entries_[j].doc_freq}));
  }
  return json{
      {"format", "fairda.vocabulary"},
      {"version", kVocabularyFormatVersion},
      {"ngram_range", {options_.min_n, options_.max_n}},
      {"max_features", options_.max_features},
      {"min_doc_freq", options_.min_doc_freq},
      {"excluded_tokens", options_.excluded_tokens},
      {"num_train_docs", num_train_docs_},
      {"entries", std::move(entries)},
  };
}

Vocabulary Vocabulary::from_json(const json& j) {
  try {
    if (j.at("format") != "fairda.vocabulary") {
      throw Error(ErrorKind::kParse, "not a vocabulary file");
    }
    if (j.at("version").get<int>() != kVocabularyFormatVersion) {
      throw Error(ErrorKind::kParse, "unsupported vocabulary version " +
                                         j.at("version").dump());
    }
    Vocabulary vocab;
    vocab.options_.min_n = j.at("ngram_range").at(0).get<std::size_t>();
    vocab.options_.max_n = j.at("ngram_range").at(1).get<std::size_t>();
    vocab.options_.max_features = j.at("max_features").get<std::size_t>();
    vocab.options_.min_doc_freq = j.at("min_doc_freq").get<std::size_t>();
    vocab.options_.excluded_tokens = j.at("excluded_tokens").get<std::vector<std::string>>();
    vocab.options_.validate();
    vocab.num_train_docs_ = j.at("num_train_docs").get<std::size_t>();
    const auto& entries = j.at("entries");
    vocab.entries_.resize(entries.size());
    for (const auto& e : entries) {
      const auto index = e.at(1).get<std::size_t>();
      if (index >= entries.size() || !vocab.entries_[index].ngram.empty()) {
        throw Error(ErrorKind::kParse, "vocabulary indices are not dense");
      }
      const auto doc_freq = e.at(2).get<std::size_t>();
      vocab.entries_[index] = {e.at(0).get<std::string>(), doc_freq,
                               smoothed_idf(vocab.num_train_docs_, doc_freq)};
    }
    vocab.build_index();
    return vocab;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed vocabulary: ") + e.what());
  }
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << to_json().dump(1) << '\n';
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed vocabulary: ") + e.what());
  }
  return from_json(j);
}

}  // namespace fairda
