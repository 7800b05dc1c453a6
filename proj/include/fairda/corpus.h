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

#ifndef FAIRDA_CORPUS_H_
#define FAIRDA_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairda/document.h"

namespace fairda {

enum class CorpusFormat { kJsonl, kCsv };

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view corpus_format_name(CorpusFormat format);

// Reads an annotated corpus. Each record carries `text`, either `label`
// (0/1) or `rating` (1-5), `group` (a registry name) and `lang`; `id` is
// optional and defaults to the record's 0-based ordinal. Reviews rated 3 are
// dropped. JSONL records may also carry a pre-computed `tokens` array.
//
// Malformed records raise ParseError naming the line and field.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  CorpusFormat format,
                                  const GroupRegistry& groups = {});

std::vector<Document> read_corpus(std::istream& in, CorpusFormat format,
                                  const GroupRegistry& groups = {});

// Writes documents as JSONL in the schema load_corpus reads, with `label`
// as the label source and tokens included when present.
void write_corpus_jsonl(std::ostream& out, std::span<const Document> docs,
                        const GroupRegistry& groups = {});

// rating > 3 -> 1, rating < 3 -> 0, rating == 3 -> nullopt (document is
// dropped). Throws std::out_of_range outside [1, 5].
std::optional<int> encode_review_label(int rating);

// Replaces @-mentions with `user` and URLs (http://, https://, www.) with
// `url`. Idempotent.
std::string anonymize(std::string_view text);

// Anonymizes the text and replaces the id with its FNV-1a hex digest.
Document anonymize_document(Document doc);

// Unicode full lowercasing (root locale).
std::string lowercase(std::string_view text);

// Lowercases, then splits on Unicode word boundaries. Whitespace segments are
// dropped; punctuation characters come out as standalone tokens.
std::vector<std::string> tokenize(std::string_view text);

// Tokenizes every document whose token list is empty.
void tokenize_all(std::span<Document> docs);

struct SplitSpec {
  double train_frac = 0.8;
  double dev_frac = 0.1;
  double test_frac = 0.1;
  std::uint64_t seed = 0;
  // Split each label class separately. Off by default.
  bool stratified = false;

  // Throws Error(kInvalidArgument) unless every fraction is positive and they
  // sum to 1 within 1e-9.
  void validate() const;
};

struct Splits {
  std::vector<Document> train;
  std::vector<Document> dev;
  std::vector<Document> test;
};

// Random partition. dev and test get floor(n * frac) documents; the
// remainder goes to train.
Splits split(std::span<const Document> docs, const SplitSpec& spec);

struct CorpusSummary {
  std::size_t doc_count = 0;
  double mean_tokens = 0.0;
  double female_ratio = 0.0;
  double positive_label_ratio = 0.0;
};

// Throws Error(kInvalidArgument) on an empty corpus.
CorpusSummary summarize(std::span<const Document> docs, int female_group = 1);

}  // namespace fairda

#endif  // FAIRDA_CORPUS_H_
