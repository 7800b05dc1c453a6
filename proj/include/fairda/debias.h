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

#ifndef FAIRDA_DEBIAS_H_
#define FAIRDA_DEBIAS_H_

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fairda/document.h"
#include "json.hpp"

namespace fairda {

// Replacement for masked identity tokens. The vectorizer never counts it.
inline constexpr std::string_view kIdentToken = "<ident>";

// Gender-sensitive token list for one language.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws Error(kInvalidArgument) on empty or non-lowercase tokens.
  Lexicon(std::string language, const std::vector<std::string>& tokens);

  // UTF-8, one token per line, `#` starts a comment, blank lines ignored.
  // Tokens are lowercased on load.
  static Lexicon load(const std::filesystem::path& path, std::string language);
  static Lexicon parse(std::istream& in, std::string language);

  const std::string& language() const { return language_; }
  const std::unordered_set<std::string>& tokens() const { return tokens_; }
  bool contains(const std::string& token) const { return tokens_.count(token) != 0; }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::string language_;
  std::unordered_set<std::string> tokens_;
};

// Lexicons keyed by language code.
using LexiconSet = std::map<std::string, Lexicon, std::less<>>;

// Looks up the lexicon for `language`; throws Error(kConfig) if absent.
const Lexicon& lexicon_for(const LexiconSet& lexicons, std::string_view language);

// Every lexicon token becomes kIdentToken. Length and order are preserved.
std::vector<std::string> blind_mask(std::span<const std::string> tokens,
                                    const Lexicon& lexicon);

// Occurrences (with multiplicity) of lexicon tokens.
int count_sensitive(std::span<const std::string> tokens, const Lexicon& lexicon);

// P(Y) and P(Y | Z-bin) estimated with add-one smoothing, where Z is the
// number of sensitive tokens in a document. Bin k covers
// [lower_edges[k], lower_edges[k + 1]); the last bin is open-ended.
class WeightTable {
 public:
  struct Options {
    std::vector<int> lower_edges = {0, 1, 2, 3};
    double clip_low = 0.1;
    double clip_high = 10.0;

    void validate() const;
  };

  // Throws Error(kInvalidArgument) on an empty training set and Error(kConfig)
  // if a document's language has no lexicon.
  static WeightTable fit(std::span<const Document> train_docs,
                         const LexiconSet& lexicons, const Options& options);
  static WeightTable fit(std::span<const Document> train_docs,
                         const LexiconSet& lexicons) {
    return fit(train_docs, lexicons, Options{});
  }
  // Same estimator from precomputed (label, z) pairs.
  static WeightTable fit_counts(std::span<const std::pair<int, int>> label_z,
                                const Options& options);

  std::size_t num_bins() const { return conditional_.size(); }
  std::size_t bin(int z) const;
  double p_y(int label) const { return marginal_[static_cast<std::size_t>(label)]; }
  double p_y_given_bin(int label, std::size_t bin) const {
    return conditional_.at(bin)[static_cast<std::size_t>(label)];
  }
  const Options& options() const { return options_; }

  // P(Y = label) / P(Y = label | bin(z)), clipped to [clip_low, clip_high].
  double weight(int label, int z) const;

  nlohmann::json to_json() const;

 private:
  Options options_;
  std::array<double, 2> marginal_{};
  std::vector<std::array<double, 2>> conditional_;
};

double instance_weight(const Document& doc, const WeightTable& table,
                       const LexiconSet& lexicons);

}  // namespace fairda

#endif  // FAIRDA_DEBIAS_H_
