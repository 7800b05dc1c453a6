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

#include "fairda/debias.h"

#include <algorithm>
#include <fstream>

#include "fairda/corpus.h"
#include "fairda/error.h"

namespace fairda {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Lexicon::Lexicon(std::string language, const std::vector<std::string>& tokens)
    : language_(std::move(language)) {
  for (const auto& token : tokens) {
    if (token.empty()) throw Error(ErrorKind::kInvalidArgument, "empty lexicon token");
    if (lowercase(token) != token) {
      throw Error(ErrorKind::kInvalidArgument,
                  "lexicon token '" + token + "' is not lowercase");
    }
    if (token == kIdentToken) {
      throw Error(ErrorKind::kInvalidArgument, "the mask token cannot be a lexicon entry");
    }
    tokens_.insert(token);
  }
}

Lexicon Lexicon::parse(std::istream& in, std::string language) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string token = trim(line);
    if (!token.empty()) tokens.push_back(lowercase(token));
  }
  return Lexicon(std::move(language), tokens);
}

Lexicon Lexicon::load(const std::filesystem::path& path, std::string language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open lexicon '" + path.string() + "'");
  return parse(in, std::move(language));
}

const Lexicon& lexicon_for(const LexiconSet& lexicons, std::string_view language) {
  const auto it = lexicons.find(language);
  if (it == lexicons.end()) {
    throw Error(ErrorKind::kConfig,
                "no lexicon for language '" + std::string(language) + "'");
  }
  return it->second;
}

std::vector<std::string> blind_mask(std::span<const std::string> tokens,
                                    const Lexicon& lexicon) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    out.push_back(lexicon.contains(token) ? std::string(kIdentToken) : token);
  }
  return out;
}

int count_sensitive(std::span<const std::string> tokens, const Lexicon& lexicon) {
  return static_cast<int>(std::count_if(tokens.begin(), tokens.end(),
                                        [&](const auto& t) { return lexicon.contains(t); }));
}

void WeightTable::Options::validate() const {
  if (lower_edges.empty() || lower_edges.front() != 0) {
    throw Error(ErrorKind::kInvalidArgument, "z bins must start at 0");
  }
  for (std::size_t k = 1; k < lower_edges.size(); ++k) {
    if (lower_edges[k] <= lower_edges[k - 1]) {
      throw Error(ErrorKind::kInvalidArgument, "z bin edges must increase");
    }
  }
  if (!(clip_low > 0.0) || !(clip_high >= clip_low)) {
    throw Error(ErrorKind::kInvalidArgument, "clip bounds must satisfy 0 < low <= high");
  }
}

std::size_t WeightTable::bin(int z) const {
  const auto& edges = options_.lower_edges;
  const auto it = std::upper_bound(edges.begin(), edges.end(), std::max(z, 0));
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

WeightTable WeightTable::fit_counts(std::span<const std::pair<int, int>> label_z,
                                    const Options& options) {
  options.validate();
  if (label_z.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot fit weights on an empty training set");
  }
  WeightTable table;
  table.options_ = options;
  const std::size_t bins = options.lower_edges.size();
  std::array<double, 2> label_counts{};
  std::vector<std::array<double, 2>> cell_counts(bins, {0.0, 0.0});
  for (const auto& [label, z] : label_z) {
    if (label != 0 && label != 1) {
      throw Error(ErrorKind::kInvalidArgument, "labels must be binary");
    }
    label_counts[static_cast<std::size_t>(label)] += 1.0;
    cell_counts[table.bin(z)][static_cast<std::size_t>(label)] += 1.0;
  }
  const double n = static_cast<double>(label_z.size());
  for (std::size_t y = 0; y < 2; ++y) table.marginal_[y] = (label_counts[y] + 1.0) / (n + 2.0);
  table.conditional_.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double n_bin = cell_counts[b][0] + cell_counts[b][1];
    for (std::size_t y = 0; y < 2; ++y) {
      table.conditional_[b][y] = (cell_counts[b][y] + 1.0) / (n_bin + 2.0);
    }
  }
  return table;
}

WeightTable WeightTable::fit(std::span<const Document> train_docs,
                             const LexiconSet& lexicons, const Options& options) {
  std::vector<std::pair<int, int>> label_z;
  label_z.reserve(train_docs.size());
  for (const auto& doc : train_docs) {
    label_z.emplace_back(doc.label,
                         count_sensitive(doc.tokens, lexicon_for(lexicons, doc.language)));
  }
  return fit_counts(label_z, options);
}

double WeightTable::weight(int label, int z) const {
  const double ratio = p_y(label) / p_y_given_bin(label, bin(z));
  return std::clamp(ratio, options_.clip_low, options_.clip_high);
}

nlohmann::json WeightTable::to_json() const {
  nlohmann::json bins = nlohmann::json::array();
  for (std::size_t b = 0; b < conditional_.size(); ++b) {
    bins.push_back({{"lower_edge", options_.lower_edges[b]},
                    {"p_y_given_z", {conditional_[b][0], conditional_[b][1]}}});
  }
  return {{"p_y", {marginal_[0], marginal_[1]}},
          {"bins", std::move(bins)},
          {"clip", {options_.clip_low, options_.clip_high}}};
}

double instance_weight(const Document& doc, const WeightTable& table,
                       const LexiconSet& lexicons) {
  return table.weight(doc.label,
                      count_sensitive(doc.tokens, lexicon_for(lexicons, doc.language)));
}

}  // namespace fairda
