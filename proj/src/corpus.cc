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

#include "fairda/corpus.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>

#include "fairda/error.h"
#include "fairda/random.h"
#include "json.hpp"

namespace fairda {
namespace {

using nlohmann::json;

// Field values of one input record, independent of the on-disk format.
struct RawRecord {
  std::size_t line = 0;
  std::optional<std::string> id;
  std::optional<std::string> text;
  std::optional<std::string> label;
  std::optional<std::string> rating;
  std::optional<std::string> group;
  std::optional<std::string> lang;
  std::optional<std::vector<std::string>> tokens;
};

int parse_int_field(const RawRecord& record, const std::string& field,
                    const std::string& value) {
  std::size_t consumed = 0;
  int parsed = 0;
  try {
    parsed = std::stoi(value, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed == 0 || consumed != value.size()) {
    throw ParseError(record.line, field, "expected an integer, got '" + value + "'");
  }
  return parsed;
}

// Returns nullopt for records that are valid but dropped (rating 3).
std::optional<Document> to_document(const RawRecord& record,
                                    std::size_t ordinal,
                                    const GroupRegistry& groups) {
  if (!record.text) throw ParseError(record.line, "text", "missing");
  if (!record.group) throw ParseError(record.line, "group", "missing");
  if (!record.lang || record.lang->empty()) {
    throw ParseError(record.line, "lang", "missing");
  }

  Document doc;
  if (record.label) {
    const int label = parse_int_field(record, "label", *record.label);
    if (label != 0 && label != 1) {
      throw ParseError(record.line, "label",
                       "must be 0 or 1, got " + std::to_string(label));
    }
    doc.label = label;
  } else if (record.rating) {
    const int rating = parse_int_field(record, "rating", *record.rating);
    std::optional<int> label;
    try {
      label = encode_review_label(rating);
    } catch (const std::out_of_range&) {
      throw ParseError(record.line, "rating",
                       "must be in [1, 5], got " + std::to_string(rating));
    }
    if (!label) return std::nullopt;
    doc.label = *label;
  } else {
    throw ParseError(record.line, "label", "neither 'label' nor 'rating' present");
  }

  const auto group = groups.find(*record.group);
  if (!group) {
    throw ParseError(record.line, "group",
                     "unknown group '" + *record.group +
                         "'; allowed values: " + groups.allowed_values());
  }
  doc.group = *group;
  doc.id = record.id ? *record.id : std::to_string(ordinal);
  doc.raw_text = *record.text;
  doc.language = *record.lang;
  if (record.tokens) doc.tokens = *record.tokens;
  return doc;
}

std::optional<std::string> string_field(const json& object, std::size_t line,
                                        const char* name) {
  const auto it = object.find(name);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(line, name, "expected a string");
  return it->get<std::string>();
}

std::optional<std::string> int_field(const json& object, std::size_t line,
                                     const char* name) {
  const auto it = object.find(name);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw ParseError(line, name, "expected an integer");
  return std::to_string(it->get<long long>());
}

RawRecord parse_jsonl_record(const std::string& text, std::size_t line) {
  json object;
  try {
    object = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line, "<record>", std::string("invalid JSON: ") + e.what());
  }
  if (!object.is_object()) throw ParseError(line, "<record>", "expected an object");

  RawRecord record;
  record.line = line;
  if (const auto it = object.find("id"); it != object.end() && !it->is_null()) {
    if (it->is_string()) {
      record.id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      record.id = std::to_string(it->get<long long>());
    } else {
      throw ParseError(line, "id", "expected a string");
    }
  }
  record.text = string_field(object, line, "text");
  record.label = int_field(object, line, "label");
  record.rating = int_field(object, line, "rating");
  record.group = string_field(object, line, "group");
  record.lang = string_field(object, line, "lang");
  if (const auto it = object.find("tokens"); it != object.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError(line, "tokens", "expected an array");
    std::vector<std::string> tokens;
    for (const auto& token : *it) {
      if (!token.is_string()) throw ParseError(line, "tokens", "expected strings");
      tokens.push_back(token.get<std::string>());
    }
    record.tokens = std::move(tokens);
  }
  return record;
}

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Returns false at end of input. `line` is advanced past every
// newline consumed; `start_line` receives the line the record began on.
bool read_csv_record(std::istream& in, std::size_t& line,
                     std::size_t& start_line, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  start_line = line;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  for (;;) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      if (quoted) throw ParseError(start_line, "<record>", "unterminated quoted field");
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && field.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (ch == '\n') {
      ++line;
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
  }
}

std::vector<Document> read_jsonl(std::istream& in, const GroupRegistry& groups) {
  std::vector<Document> docs;
  std::string text;
  std::size_t line = 0;
  std::size_t ordinal = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    const RawRecord record = parse_jsonl_record(text, line);
    if (auto doc = to_document(record, ordinal++, groups)) {
      docs.push_back(std::move(*doc));
    }
  }
  return docs;
}

std::vector<Document> read_csv(std::istream& in, const GroupRegistry& groups) {
  std::vector<Document> docs;
  std::size_t line = 1;
  std::size_t start_line = 1;
  std::vector<std::string> header;
  if (!read_csv_record(in, line, start_line, header)) return docs;
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  if (!column.count("text")) throw ParseError(1, "text", "missing header column");

  std::vector<std::string> fields;
  std::size_t ordinal = 0;
  while (read_csv_record(in, line, start_line, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != header.size()) {
      throw ParseError(start_line, "<record>",
                       "expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()));
    }
    const auto get = [&](const char* name) -> std::optional<std::string> {
      const auto it = column.find(name);
      if (it == column.end() || fields[it->second].empty()) return std::nullopt;
      return fields[it->second];
    };
    RawRecord record;
    record.line = start_line;
    record.id = get("id");
    record.text = column.count("text") ? std::optional(fields[column["text"]])
                                       : std::nullopt;
    record.label = get("label");
    record.rating = get("rating");
    record.group = get("group");
    record.lang = get("lang");
    if (auto doc = to_document(record, ordinal++, groups)) {
      docs.push_back(std::move(*doc));
    }
  }
  return docs;
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "csv") return CorpusFormat::kCsv;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown corpus format '" + std::string(name) + "'; allowed values: jsonl, csv");
}

std::string_view corpus_format_name(CorpusFormat format) {
  return format == CorpusFormat::kJsonl ? "jsonl" : "csv";
}

std::vector<Document> read_corpus(std::istream& in, CorpusFormat format,
                                  const GroupRegistry& groups) {
  return format == CorpusFormat::kJsonl ? read_jsonl(in, groups)
                                        : read_csv(in, groups);
}

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  CorpusFormat format,
                                  const GroupRegistry& groups) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open corpus file '" + path.string() + "'");
  }
  return read_corpus(in, format, groups);
}

void write_corpus_jsonl(std::ostream& out, std::span<const Document> docs,
                        const GroupRegistry& groups) {
  for (const auto& doc : docs) {
    json record;
    record["id"] = doc.id;
    record["text"] = doc.raw_text;
    record["label"] = doc.label;
    record["group"] = groups.name(doc.group);
    record["lang"] = doc.language;
    if (!doc.tokens.empty()) record["tokens"] = doc.tokens;
    out << record.dump() << '\n';
  }
}

std::optional<int> encode_review_label(int rating) {
  if (rating < 1 || rating > 5) {
    throw std::out_of_range("rating " + std::to_string(rating) +
                            " outside [1, 5]");
  }
  if (rating > 3) return 1;
  if (rating < 3) return 0;
  return std::nullopt;
}

void SplitSpec::validate() const {
  if (!(train_frac > 0.0) || !(dev_frac > 0.0) || !(test_frac > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "split fractions must be positive");
  }
  if (std::abs(train_frac + dev_frac + test_frac - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidArgument, "split fractions must sum to 1");
  }
}

Splits split(std::span<const Document> docs, const SplitSpec& spec) {
  spec.validate();
  if (docs.empty()) throw Error(ErrorKind::kInvalidArgument, "cannot split an empty corpus");

  Rng rng(spec.seed);
  std::vector<std::vector<std::size_t>> strata;
  if (spec.stratified) {
    strata.resize(2);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      strata[docs[i].label == 1 ? 1 : 0].push_back(i);
    }
  } else {
    strata.emplace_back(docs.size());
    std::iota(strata[0].begin(), strata[0].end(), std::size_t{0});
  }

  // The small epsilon keeps exact products such as 10 * 0.1 from flooring
  // down through representation error.
  const auto take = [](std::size_t n, double frac) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * frac + 1e-9));
  };

  Splits out;
  for (auto& stratum : strata) {
    rng.shuffle(std::span(stratum));
    const std::size_t n_dev = take(stratum.size(), spec.dev_frac);
    const std::size_t n_test = take(stratum.size(), spec.test_frac);
    const std::size_t n_train = stratum.size() - n_dev - n_test;
    for (std::size_t k = 0; k < stratum.size(); ++k) {
      const Document& doc = docs[stratum[k]];
      if (k < n_train) {
        out.train.push_back(doc);
      } else if (k < n_train + n_dev) {
        out.dev.push_back(doc);
      } else {
        out.test.push_back(doc);
      }
    }
  }
  return out;
}

CorpusSummary summarize(std::span<const Document> docs, int female_group) {
  if (docs.empty()) throw Error(ErrorKind::kInvalidArgument, "cannot summarize an empty corpus");
  CorpusSummary summary;
  summary.doc_count = docs.size();
  std::size_t tokens = 0;
  std::size_t female = 0;
  std::size_t positive = 0;
  for (const auto& doc : docs) {
    tokens += doc.tokens.size();
    female += doc.group == female_group ? 1 : 0;
    positive += doc.label == 1 ? 1 : 0;
  }
  const double n = static_cast<double>(docs.size());
  summary.mean_tokens = static_cast<double>(tokens) / n;
  summary.female_ratio = static_cast<double>(female) / n;
  summary.positive_label_ratio = static_cast<double>(positive) / n;
  return summary;
}

}  // namespace fairda
