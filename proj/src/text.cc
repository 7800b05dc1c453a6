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

// Text normalization: anonymization, Unicode lowercasing and tokenization.

#include <memory>
#include <regex>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "fairda/corpus.h"
#include "fairda/error.h"
#include "fairda/hash.h"

namespace fairda {
namespace {

const std::regex& url_pattern() {
  static const std::regex pattern(R"((?:https?://|www\.)\S+)",
                                  std::regex::ECMAScript | std::regex::icase);
  return pattern;
}

// A run of `@` is swallowed so that "@@bob" does not leave a stray `@` in
// front of the replacement.
const std::regex& mention_pattern() {
  static const std::regex pattern(R"(@+\w+)", std::regex::ECMAScript);
  return pattern;
}

icu::UnicodeString to_lower_unicode(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u.toLower(icu::Locale::getRoot());
  return u;
}

icu::BreakIterator& word_breaker() {
  thread_local std::unique_ptr<icu::BreakIterator> breaker = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it(
        icu::BreakIterator::createWordInstance(icu::Locale::getRoot(),
                                               status));
    if (U_FAILURE(status) || !it) {
      throw Error(ErrorKind::kIo, std::string("ICU word break iterator: ") +
                                      u_errorName(status));
    }
    return it;
  }();
  return *breaker;
}

bool is_blank(const icu::UnicodeString& segment) {
  for (int32_t i = 0; i < segment.length();) {
    const UChar32 c = segment.char32At(i);
    if (!u_isUWhiteSpace(c)) return false;
    i += U16_LENGTH(c);
  }
  return true;
}

}  // namespace

std::string anonymize(std::string_view text) {
  std::string out(text);
  out = std::regex_replace(out, url_pattern(), "url");
  out = std::regex_replace(out, mention_pattern(), "user");
  return out;
}

Document anonymize_document(Document doc) {
  doc.raw_text = anonymize(doc.raw_text);
  doc.id = to_hex(fnv1a64(doc.id));
  return doc;
}

std::string lowercase(std::string_view text) {
  std::string out;
  to_lower_unicode(text).toUTF8String(out);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  if (text.empty()) return tokens;
  const icu::UnicodeString lowered = to_lower_unicode(text);
  icu::BreakIterator& breaker = word_breaker();
  breaker.setText(lowered);
  int32_t start = breaker.first();
  for (int32_t end = breaker.next(); end != icu::BreakIterator::DONE;
       start = end, end = breaker.next()) {
    const icu::UnicodeString segment = lowered.tempSubStringBetween(start, end);
    if (is_blank(segment)) continue;
    std::string token;
    segment.toUTF8String(token);
    tokens.push_back(std::move(token));
  }
  return tokens;
}

void tokenize_all(std::span<Document> docs) {
  for (auto& doc : docs) {
    if (doc.tokens.empty()) doc.tokens = tokenize(doc.raw_text);
  }
}

}  // namespace fairda
