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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "fairda/error.h"
#include "fairda/random.h"
#include "fairda/sparse_vector.h"
#include "gtest/gtest.h"
#include "testing/reference.h"

namespace fairda {
namespace {

using Docs = std::vector<std::vector<std::string>>;

VocabularyOptions Options(std::size_t min_df, std::size_t max_features = 15000,
                          std::size_t max_n = 3) {
  VocabularyOptions o;
  o.min_doc_freq = min_df;
  o.max_features = max_features;
  o.max_n = max_n;
  return o;
}

Docs RandomCorpus(Rng& rng, std::size_t max_docs) {
  static const std::vector<std::string> kWords = {"a", "b", "c", "d", "e", "<ident>", "ff"};
  Docs docs(1 + rng.below(max_docs));
  for (auto& doc : docs) {
    const std::size_t len = rng.below(9);
    for (std::size_t i = 0; i < len; ++i) doc.push_back(kWords[rng.below(kWords.size())]);
  }
  return docs;
}

TEST(SparseVector, RejectsBrokenInvariants) {
  EXPECT_THROW(SparseVector(5, {2, 1}, {1.0, 1.0}), Error);
  EXPECT_THROW(SparseVector(5, {1, 1}, {1.0, 1.0}), Error);
  EXPECT_THROW(SparseVector(5, {5}, {1.0}), Error);
  EXPECT_THROW(SparseVector(5, {1}, {0.0}), Error);
  EXPECT_THROW(SparseVector(5, {1}, {}), Error);
  EXPECT_NO_THROW(SparseVector(5, {0, 4}, {1.0, -2.0}));
}

TEST(SparseVector, FromPairsSumsAndDropsZeros) {
  const auto v = SparseVector::from_pairs(6, {{4, 1.0}, {1, 2.0}, {4, -1.0}, {1, 0.5}});
  EXPECT_EQ(v.indices(), std::vector<std::size_t>{1});
  EXPECT_DOUBLE_EQ(v.at(1), 2.5);
  EXPECT_DOUBLE_EQ(v.at(4), 0.0);
}

TEST(SparseVector, DotChecksDimension) {
  const SparseVector v(3, {0, 2}, {1.0, 2.0});
  const std::vector<double> w = {3.0, 100.0, 0.5};
  EXPECT_DOUBLE_EQ(v.dot(w), 4.0);
  const std::vector<double> short_w = {1.0};
  EXPECT_THROW(v.dot(short_w), Error);
}

TEST(Vocabulary, DocFreqCountedOncePerDoc) {
  const Docs docs = {{"a", "b"}, {"a", "c"}, {"a", "b", "a"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(1));
  const long a = vocab.find("a");
  ASSERT_GE(a, 0);
  EXPECT_EQ(vocab.entries()[static_cast<std::size_t>(a)].doc_freq, 3u);
  EXPECT_GE(vocab.find("a b"), 0);
  EXPECT_EQ(vocab.find("b a c"), -1);
}

TEST(Vocabulary, MinDocFreqDropsRareNgrams) {
  const Docs docs = {{"rare", "x"}, {"rare", "x"}, {"x"}, {"y"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(3));
  EXPECT_EQ(vocab.find("rare"), -1);
  EXPECT_GE(vocab.find("x"), 0);
  for (const auto& e : vocab.entries()) EXPECT_GE(e.doc_freq, 3u);
}

TEST(Vocabulary, MaxFeaturesKeepsMostFrequent) {
  // Totals: p 5, q 4, r 3, s 2, t 1.
  const Docs docs = {{"p", "p", "q", "r", "s"}, {"p", "q", "q", "r", "t"}, {"p", "p", "q", "r", "s"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(1, 2, 1));
  ASSERT_EQ(vocab.size(), 2u);
  EXPECT_GE(vocab.find("p"), 0);
  EXPECT_GE(vocab.find("q"), 0);
}

TEST(Vocabulary, FrequencyTiesBreakLexicographically) {
  const Docs docs = {{"zz", "aa", "mm"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(1, 2, 1));
  EXPECT_GE(vocab.find("aa"), 0);
  EXPECT_GE(vocab.find("mm"), 0);
  EXPECT_EQ(vocab.find("zz"), -1);
}

TEST(Vocabulary, IndicesAreDenseAndIdfPositive) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const Docs docs = RandomCorpus(rng, 20);
    const auto vocab = Vocabulary::fit_tokens(docs, Options(1 + rng.below(3), 1 + rng.below(30)));
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      EXPECT_EQ(vocab.find(vocab.entries()[j].ngram), static_cast<long>(j));
      EXPECT_GT(vocab.entries()[j].idf, 0.0);
    }
  }
}

TEST(Vocabulary, IdentTokenNeverCounted) {
  const Docs docs = {{"<ident>", "is", "ok"}, {"<ident>", "is"}, {"<ident>"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(1));
  for (const auto& e : vocab.entries()) {
    EXPECT_EQ(e.ngram.find("<ident>"), std::string::npos) << e.ngram;
  }
  EXPECT_GE(vocab.find("is ok"), 0);
}

TEST(Vocabulary, EmptyTrainingSetIsAnError) {
  EXPECT_THROW(Vocabulary::fit_tokens(Docs{}, Options(1)), Error);
}

TEST(Vocabulary, InvalidOptionsRejected) {
  VocabularyOptions o;
  o.min_n = 2;
  o.max_n = 1;
  EXPECT_THROW(Vocabulary::fit_tokens(Docs{{"a"}}, o), Error);
}

TEST(Transform, EmptyWhenNothingInVocabulary) {
  const auto vocab = Vocabulary::fit_tokens(Docs{{"a"}, {"b"}}, Options(1));
  const std::vector<std::string> doc = {"zzz"};
  const SparseVector v = vocab.transform(doc);
  EXPECT_TRUE(v.empty());
  EXPECT_EQ(v.dim(), vocab.size());
}

TEST(Transform, SingleUnigramHasUnitValue) {
  const auto vocab = Vocabulary::fit_tokens(Docs{{"a"}, {"b"}}, Options(1));
  const std::vector<std::string> doc = {"a"};
  const SparseVector v = vocab.transform(doc);
  ASSERT_EQ(v.nnz(), 1u);
  EXPECT_DOUBLE_EQ(v.values()[0], 1.0);
}

TEST(Transform, HandWorkedWeights) {
  // N = 3; df(a) = 3 gives idf 1; df(b) = 1 gives idf ln 2 + 1.
  const Docs docs = {{"a", "b"}, {"a"}, {"a"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(1, 15000, 1));
  const std::vector<std::string> doc = {"a", "a", "b"};
  const SparseVector v = vocab.transform(doc);
  const double a = 2.0 * 1.0;
  const double b = 1.0 * (std::log(2.0) + 1.0);
  const double norm = std::sqrt(a * a + b * b);
  EXPECT_NEAR(v.at(static_cast<std::size_t>(vocab.find("a"))), a / norm, 1e-12);
  EXPECT_NEAR(v.at(static_cast<std::size_t>(vocab.find("b"))), b / norm, 1e-12);
}

TEST(Transform, UnitNormAndNoLeakage) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const Docs docs = RandomCorpus(rng, 20);
    const auto vocab = Vocabulary::fit_tokens(docs, Options(1));
    const std::size_t size = vocab.size();
    std::vector<std::string> doc = {"unseen", "words", "only"};
    EXPECT_TRUE(vocab.transform(doc).empty());
    EXPECT_EQ(vocab.size(), size);
    for (const auto& d : docs) {
      const SparseVector v = vocab.transform(d);
      if (!v.empty()) EXPECT_NEAR(v.l2_norm(), 1.0, 1e-9);
    }
  }
}

TEST(Transform, IndependentOfDocumentOrder) {
  Rng rng(4);
  Docs docs = RandomCorpus(rng, 20);
  const auto first = Vocabulary::fit_tokens(docs, Options(2));
  std::reverse(docs.begin(), docs.end());
  const auto second = Vocabulary::fit_tokens(docs, Options(2));
  ASSERT_EQ(first.size(), second.size());
  for (const auto& d : docs) EXPECT_EQ(first.transform(d), second.transform(d));
}

TEST(Transform, MatchesNaiveReference) {
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    const Docs docs = RandomCorpus(rng, 20);
    const std::size_t min_df = 1 + rng.below(3);
    const std::size_t cap = 1 + rng.below(12);
    const auto vocab = Vocabulary::fit_tokens(docs, Options(min_df, cap));
    const auto ref = reference::fit_tfidf(docs, 1, 3, cap, min_df);
    ASSERT_EQ(vocab.size(), ref.index.size());
    for (const auto& [ngram, j] : ref.index) {
      EXPECT_EQ(vocab.find(ngram), static_cast<long>(j));
      EXPECT_EQ(vocab.entries()[j].idf, ref.idf.at(ngram));
    }
    for (const auto& d : docs) {
      EXPECT_EQ(vocab.transform(d).to_dense(), reference::transform_tfidf(ref, d, 1, 3));
    }
  }
}

TEST(Vocabulary, JsonRoundTrip) {
  const Docs docs = {{"a", "b", "c"}, {"a", "b"}, {"c", "a"}};
  const auto vocab = Vocabulary::fit_tokens(docs, Options(1));
  const auto path = std::filesystem::temp_directory_path() / "fairda_vocab_test.json";
  vocab.save(path);
  const auto back = Vocabulary::load(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), vocab.size());
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    EXPECT_EQ(back.entries()[j].ngram, vocab.entries()[j].ngram);
    EXPECT_EQ(back.entries()[j].idf, vocab.entries()[j].idf);
  }
  EXPECT_EQ(back.transform(docs[0]), vocab.transform(docs[0]));
}

TEST(Vocabulary, RejectsForeignJson) {
  EXPECT_THROW(Vocabulary::from_json(nlohmann::json{{"format", "other"}}), Error);
}

}  // namespace
}  // namespace fairda
