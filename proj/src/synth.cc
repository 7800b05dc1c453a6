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

#include "fairda/synth.h"

#include <algorithm>
#include <cmath>

#include "fairda/error.h"
#include "fairda/hash.h"
#include "fairda/random.h"
#include "json_keys.h"

namespace fairda {
namespace {

using nlohmann::json;

// Inverse-CDF sampler over {0, ..., n-1} with P(k) proportional to
// (k + 1)^-exponent.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      total += std::pow(static_cast<double>(k + 1), -exponent);
      cdf_[k] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }
bool in_closed_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::string synth_label_token(int label, int group, std::size_t k) {
  std::string out = label == 1 ? "pos" : "neg";
  if (group >= 0) out += "g" + std::to_string(group);
  return out + "s" + std::to_string(k);
}

std::string synth_group_token(int group, std::size_t k) {
  return "id" + std::to_string(group) + "w" + std::to_string(k);
}

std::string synth_neutral_token(std::size_t k) { return "w" + std::to_string(k); }

void SynthSpec::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kInvalidArgument, "invalid synth spec: " + what);
  };
  if (!(doc_len > 0.0) || doc_len > 500.0) fail("doc_len must be in (0, 500]");
  if (!in_open_unit(group_ratio)) fail("group_ratio must be in (0, 1)");
  if (!in_open_unit(label_ratio)) fail("label_ratio must be in (0, 1)");
  if (!in_closed_unit(bias)) fail("bias must be in [0, 1]");
  if (label_vocab < 1 || group_vocab < 1 || neutral_vocab < 1) {
    fail("vocabulary sizes must be >= 1");
  }
  if (!in_closed_unit(label_token_rate) || !in_closed_unit(group_token_rate) ||
      label_token_rate + group_token_rate > 1.0) {
    fail("token rates must be in [0, 1] and sum to at most 1");
  }
  if (!in_closed_unit(cue_noise)) fail("cue_noise must be in [0, 1]");
  if (!in_closed_unit(cross_group_rate)) fail("cross_group_rate must be in [0, 1]");
  if (!in_closed_unit(identity_coupling)) fail("identity_coupling must be in [0, 1]");
  if (label_token_rate + group_token_rate * (1.0 + identity_coupling) > 1.0) {
    fail("token rates leave no room for the coupled identity rate");
  }
  if (!(zipf >= 0.0)) fail("zipf must be >= 0");
  if (num_groups != 2) fail("num_groups must be 2");
  if (language.empty()) fail("language must be nonempty");
}

json SynthSpec::to_json() const {
  return json{{"n_docs", n_docs},
              {"doc_len", doc_len},
              {"group_ratio", group_ratio},
              {"label_ratio", label_ratio},
              {"bias", bias},
              {"label_vocab", label_vocab},
              {"group_vocab", group_vocab},
              {"neutral_vocab", neutral_vocab},
              {"label_token_rate", label_token_rate},
              {"group_token_rate", group_token_rate},
              {"cue_noise", cue_noise},
              {"cross_group_rate", cross_group_rate},
              {"identity_coupling", identity_coupling},
              {"zipf", zipf},
              {"num_groups", num_groups},
              {"language", language},
              {"seed", seed}};
}

SynthSpec SynthSpec::from_json(const json& j) {
  SynthSpec s;
  detail::reject_unknown_keys(j, s.to_json(), ErrorKind::kConfig);
  try {
    s.n_docs = j.value("n_docs", s.n_docs);
    s.doc_len = j.value("doc_len", s.doc_len);
    s.group_ratio = j.value("group_ratio", s.group_ratio);
    s.label_ratio = j.value("label_ratio", s.label_ratio);
    s.bias = j.value("bias", s.bias);
    s.label_vocab = j.value("label_vocab", s.label_vocab);
    s.group_vocab = j.value("group_vocab", s.group_vocab);
    s.neutral_vocab = j.value("neutral_vocab", s.neutral_vocab);
    s.label_token_rate = j.value("label_token_rate", s.label_token_rate);
    s.group_token_rate = j.value("group_token_rate", s.group_token_rate);
    s.cue_noise = j.value("cue_noise", s.cue_noise);
    s.cross_group_rate = j.value("cross_group_rate", s.cross_group_rate);
    s.identity_coupling = j.value("identity_coupling", s.identity_coupling);
    s.zipf = j.value("zipf", s.zipf);
    s.num_groups = j.value("num_groups", s.num_groups);
    s.language = j.value("language", s.language);
    s.seed = j.value("seed", s.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed synth spec: ") + e.what());
  }
  s.validate();
  return s;
}

std::vector<Document> generate(const SynthSpec& spec) {
  spec.validate();
  const ZipfSampler label_pool(spec.label_vocab, spec.zipf);
  const ZipfSampler group_pool(spec.group_vocab, spec.zipf);
  const ZipfSampler neutral_pool(spec.neutral_vocab, spec.zipf);

  std::vector<Document> docs(spec.n_docs);
  for (std::size_t i = 0; i < spec.n_docs; ++i) {
    Rng rng(derive_seed(spec.seed, i));
    Document& doc = docs[i];
    doc.id = "synth-" + std::to_string(i);
    doc.language = spec.language;
    doc.group = rng.bernoulli(spec.group_ratio) ? 1 : 0;
    doc.label = rng.bernoulli(spec.label_ratio) ? 1 : 0;
    const std::size_t length = std::max<std::uint64_t>(1, rng.poisson(spec.doc_len));
    const double own_rate = spec.label_token_rate + spec.group_token_rate;
    // Label-1 documents of group 0 also name group 1.
    const double mention_rate =
        doc.group == 0 && doc.label == 1
            ? spec.bias * spec.identity_coupling * spec.group_token_rate
            : 0.0;
    const double cross_rate = spec.bias * spec.cross_group_rate;
    doc.tokens.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
      const double u = rng.uniform();
      if (u < spec.label_token_rate) {
        const int cue = rng.bernoulli(spec.cue_noise) ? 1 - doc.label : doc.label;
        const int pool_group = rng.bernoulli(spec.bias) ? doc.group : -1;
        doc.tokens.push_back(synth_label_token(cue, pool_group, label_pool(rng)));
      } else if (u < own_rate) {
        doc.tokens.push_back(synth_group_token(doc.group, group_pool(rng)));
      } else if (u < own_rate + mention_rate) {
        doc.tokens.push_back(synth_group_token(1, group_pool(rng)));
      } else if (rng.bernoulli(cross_rate)) {
        // Another group's synonym, label drawn at random.
        int other = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.num_groups - 1)));
        if (other >= doc.group) ++other;
        const int label = rng.bernoulli(0.5) ? 1 : 0;
        doc.tokens.push_back(synth_label_token(label, other, label_pool(rng)));
      } else {
        doc.tokens.push_back(synth_neutral_token(neutral_pool(rng)));
      }
    }
    for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
      if (t > 0) doc.raw_text.push_back(' ');
      doc.raw_text += doc.tokens[t];
    }
  }
  return docs;
}

CorpusSummary summarize_spec(const SynthSpec& spec) {
  spec.validate();
  CorpusSummary s;
  s.doc_count = spec.n_docs;
  // E[max(1, K)] for K ~ Poisson(lambda) is lambda + P(K = 0).
  s.mean_tokens = spec.doc_len + std::exp(-spec.doc_len);
  s.female_ratio = spec.group_ratio;
  s.positive_label_ratio = spec.label_ratio;
  return s;
}

Lexicon synth_lexicon(const SynthSpec& spec) {
  std::vector<std::string> tokens;
  for (int g = 0; g < spec.num_groups; ++g) {
    for (std::size_t k = 0; k < spec.group_vocab; ++k) tokens.push_back(synth_group_token(g, k));
  }
  return Lexicon(spec.language, tokens);
}

}  // namespace fairda
