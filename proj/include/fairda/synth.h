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

#ifndef FAIRDA_SYNTH_H_
#define FAIRDA_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fairda/corpus.h"
#include "fairda/debias.h"
#include "fairda/document.h"
#include "json.hpp"

namespace fairda {

// Parameters of the synthetic group-annotated corpus generator.
//
// Every document draws group ~ Bernoulli(group_ratio) (1 = the second
// registry group) and label ~ Bernoulli(label_ratio) independently. Each
// token is label-indicative with probability label_token_rate,
// group-indicative with probability group_token_rate, and neutral
// otherwise. A label-indicative token names the document's label, or the
// opposite label with probability cue_noise; with probability `bias` it is
// taken from a synonym pool private to the document's group, otherwise from
// the pool shared by all groups. At bias 0 label cues carry no group
// information; at bias 1 the groups use disjoint label vocabularies.
//
// Two further couplings scale with `bias`:
//  - a neutral slot is filled, with probability cross_group_rate * bias,
//    by a synonym of another group used without label meaning, so the same
//    surface token is a label cue for one group and filler for the others;
//  - label-1 documents of group 0 additionally mention group 1's identity
//    tokens at rate bias * identity_coupling * group_token_rate, while
//    group 1 uses those tokens independently of the label.
// At bias 0 neither applies and labels are independent of group and of the
// number of identity tokens.
struct SynthSpec {
  std::size_t n_docs = 1000;
  // Mean document length; lengths are Poisson, floored at one token.
  double doc_len = 20.0;
  double group_ratio = 0.4;
  double label_ratio = 0.7;
  double bias = 0.0;
  // Size of each label-indicative pool (shared, and one per group).
  std::size_t label_vocab = 200;
  // Size of each group's identity-token pool.
  std::size_t group_vocab = 10;
  std::size_t neutral_vocab = 2000;
  double label_token_rate = 0.25;
  double group_token_rate = 0.05;
  double cue_noise = 0.05;
  double cross_group_rate = 0.6;
  double identity_coupling = 0.0;
  // Zipf exponent used inside every pool; 0 is uniform.
  double zipf = 1.0;
  int num_groups = 2;
  std::string language = "en";
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) when a field is out of range.
  void validate() const;
  nlohmann::json to_json() const;
  static SynthSpec from_json(const nlohmann::json& j);
};

// Deterministic given the spec; document i depends only on (seed, i).
// Documents carry raw text and the matching tokens.
std::vector<Document> generate(const SynthSpec& spec);

// Analytic expectations for a generated corpus. The female ratio is the
// expected share of group 1.
CorpusSummary summarize_spec(const SynthSpec& spec);

// The group-indicative tokens, usable as a Blind / instance-weighting
// lexicon.
Lexicon synth_lexicon(const SynthSpec& spec);

// Token-name helpers, exposed for tests.
std::string synth_label_token(int label, int group, std::size_t k);  // group -1: shared
std::string synth_group_token(int group, std::size_t k);
std::string synth_neutral_token(std::size_t k);

}  // namespace fairda

#endif  // FAIRDA_SYNTH_H_
