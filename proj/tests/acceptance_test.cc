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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fairda/adaptation.h"
#include "fairda/debias.h"
#include "fairda/error.h"
#include "fairda/experiment.h"
#include "fairda/features.h"
#include "fairda/metrics.h"
#include "fairda/model.h"
#include "fairda/random.h"
#include "fairda/synth.h"
#include "testing/reference.h"

namespace fairda {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

Outcome MetricOracle() {
  Rng rng(1001);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    auto preds = reference::random_predictions(rng, 4, 50);
    // Both classes in both groups keep every metric defined.
    preds[0] = {0, 0, 0.1, 0};
    preds[1] = {1, 1, 0.9, 0};
    preds[2] = {0, 1, 0.4, 1};
    preds[3] = {1, 0, 0.6, 1};
    const EvalReport r = evaluate(preds);
    worst = std::max({worst, std::fabs(r.f1_macro - reference::f1_macro(preds)),
                      std::fabs(r.auc - reference::auc(preds)),
                      std::fabs(r.fped - reference::equality_difference(preds, true)),
                      std::fabs(r.fned - reference::equality_difference(preds, false))});
  }
  return {worst <= 1e-9, Fmt("max abs diff %.3g over 1000 fixtures", worst)};
}

Outcome FpedExample() {
  std::vector<Prediction> preds;
  for (int pred : {1, 0}) preds.push_back({0, pred, 0.5, 0});
  for (int pred : {1, 0, 0, 0}) preds.push_back({0, pred, 0.5, 1});
  const double fped = equality_difference(preds, ErrorRate::kFalsePositive);
  return {std::fabs(fped - 0.25) <= 1e-12, Fmt("FPED = %.17g", fped)};
}

SparseVector RandomVector(Rng& rng, std::size_t dim) {
  std::vector<std::pair<std::size_t, double>> pairs;
  for (std::size_t j = 0; j < dim; ++j) {
    if (rng.bernoulli(0.5)) pairs.emplace_back(j, rng.uniform() * 2 - 1);
  }
  return SparseVector::from_pairs(dim, pairs);
}

Outcome FedaEquivalence() {
  Rng rng(1003);
  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng.below(30);
    const FedaLayout layout(d, 2);
    LinearModel m;
    for (std::size_t j = 0; j < layout.total_dim(); ++j) m.weights.push_back(rng.uniform() * 4 - 2);
    m.bias = rng.uniform() - 0.5;
    LinearModel general;
    const auto w = general_weights(m.weights, layout);
    general.weights.assign(w.begin(), w.end());
    general.bias = m.bias;
    const SparseVector x = RandomVector(rng, d);
    if (decision_value(m, augment_test(x, layout)) == decision_value(general, x)) ++exact;
  }
  return {exact == 100, Fmt("%.0f/100 bit-exact", exact)};
}

Outcome GradientCheck() {
  Rng rng(1004);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = 1 + rng.below(10);
    std::vector<TrainingExample> examples;
    const std::size_t n = 1 + rng.below(20);
    for (std::size_t i = 0; i < n; ++i) {
      examples.push_back({RandomVector(rng, dim), rng.bernoulli(0.5) ? 1 : 0,
                          0.2 + 2 * rng.uniform()});
    }
    const double l2 = rng.uniform() * 0.5;
    LinearModel m;
    for (std::size_t j = 0; j < dim; ++j) m.weights.push_back(rng.uniform() * 2 - 1);
    m.bias = rng.uniform() - 0.5;
    const LossGradient g = loss_and_gradient(m, examples, l2);
    const auto f = [&](const std::vector<double>& theta) {
      LinearModel p;
      p.weights.assign(theta.begin(), theta.end() - 1);
      p.bias = theta.back();
      return loss_and_gradient(p, examples, l2).loss;
    };
    std::vector<double> theta = m.weights;
    theta.push_back(m.bias);
    std::vector<double> analytic = g.weight_grad;
    analytic.push_back(g.bias_grad);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double numeric = reference::central_difference(f, theta, i, 1e-5);
      const double scale = std::max({std::fabs(numeric), std::fabs(analytic[i]), 1e-8});
      worst = std::max(worst, std::fabs(numeric - analytic[i]) / scale);
    }
  }
  return {worst <= 1e-5, Fmt("max relative error %.3g over 50 instances", worst)};
}

struct MethodMeans {
  double f1 = 0;
  double fair = 0;
};

// Mean F1-macro and Fair (percent) per method over 5 corpora x 3 runs.
struct BiasExperiment {
  MethodMeans lr, da, blind;
};

BiasExperiment RunBiasExperiment() {
  const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  BiasExperiment out;
  int count = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthSpec spec;
    spec.n_docs = 20000;
    spec.bias = 0.8;
    spec.group_ratio = 0.4;
    spec.label_ratio = 0.7;
    spec.seed = seed;
    const auto docs = generate(spec);
    LexiconSet lexicons;
    lexicons.emplace(spec.language, synth_lexicon(spec));

    ExperimentConfig config;
    config.language = spec.language;
    config.methods = {Method{}, Method::parse("feda"), Method::parse("blind")};
    config.lexicons[spec.language] = "synthetic";
    config.runs = 3;
    config.threads = threads;
    for (const auto& r : run_all(config, docs, lexicons)) {
      MethodMeans& m = r.method == "regular" ? out.lr : r.method == "feda" ? out.da : out.blind;
      m.f1 += 100 * r.eval.f1_macro;
      m.fair += 100 * r.eval.fair;
    }
    count += 3;
  }
  for (MethodMeans* m : {&out.lr, &out.da, &out.blind}) {
    m->f1 /= count;
    m->fair /= count;
  }
  return out;
}

Outcome BiasReduction(const BiasExperiment& e) {
  const bool fair_ok = e.da.fair <= 0.75 * e.lr.fair;
  const bool f1_ok = e.da.f1 >= e.lr.f1 - 2.0;
  return {fair_ok && f1_ok, Fmt("Fair LR %.2f -> LR-DA %.2f; F1 LR %.2f -> LR-DA %.2f", e.lr.fair,
                                e.da.fair, e.lr.f1, e.da.f1)};
}

Outcome BlindSoundness(const BiasExperiment& e) {
  const Lexicon lex = synth_lexicon(SynthSpec{});
  std::vector<std::string> pool(lex.tokens().begin(), lex.tokens().end());
  for (int k = 0; k < 10; ++k) pool.push_back(synth_neutral_token(k));
  pool.push_back(std::string(kIdentToken));
  Rng rng(1006);
  long leaked = 0;
  for (int t = 0; t < 100000; ++t) {
    std::vector<std::string> tokens(rng.below(30));
    for (auto& tok : tokens) tok = pool[rng.below(pool.size())];
    leaked += count_sensitive(blind_mask(tokens, lex), lex);
  }
  const bool fair_ok = e.blind.fair <= e.lr.fair;
  return {leaked == 0 && fair_ok,
          Fmt("%.0f lexicon tokens left in 1e5 documents; Fair LR %.2f vs LR-Blind %.2f",
              static_cast<double>(leaked), e.lr.fair, e.blind.fair)};
}

Outcome InstanceWeightSanity() {
  SynthSpec spec;
  spec.n_docs = 20000;
  spec.bias = 0.0;
  spec.seed = 7;
  const auto docs = generate(spec);
  LexiconSet lexicons;
  lexicons.emplace(spec.language, synth_lexicon(spec));
  const WeightTable::Options options;
  const WeightTable table = WeightTable::fit(docs, lexicons, options);
  double sum = 0, lo = 1e300, hi = -1e300;
  for (const auto& d : docs) {
    const double w = instance_weight(d, table, lexicons);
    sum += w;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  const double mean = sum / static_cast<double>(docs.size());
  const bool ok = mean >= 0.9 && mean <= 1.1 && lo >= options.clip_low && hi <= options.clip_high;
  return {ok, Fmt("mean weight %.4f, range [%.4f, %.4f]", mean, lo, hi)};
}

int Shell(const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); }

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Determinism() {
  const fs::path dir = fs::temp_directory_path() / "fairda_acceptance_determinism";
  fs::remove_all(dir);
  const std::string cli = FAIRDA_CLI_PATH;
  const std::string synth_dir = (dir / "synth").string();
  if (Shell(cli + " synth --out " + synth_dir + " --set n_docs=3000 --set bias=0.8 --set seed=3") !=
      0) {
    return {false, "synth command failed"};
  }
  const std::string run = cli + " run --corpus " + synth_dir + "/corpus.jsonl --output " +
                          (dir / "out").string() +
                          " --methods regular,feda,blind,instance_weight --set lexicons.en=" +
                          synth_dir + "/lexicon.en.txt --threads 4";
  const std::vector<std::string> files = {"runs.json", "report.md", "report.csv", "report.json"};
  std::vector<std::string> first;
  if (Shell(run) != 0) return {false, "first run failed"};
  for (const auto& f : files) first.push_back(Slurp(dir / "out" / f));
  fs::remove_all(dir / "out");
  if (Shell(run) != 0) return {false, "second run failed"};
  int same = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string second = Slurp(dir / "out" / files[i]);
    if (!second.empty() && second == first[i]) ++same;
  }
  fs::remove_all(dir);
  return {same == static_cast<int>(files.size()),
          Fmt("%.0f/%.0f report files byte-identical", same, static_cast<double>(files.size()))};
}

Outcome TfidfEquivalence() {
  Rng rng(1009);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "<ident>"};
  VocabularyOptions options;
  options.max_features = 5;
  options.min_doc_freq = 2;
  int matched = 0, trials = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<std::string>> docs(1 + rng.below(20));
    for (auto& doc : docs) {
      doc.resize(rng.below(12));
      for (auto& w : doc) w = words[rng.below(words.size())];
    }
    const auto ref = reference::fit_tfidf(docs, 1, 3, 5, 2);
    Vocabulary vocab;
    try {
      vocab = Vocabulary::fit_tokens(docs, options);
    } catch (const Error&) {
      // Nothing survives min-df; the reference must agree.
      ++trials;
      if (ref.index.empty()) ++matched;
      continue;
    }
    bool ok = vocab.size() == ref.index.size();
    for (const auto& doc : docs) {
      if (!ok) break;
      ok = vocab.transform(doc).to_dense() == reference::transform_tfidf(ref, doc, 1, 3);
    }
    ++trials;
    if (ok) ++matched;
  }
  return {matched == trials, Fmt("%.0f/%.0f corpora match exactly", matched, trials)};
}

void Report(int id, const char* name, const std::function<Outcome()>& check, int& failures) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s  %d. %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

}  // namespace
}  // namespace fairda

int main() {
  using namespace fairda;
  int failures = 0;
  Report(1, "metric oracle equivalence", MetricOracle, failures);
  Report(2, "FPED hand example", FpedExample, failures);
  Report(3, "FEDA test-time equivalence", FedaEquivalence, failures);
  Report(4, "gradient correctness", GradientCheck, failures);
  BiasExperiment experiment;
  bool have_experiment = false;
  const auto run_experiment_once = [&] {
    if (!have_experiment) {
      experiment = RunBiasExperiment();
      have_experiment = true;
    }
  };
  Report(5, "bias reduction", [&] { run_experiment_once(); return BiasReduction(experiment); },
         failures);
  Report(6, "blind soundness", [&] { run_experiment_once(); return BlindSoundness(experiment); },
         failures);
  Report(7, "instance-weight sanity", InstanceWeightSanity, failures);
  Report(8, "determinism", Determinism, failures);
  Report(9, "TF-IDF reference equivalence", TfidfEquivalence, failures);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
