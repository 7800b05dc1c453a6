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

#include "fairda/model.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "fairda/error.h"
#include "fairda/hash.h"
#include "fairda/random.h"
#include "json_keys.h"

namespace fairda {
namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

// Unclamped logistic, used inside the optimizer.
double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_loss(double z, int label) { return softplus(z) - (label == 1 ? z : 0.0); }

void check_examples(std::span<const TrainingExample> examples, std::size_t dim,
                    const char* which) {
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    if (ex.features.dim() != dim) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(which) + " example " + std::to_string(i) +
                      " has dim " + std::to_string(ex.features.dim()) +
                      ", expected " + std::to_string(dim));
    }
    if (ex.label != 0 && ex.label != 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(which) + " example " + std::to_string(i) +
                      " has a non-binary label");
    }
    if (!(ex.weight > 0.0) || !std::isfinite(ex.weight)) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(which) + " example " + std::to_string(i) +
                      " has a non-positive weight");
    }
  }
}

double objective(const LinearModel& model, std::span<const TrainingExample> examples,
                 double l2) {
  double data = 0.0;
  for (const auto& ex : examples) {
    data += ex.weight * log_loss(decision_value(model, ex.features), ex.label);
  }
  data /= static_cast<double>(examples.size());
  double norm_sq = 0.0;
  for (double w : model.weights) norm_sq += w * w;
  return data + 0.5 * l2 * norm_sq;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorKind::kInvalidArgument, "learning_rate must be finite and >= 0");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) {
    throw Error(ErrorKind::kInvalidArgument, "l2 must be finite and >= 0");
  }
  if (epochs < 1) throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 1");
  if (batch_size < 1) throw Error(ErrorKind::kInvalidArgument, "batch_size must be >= 1");
  if (!(tolerance >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "tolerance must be >= 0");
  if (patience < 1) throw Error(ErrorKind::kInvalidArgument, "patience must be >= 1");
}

json TrainConfig::to_json() const {
  return json{{"learning_rate", learning_rate}, {"l2", l2},
              {"epochs", epochs},               {"batch_size", batch_size},
              {"seed", seed},                   {"tolerance", tolerance},
              {"patience", patience}};
}

TrainConfig TrainConfig::from_json(const json& j) {
  TrainConfig c;
  detail::reject_unknown_keys(j, c.to_json(), ErrorKind::kConfig);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.l2 = j.value("l2", c.l2);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.seed = j.value("seed", c.seed);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.patience = j.value("patience", c.patience);
  c.validate();
  return c;
}

json LinearModel::to_json() const {
  return json{{"format", "fairda.linear_model"}, {"version", kModelFormatVersion},
              {"dim", dim()},                    {"bias", bias},
              {"weights", weights},              {"config_hash", config_hash}};
}

LinearModel LinearModel::from_json(const json& j) {
  try {
    if (j.at("format") != "fairda.linear_model") {
      throw Error(ErrorKind::kParse, "not a model file");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorKind::kParse, "unsupported model version " + j.at("version").dump());
    }
    LinearModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.config_hash = j.value("config_hash", "");
    if (m.weights.size() != j.at("dim").get<std::size_t>()) {
      throw Error(ErrorKind::kParse, "model dim does not match weight count");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed model: ") + e.what());
  }
}

void LinearModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << to_json().dump() << '\n';
}

LinearModel LinearModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed model: ") + e.what());
  }
  return from_json(j);
}

double sigmoid(double z) {
  constexpr double kLow = std::numeric_limits<double>::min();
  constexpr double kHigh = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  const double p = logistic(z);
  if (p < kLow) return kLow;
  if (p > kHigh) return kHigh;
  return p;
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double decision_value(const LinearModel& model, const SparseVector& x) {
  return x.dot(model.weights) + model.bias;
}

double predict_proba(const LinearModel& model, const SparseVector& x) {
  return sigmoid(decision_value(model, x));
}

int predict(const LinearModel& model, const SparseVector& x, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "threshold must lie in (0, 1)");
  }
  return predict_proba(model, x) >= threshold ? 1 : 0;
}

LossGradient loss_and_gradient(const LinearModel& model,
                               std::span<const TrainingExample> examples, double l2) {
  if (examples.empty()) throw Error(ErrorKind::kInvalidArgument, "no examples");
  check_examples(examples, model.dim(), "training");
  LossGradient out;
  out.weight_grad.assign(model.dim(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(examples.size());
  for (const auto& ex : examples) {
    const double z = decision_value(model, ex.features);
    out.loss += ex.weight * log_loss(z, ex.label);
    const double g = ex.weight * (logistic(z) - ex.label) * inv_n;
    const auto& idx = ex.features.indices();
    const auto& val = ex.features.values();
    for (std::size_t k = 0; k < idx.size(); ++k) out.weight_grad[idx[k]] += g * val[k];
    out.bias_grad += g;
  }
  out.loss *= inv_n;
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < model.dim(); ++j) {
    norm_sq += model.weights[j] * model.weights[j];
    out.weight_grad[j] += l2 * model.weights[j];
  }
  out.loss += 0.5 * l2 * norm_sq;
  return out;
}

double mean_log_loss(const LinearModel& model, std::span<const TrainingExample> examples) {
  if (examples.empty()) throw Error(ErrorKind::kInvalidArgument, "no examples");
  double sum = 0.0;
  for (const auto& ex : examples) sum += log_loss(decision_value(model, ex.features), ex.label);
  return sum / static_cast<double>(examples.size());
}

TrainResult train_detailed(std::span<const TrainingExample> examples,
                           const TrainConfig& config,
                           std::span<const TrainingExample> dev) {
  config.validate();
  if (examples.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot train on an empty example set");
  }
  const std::size_t dim = examples.front().features.dim();
  check_examples(examples, dim, "training");
  check_examples(dev, dim, "dev");

  TrainResult result;
  LinearModel& model = result.model;
  model.weights.assign(dim, 0.0);
  model.config_hash = to_hex(fnv1a64(config.to_json().dump()));

  LinearModel best = model;
  double best_dev = std::numeric_limits<double>::infinity();
  double reference_dev = best_dev;
  int stale = 0;

  std::vector<double> grad(dim, 0.0);
  std::vector<std::size_t> order(examples.size());
  const double lr = config.learning_rate;
  const double decay = config.learning_rate * config.l2;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(std::span(order));

    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      double bias_grad = 0.0;
      for (std::size_t pos = start; pos < end; ++pos) {
        const TrainingExample& ex = examples[order[pos]];
        const double z = decision_value(model, ex.features);
        const double g = ex.weight * (logistic(z) - ex.label) * inv_batch;
        const auto& idx = ex.features.indices();
        const auto& val = ex.features.values();
        for (std::size_t k = 0; k < idx.size(); ++k) grad[idx[k]] += g * val[k];
        bias_grad += g;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        model.weights[j] -= lr * grad[j] + decay * model.weights[j];
        grad[j] = 0.0;
      }
      model.bias -= lr * bias_grad;
    }

    const double loss = objective(model, examples, config.l2);
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::kNumerical,
                  "training loss became non-finite at epoch " + std::to_string(epoch));
    }
    result.train_loss.push_back(loss);

    if (dev.empty()) {
      result.selected_epoch = epoch;
      continue;
    }
    const double dev_loss = mean_log_loss(model, dev);
    if (!std::isfinite(dev_loss)) {
      throw Error(ErrorKind::kNumerical,
                  "dev loss became non-finite at epoch " + std::to_string(epoch));
    }
    result.dev_loss.push_back(dev_loss);
    if (dev_loss < best_dev) {
      best_dev = dev_loss;
      best = model;
      result.selected_epoch = epoch;
    }
    if (dev_loss < reference_dev - config.tolerance) {
      reference_dev = dev_loss;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  if (!dev.empty()) model = std::move(best);
  return result;
}

}  // namespace fairda
