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

#ifndef FAIRDA_MODEL_H_
#define FAIRDA_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fairda/sparse_vector.h"
#include "json.hpp"

namespace fairda {

struct TrainConfig {
  double learning_rate = 10.0;
  double l2 = 1e-5;
  int epochs = 50;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
  // Minimum dev-loss improvement that resets the patience counter.
  double tolerance = 1e-5;
  // Epochs without such an improvement before training stops. Only used when
  // a dev set is supplied.
  int patience = 3;

  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct TrainingExample {
  SparseVector features;
  int label = 0;
  // Instance weight, must be positive.
  double weight = 1.0;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  // Fingerprint of the TrainConfig that produced the model, if any.
  std::string config_hash;

  std::size_t dim() const { return weights.size(); }

  nlohmann::json to_json() const;
  static LinearModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static LinearModel load(const std::filesystem::path& path);
};

// Logistic function clamped to the open interval (0, 1): very negative
// inputs return the smallest normal double instead of underflowing to 0.
double sigmoid(double z);

// log(1 + exp(z)) without overflow.
double softplus(double z);

double decision_value(const LinearModel& model, const SparseVector& x);
double predict_proba(const LinearModel& model, const SparseVector& x);
// 1 iff predict_proba >= threshold. threshold must lie in (0, 1).
int predict(const LinearModel& model, const SparseVector& x, double threshold = 0.5);

// Objective: (1/n) * sum_i weight_i * logloss_i + (l2 / 2) * |w|^2.
// The bias is not regularized.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> weight_grad;
  double bias_grad = 0.0;
};

LossGradient loss_and_gradient(const LinearModel& model,
                               std::span<const TrainingExample> examples,
                               double l2);

// Unweighted, unregularized mean log-loss.
double mean_log_loss(const LinearModel& model,
                     std::span<const TrainingExample> examples);

struct TrainResult {
  LinearModel model;
  // Objective after each completed epoch.
  std::vector<double> train_loss;
  // Dev mean log-loss after each epoch; empty without a dev set.
  std::vector<double> dev_loss;
  // 1-based epoch whose parameters were returned.
  int selected_epoch = 0;
};

// Mini-batch gradient descent from all-zero parameters. Each epoch visits the
// examples in a permutation derived from (seed, epoch). With a dev set the
// parameters of the best dev-loss epoch are returned and training stops
// after `patience` epochs without a `tolerance` improvement.
//
// Throws Error(kInvalidArgument) on mismatched dimensions, labels or
// weights, and Error(kNumerical) naming the epoch if the loss stops being
// finite.
TrainResult train_detailed(std::span<const TrainingExample> examples,
                           const TrainConfig& config,
                           std::span<const TrainingExample> dev = {});

inline LinearModel train(std::span<const TrainingExample> examples,
                         const TrainConfig& config,
                         std::span<const TrainingExample> dev = {}) {
  return train_detailed(examples, config, dev).model;
}

}  // namespace fairda

#endif  // FAIRDA_MODEL_H_
