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

#include "fairda/sparse_vector.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairda/error.h"

namespace fairda {

SparseVector::SparseVector(std::size_t dim, std::vector<std::size_t> indices,
                           std::vector<double> values)
    : dim_(dim), indices_(std::move(indices)), values_(std::move(values)) {
  if (indices_.size() != values_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "sparse vector indices and values differ in length");
  }
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] >= dim_) {
      throw Error(ErrorKind::kInvalidArgument,
                  "sparse index " + std::to_string(indices_[k]) +
                      " out of range for dim " + std::to_string(dim_));
    }
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "sparse indices must be strictly increasing");
    }
    if (values_[k] == 0.0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "sparse vector stores an explicit zero");
    }
  }
}

SparseVector SparseVector::from_pairs(
    std::size_t dim, std::vector<std::pair<std::size_t, double>> pairs) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::size_t> indices;
  std::vector<double> values;
  for (std::size_t k = 0; k < pairs.size();) {
    const std::size_t index = pairs[k].first;
    double sum = 0.0;
    for (; k < pairs.size() && pairs[k].first == index; ++k) sum += pairs[k].second;
    if (sum != 0.0) {
      indices.push_back(index);
      values.push_back(sum);
    }
  }
  return SparseVector(dim, std::move(indices), std::move(values));
}

double SparseVector::at(std::size_t index) const {
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

double SparseVector::dot(std::span<const double> dense) const {
  if (dense.size() != dim_) {
    throw Error(ErrorKind::kInvalidArgument,
                "dimension mismatch: vector dim " + std::to_string(dim_) +
                    ", weights " + std::to_string(dense.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    sum += dense[indices_[k]] * values_[k];
  }
  return sum;
}

double SparseVector::l2_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim_, 0.0);
  for (std::size_t k = 0; k < indices_.size(); ++k) out[indices_[k]] = values_[k];
  return out;
}

}  // namespace fairda
