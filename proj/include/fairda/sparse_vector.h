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

#ifndef FAIRDA_SPARSE_VECTOR_H_
#define FAIRDA_SPARSE_VECTOR_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fairda {

// Sparse real vector with strictly increasing indices and no explicit zeros.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}

  // Validates the invariants; throws Error(kInvalidArgument) on violation.
  SparseVector(std::size_t dim, std::vector<std::size_t> indices,
               std::vector<double> values);

  // Sorts by index, sums duplicates and drops zeros.
  static SparseVector from_pairs(std::size_t dim,
                                 std::vector<std::pair<std::size_t, double>> pairs);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }

  // Value at `index`, 0 when not stored.
  double at(std::size_t index) const;

  // Accumulates in stored-index order, so the result depends only on the
  // nonzeros and the weights they touch.
  double dot(std::span<const double> dense) const;

  double l2_norm() const;

  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  friend class SparseVectorBuilder;

  std::size_t dim_ = 0;
  std::vector<std::size_t> indices_;
  std::vector<double> values_;
};

// Appends entries with increasing indices without re-validating each one.
class SparseVectorBuilder {
 public:
  explicit SparseVectorBuilder(std::size_t dim) { out_.dim_ = dim; }

  void reserve(std::size_t n) {
    out_.indices_.reserve(n);
    out_.values_.reserve(n);
  }
  // Caller guarantees index > previous index, index < dim and value != 0.
  void push_back(std::size_t index, double value) {
    out_.indices_.push_back(index);
    out_.values_.push_back(value);
  }
  SparseVector build() && { return std::move(out_); }

 private:
  SparseVector out_;
};

}  // namespace fairda

#endif  // FAIRDA_SPARSE_VECTOR_H_
