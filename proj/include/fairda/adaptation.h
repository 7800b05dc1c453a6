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

#ifndef FAIRDA_ADAPTATION_H_
#define FAIRDA_ADAPTATION_H_

#include <cstddef>
#include <span>

#include "fairda/sparse_vector.h"

namespace fairda {

// Index layout of the augmented feature space: one general block followed by
// one block per domain, in group-registry order.
//
//   [ general | domain 0 | domain 1 | ... ]
//     [0, d)    [d, 2d)    [2d, 3d)
class FedaLayout {
 public:
  // Throws Error(kInvalidArgument) if num_domains < 1.
  FedaLayout(std::size_t base_dim, int num_domains);

  std::size_t base_dim() const { return base_dim_; }
  int num_domains() const { return num_domains_; }
  std::size_t total_dim() const {
    return base_dim_ * (1 + static_cast<std::size_t>(num_domains_));
  }
  // Start of the block owned by `domain`.
  std::size_t block_offset(int domain) const;

 private:
  std::size_t base_dim_;
  int num_domains_;
};

// Training-time encoding: general block = x, the document's own domain block
// = x, every other domain block empty.
SparseVector augment_train(const SparseVector& x, int domain,
                           const FedaLayout& layout);

// Test-time encoding: general block only.
SparseVector augment_test(const SparseVector& x, const FedaLayout& layout);

// The general-block slice of augmented weights.
std::span<const double> general_weights(std::span<const double> weights,
                                        const FedaLayout& layout);

}  // namespace fairda

#endif  // FAIRDA_ADAPTATION_H_
