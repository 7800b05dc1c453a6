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

#include "fairda/adaptation.h"

#include <string>

#include "fairda/error.h"

namespace fairda {
namespace {

void check_base_dim(const SparseVector& x, const FedaLayout& layout) {
  if (x.dim() != layout.base_dim()) {
    throw Error(ErrorKind::kInvalidArgument,
                "feature dim " + std::to_string(x.dim()) +
                    " does not match layout base dim " +
                    std::to_string(layout.base_dim()));
  }
}

}  // namespace

FedaLayout::FedaLayout(std::size_t base_dim, int num_domains)
    : base_dim_(base_dim), num_domains_(num_domains) {
  if (num_domains < 1) {
    throw Error(ErrorKind::kInvalidArgument, "FEDA layout needs at least one domain");
  }
}

std::size_t FedaLayout::block_offset(int domain) const {
  if (domain < 0 || domain >= num_domains_) {
    throw Error(ErrorKind::kInvalidArgument,
                "domain " + std::to_string(domain) + " outside [0, " +
                    std::to_string(num_domains_) + ")");
  }
  return base_dim_ * (1 + static_cast<std::size_t>(domain));
}

SparseVector augment_train(const SparseVector& x, int domain,
                           const FedaLayout& layout) {
  check_base_dim(x, layout);
  const std::size_t offset = layout.block_offset(domain);
  SparseVectorBuilder out(layout.total_dim());
  out.reserve(2 * x.nnz());
  for (std::size_t k = 0; k < x.nnz(); ++k) out.push_back(x.indices()[k], x.values()[k]);
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    out.push_back(offset + x.indices()[k], x.values()[k]);
  }
  return std::move(out).build();
}

SparseVector augment_test(const SparseVector& x, const FedaLayout& layout) {
  check_base_dim(x, layout);
  SparseVectorBuilder out(layout.total_dim());
  out.reserve(x.nnz());
  for (std::size_t k = 0; k < x.nnz(); ++k) out.push_back(x.indices()[k], x.values()[k]);
  return std::move(out).build();
}

std::span<const double> general_weights(std::span<const double> weights,
                                        const FedaLayout& layout) {
  if (weights.size() != layout.total_dim()) {
    throw Error(ErrorKind::kInvalidArgument,
                "weight vector does not span the augmented layout");
  }
  return weights.first(layout.base_dim());
}

}  // namespace fairda
