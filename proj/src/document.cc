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

#include "fairda/document.h"

#include <algorithm>

#include "fairda/error.h"

namespace fairda {

GroupRegistry::GroupRegistry(std::vector<std::string> names)
    : names_(std::move(names)) {
  if (names_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "group registry is empty");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw Error(ErrorKind::kInvalidArgument, "group names must be nonempty");
    }
    if (std::find(names_.begin(), names_.begin() + static_cast<long>(i),
                  names_[i]) != names_.begin() + static_cast<long>(i)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate group name '" + names_[i] + "'");
    }
  }
}

const std::string& GroupRegistry::name(int index) const {
  if (index < 0 || index >= size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "group index " + std::to_string(index) + " out of range");
  }
  return names_[static_cast<std::size_t>(index)];
}

std::optional<int> GroupRegistry::find(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int GroupRegistry::index_of(std::string_view name) const {
  if (const auto index = find(name)) return *index;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown group '" + std::string(name) +
                  "'; allowed values: " + allowed_values());
}

std::string GroupRegistry::allowed_values() const {
  std::string out;
  for (const auto& name : names_) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace fairda
