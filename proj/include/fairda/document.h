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

#ifndef FAIRDA_DOCUMENT_H_
#define FAIRDA_DOCUMENT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairda {

// One labeled, group-annotated text instance.
struct Document {
  std::string id;
  std::string raw_text;
  // Empty until tokenized.
  std::vector<std::string> tokens;
  // Binary class in {0, 1}.
  int label = 0;
  // Index into the group registry.
  int group = 0;
  std::string language;
};

// Ordered list of demographic group names. A group's position is its domain
// index everywhere else (feature blocks, report keys).
class GroupRegistry {
 public:
  GroupRegistry() : names_{"male", "female"} {}
  explicit GroupRegistry(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int index) const;

  std::optional<int> find(std::string_view name) const;
  // Throws Error(kInvalidArgument) listing the allowed values.
  int index_of(std::string_view name) const;

  // Comma separated, for error messages.
  std::string allowed_values() const;

 private:
  std::vector<std::string> names_;
};

}  // namespace fairda

#endif  // FAIRDA_DOCUMENT_H_
