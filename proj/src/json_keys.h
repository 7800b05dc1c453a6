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

#ifndef FAIRDA_SRC_JSON_KEYS_H_
#define FAIRDA_SRC_JSON_KEYS_H_

#include <string>

#include "json.hpp"

#include "fairda/error.h"

namespace fairda::detail {

// Rejects keys of `j` that do not appear in `reference`. Recurses into
// members whose reference value is a non-empty object.
inline void reject_unknown_keys(const nlohmann::json& j, const nlohmann::json& reference,
                                ErrorKind kind, const std::string& prefix = "") {
  if (!j.is_object()) throw Error(kind, "'" + (prefix.empty() ? "value" : prefix) + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    const auto it = reference.find(key);
    if (it == reference.end()) throw Error(kind, "unknown field '" + path + "'");
    if (it->is_object() && !it->empty() && value.is_object()) {
      reject_unknown_keys(value, *it, kind, path);
    }
  }
}

}  // namespace fairda::detail

#endif  // FAIRDA_SRC_JSON_KEYS_H_
