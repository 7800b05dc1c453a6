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

#include "fairda/error.h"

namespace fairda {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid_argument";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kIo:
      return "io";
    case ErrorKind::kNumerical:
      return "numerical";
    case ErrorKind::kUndefinedMetric:
      return "undefined_metric";
    case ErrorKind::kConfig:
      return "config";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, std::string field,
                       const std::string& detail)
    : Error(ErrorKind::kParse, "line " + std::to_string(line) + ", field '" +
                                   field + "': " + detail),
      line_(line),
      field_(std::move(field)) {}

}  // namespace fairda
