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

#ifndef FAIRDA_ERROR_H_
#define FAIRDA_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fairda {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kIo,
  kNumerical,
  kUndefinedMetric,
  kConfig,
};

std::string_view error_kind_name(ErrorKind kind);

// Base exception for every failure raised by the library. The kind is what
// the CLI reports in its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by corpus readers; carries the 1-based line of the offending record
// and the field that failed validation.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& detail);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace fairda

#endif  // FAIRDA_ERROR_H_
