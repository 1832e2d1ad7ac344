/* Copyright 2026 The Runlog Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace runlog {

enum class ErrorCode {
  kNotFound,
  kConflict,
  kInvalid,
  kInvalidTransition,
  kInvalidTimestamps,
  kMissingField,
  kUnknownReference,
  kBrokenLineage,
  kCorruptLineage,
  kInvalidQuery,
  kTooLarge,
  kUnknownDigest,
  kParseError,
  kUnauthorized,
  kConnectionFailed,
  kInternal,
};

std::string_view to_string(ErrorCode code);
std::optional<ErrorCode> parse_error_code(std::string_view name);

// Every failure raised by the library. `detail` carries structured context
// (e.g. {"field": "shift"} for kMissingField, {"line": 12} for kParseError).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json detail = nlohmann::json::object());

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message,
                       nlohmann::json detail = nlohmann::json::object());

}  // namespace runlog
