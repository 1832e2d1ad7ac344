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

#include "runlog/domain/errors.hpp"

namespace runlog {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kConflict: return "Conflict";
    case ErrorCode::kInvalid: return "Invalid";
    case ErrorCode::kInvalidTransition: return "InvalidTransition";
    case ErrorCode::kInvalidTimestamps: return "InvalidTimestamps";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kUnknownReference: return "UnknownReference";
    case ErrorCode::kBrokenLineage: return "BrokenLineage";
    case ErrorCode::kCorruptLineage: return "CorruptLineage";
    case ErrorCode::kInvalidQuery: return "InvalidQuery";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnknownDigest: return "UnknownDigest";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kConnectionFailed: return "ConnectionFailed";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Internal";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kInternal); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (to_string(code) == name) return code;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, const std::string& message, nlohmann::json detail)
    : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

void fail(ErrorCode code, const std::string& message, nlohmann::json detail) {
  throw Error(code, message, std::move(detail));
}

}  // namespace runlog
