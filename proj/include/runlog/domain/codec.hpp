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

#include <string>

#include "json.hpp"
#include "runlog/domain/types.hpp"

// JSON representation shared by the store, the export format and the REST API.
// Keys are snake_case; absent optionals are omitted. Decoders throw
// Error(kInvalid) naming the offending field.
namespace runlog {

using Json = nlohmann::json;

void to_json(Json& j, const Tag& v);
void from_json(const Json& j, Tag& v);
void to_json(Json& j, const EntityRef& v);
void from_json(const Json& j, EntityRef& v);
void to_json(Json& j, const ActorRef& v);
void from_json(const Json& j, ActorRef& v);
void to_json(Json& j, const LhcFill& v);
void from_json(const Json& j, LhcFill& v);
void to_json(Json& j, const Run& v);
void from_json(const Json& j, Run& v);
void to_json(Json& j, const ReconstructionPass& v);
void from_json(const Json& j, ReconstructionPass& v);
void to_json(Json& j, const Attachment& v);
void from_json(const Json& j, Attachment& v);
void to_json(Json& j, const Revision& v);
void from_json(const Json& j, Revision& v);
void to_json(Json& j, const LogEntry& v);
void from_json(const Json& j, LogEntry& v);
void to_json(Json& j, const Template& v);
void from_json(const Json& j, Template& v);

// Sorted keys, no insignificant whitespace.
std::string canonical(const Json& j);

namespace codec {

// Field accessors for decoding untrusted documents.
const Json& required(const Json& obj, const char* key);
std::string get_string(const Json& obj, const char* key);
std::optional<std::string> get_optional_string(const Json& obj, const char* key);
std::int64_t get_int(const Json& obj, const char* key);
std::optional<std::int64_t> get_optional_int(const Json& obj, const char* key);
Timestamp get_timestamp(const Json& obj, const char* key);
std::optional<Timestamp> get_optional_timestamp(const Json& obj, const char* key);
Configuration get_configuration(const Json& obj, const char* key);
TagSet get_tags(const Json& obj, const char* key);

template <typename E>
E get_enum(const Json& obj, const char* key) {
  return parse_enum<E>(get_string(obj, key));
}

}  // namespace codec

}  // namespace runlog
