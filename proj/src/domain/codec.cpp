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

#include "runlog/domain/codec.hpp"

#include "runlog/domain/errors.hpp"

namespace runlog {

namespace codec {

namespace {

[[noreturn]] void bad_field(const char* key, const std::string& why) {
  fail(ErrorCode::kInvalid, std::string("field '") + key + "' " + why, {{"field", key}});
}

}  // namespace

const Json& required(const Json& obj, const char* key) {
  if (!obj.is_object()) fail(ErrorCode::kInvalid, "expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) bad_field(key, "is required");
  return *it;
}

std::string get_string(const Json& obj, const char* key) {
  const auto& v = required(obj, key);
  if (!v.is_string()) bad_field(key, "must be a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_string(obj, key);
}

std::int64_t get_int(const Json& obj, const char* key) {
  const auto& v = required(obj, key);
  if (!v.is_number_integer()) bad_field(key, "must be an integer");
  return v.get<std::int64_t>();
}

std::optional<std::int64_t> get_optional_int(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_int(obj, key);
}

Timestamp get_timestamp(const Json& obj, const char* key) {
  const auto text = get_string(obj, key);
  try {
    return parse_timestamp(text);
  } catch (const Error&) {
    bad_field(key, "must be an RFC 3339 timestamp");
  }
}

std::optional<Timestamp> get_optional_timestamp(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_timestamp(obj, key);
}

Configuration get_configuration(const Json& obj, const char* key) {
  Configuration out;
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return out;
  const auto& v = obj.at(key);
  if (!v.is_object()) bad_field(key, "must be an object of strings");
  for (const auto& [k, value] : v.items()) {
    if (!value.is_string()) bad_field(key, "must be an object of strings");
    out.emplace(k, value.get<std::string>());
  }
  return out;
}

TagSet get_tags(const Json& obj, const char* key) {
  TagSet out;
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return out;
  const auto& v = obj.at(key);
  if (!v.is_array()) bad_field(key, "must be an array of strings");
  for (const auto& item : v) {
    if (!item.is_string()) bad_field(key, "must be an array of strings");
    out.insert(Tag::make(item.get<std::string>()));
  }
  return out;
}

}  // namespace codec

using namespace codec;

namespace {

void put_optional(Json& j, const char* key, const std::optional<Timestamp>& ts) {
  if (ts) j[key] = format_timestamp(*ts);
}

Json tags_json(const TagSet& tags) {
  Json arr = Json::array();
  for (const auto& t : tags) arr.push_back(t.value());
  return arr;
}

}  // namespace

void to_json(Json& j, const Tag& v) { j = v.value(); }

void from_json(const Json& j, Tag& v) {
  if (!j.is_string()) fail(ErrorCode::kInvalid, "tag must be a string", {{"field", "tag"}});
  v = Tag::make(j.get<std::string>());
}

void to_json(Json& j, const EntityRef& v) {
  j = Json{{"kind", to_string(v.kind)}, {"id", v.id}};
}

void from_json(const Json& j, EntityRef& v) {
  v.kind = get_enum<EntityKind>(j, "kind");
  v.id = get_int(j, "id");
  if (v.id <= 0) fail(ErrorCode::kInvalid, "entity id must be positive", {{"field", "id"}});
}

void to_json(Json& j, const ActorRef& v) {
  j = Json{{"actor_id", v.actor_id}, {"role", to_string(v.role)}};
}

void from_json(const Json& j, ActorRef& v) {
  v.actor_id = get_string(j, "actor_id");
  v.role = get_enum<Role>(j, "role");
}

void to_json(Json& j, const LhcFill& v) {
  j = Json{{"fill_number", v.fill_number},
           {"beam_type", v.beam_type},
           {"created_at", format_timestamp(v.created_at)}};
  put_optional(j, "stable_beams_start", v.stable_beams_start);
  put_optional(j, "stable_beams_end", v.stable_beams_end);
}

void from_json(const Json& j, LhcFill& v) {
  v.fill_number = get_int(j, "fill_number");
  v.beam_type = get_optional_string(j, "beam_type").value_or("");
  v.created_at = get_timestamp(j, "created_at");
  v.stable_beams_start = get_optional_timestamp(j, "stable_beams_start");
  v.stable_beams_end = get_optional_timestamp(j, "stable_beams_end");
}

void to_json(Json& j, const Run& v) {
  j = Json{{"run_number", v.run_number},
           {"run_type", to_string(v.run_type)},
           {"state", to_string(v.state)},
           {"start_time", format_timestamp(v.start_time)},
           {"configuration", v.configuration},
           {"quality", to_string(v.quality)},
           {"tags", tags_json(v.tags)},
           {"data_set_id", v.data_set_id()}};
  put_optional(j, "end_time", v.end_time);
  if (v.fill_number) j["fill_number"] = *v.fill_number;
}

void from_json(const Json& j, Run& v) {
  v.run_number = get_int(j, "run_number");
  v.run_type = get_enum<RunType>(j, "run_type");
  v.state = get_enum<RunState>(j, "state");
  v.start_time = get_timestamp(j, "start_time");
  v.end_time = get_optional_timestamp(j, "end_time");
  v.fill_number = get_optional_int(j, "fill_number");
  v.configuration = get_configuration(j, "configuration");
  v.quality = get_enum<Quality>(j, "quality");
  v.tags = get_tags(j, "tags");
}

void to_json(Json& j, const ReconstructionPass& v) {
  j = Json{{"pass_id", v.pass_id},
           {"name", v.name},
           {"input", v.input},
           {"configuration", v.configuration},
           {"status", to_string(v.status)},
           {"created_at", format_timestamp(v.created_at)}};
}

void from_json(const Json& j, ReconstructionPass& v) {
  v.pass_id = get_int(j, "pass_id");
  v.name = get_string(j, "name");
  v.input = required(j, "input").get<EntityRef>();
  v.configuration = get_configuration(j, "configuration");
  v.status = get_enum<PassStatus>(j, "status");
  v.created_at = get_timestamp(j, "created_at");
}

void to_json(Json& j, const Attachment& v) {
  j = Json{{"digest", v.digest},
           {"filename", v.filename},
           {"media_type", v.media_type},
           {"size_bytes", v.size_bytes}};
}

void from_json(const Json& j, Attachment& v) {
  v.digest = get_string(j, "digest");
  if (!is_hex_digest(v.digest)) fail(ErrorCode::kInvalid, "digest must be 64 hex chars", {{"field", "digest"}});
  v.filename = get_string(j, "filename");
  v.media_type = get_string(j, "media_type");
  const auto size = get_int(j, "size_bytes");
  if (size < 0) fail(ErrorCode::kInvalid, "size_bytes must be non-negative", {{"field", "size_bytes"}});
  v.size_bytes = static_cast<std::uint64_t>(size);
}

void to_json(Json& j, const Revision& v) {
  j = Json{{"revision_index", v.revision_index},
           {"title", v.title},
           {"body", v.body},
           {"edited_by", v.edited_by},
           {"edited_at", format_timestamp(v.edited_at)}};
}

void from_json(const Json& j, Revision& v) {
  v.revision_index = get_int(j, "revision_index");
  v.title = get_string(j, "title");
  v.body = get_string(j, "body");
  v.edited_by = required(j, "edited_by").get<ActorRef>();
  v.edited_at = get_timestamp(j, "edited_at");
}

void to_json(Json& j, const LogEntry& v) {
  j = Json{{"log_id", v.log_id},
           {"title", v.title},
           {"body", v.body},
           {"author", v.author},
           {"origin", to_string(v.origin)},
           {"created_at", format_timestamp(v.created_at)},
           {"associations", v.associations},
           {"tags", tags_json(v.tags)},
           {"attachments", v.attachments},
           {"revisions", v.revisions}};
}

void from_json(const Json& j, LogEntry& v) {
  v.log_id = get_int(j, "log_id");
  v.title = get_string(j, "title");
  v.body = get_string(j, "body");
  v.author = required(j, "author").get<ActorRef>();
  v.origin = get_enum<Origin>(j, "origin");
  v.created_at = get_timestamp(j, "created_at");
  v.associations = j.value("associations", Json::array()).get<std::vector<EntityRef>>();
  v.tags = get_tags(j, "tags");
  v.attachments = j.value("attachments", Json::array()).get<std::vector<Attachment>>();
  v.revisions = j.value("revisions", Json::array()).get<std::vector<Revision>>();
}

void to_json(Json& j, const Template& v) {
  j = Json{{"template_id", v.template_id},
           {"template_name", v.name},
           {"title_pattern", v.title_pattern},
           {"body_pattern", v.body_pattern},
           {"required_fields", v.required_fields},
           {"default_tags", tags_json(v.default_tags)}};
}

void from_json(const Json& j, Template& v) {
  v.template_id = get_optional_int(j, "template_id").value_or(0);
  v.name = get_string(j, "template_name");
  v.title_pattern = get_string(j, "title_pattern");
  v.body_pattern = get_string(j, "body_pattern");
  v.required_fields.clear();
  if (j.contains("required_fields") && !j.at("required_fields").is_null()) {
    const auto& arr = j.at("required_fields");
    if (!arr.is_array()) fail(ErrorCode::kInvalid, "required_fields must be an array", {{"field", "required_fields"}});
    for (const auto& item : arr) {
      if (!item.is_string()) fail(ErrorCode::kInvalid, "required_fields must hold strings", {{"field", "required_fields"}});
      v.required_fields.insert(item.get<std::string>());
    }
  }
  v.default_tags = get_tags(j, "default_tags");
}

std::string canonical(const Json& j) { return j.dump(); }

}  // namespace runlog
