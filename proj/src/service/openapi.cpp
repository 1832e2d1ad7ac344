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

#include <set>
#include <string>

#include "runlog/reports/reports.hpp"
#include "runlog/service/service.hpp"

namespace runlog::service {

namespace {

using Json = nlohmann::json;

Json ref(const std::string& name) { return {{"$ref", "#/components/schemas/" + name}}; }

Json object(Json properties, std::vector<std::string> required) {
  Json out{{"type", "object"}, {"properties", std::move(properties)}, {"additionalProperties", false}};
  if (!required.empty()) out["required"] = std::move(required);
  return out;
}

Json integer(std::int64_t minimum) { return {{"type", "integer"}, {"minimum", minimum}}; }

Json string() { return {{"type", "string"}}; }

Json timestamp() { return {{"type", "string"}, {"format", "date-time"}}; }

template <typename E>
Json enumeration() {
  Json values = Json::array();
  for (const auto v : all_values<E>()) values.push_back(std::string(to_string(v)));
  return {{"type", "string"}, {"enum", values}};
}

Json array_of(Json items) { return {{"type", "array"}, {"items", std::move(items)}}; }

Json page_of(const std::string& item) {
  return object({{"items", array_of(ref(item))},
                 {"total", integer(0)},
                 {"offset", integer(0)},
                 {"limit", integer(1)}},
                {"items", "total", "offset", "limit"});
}

Json audit_actions() {
  Json values = Json::array();
  for (int i = 0; i <= static_cast<int>(store::AuditAction::kCreateTemplate); ++i)
    values.push_back(std::string(store::to_string(static_cast<store::AuditAction>(i))));
  return {{"type", "string"}, {"enum", values}};
}

std::vector<std::string> path_param_names(const std::string& path_template) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while ((pos = path_template.find('{', pos)) != std::string::npos) {
    const auto end = path_template.find('}', pos);
    names.push_back(path_template.substr(pos + 1, end - pos - 1));
    pos = end;
  }
  return names;
}

bool numeric_param(const std::string& name) {
  const auto ends_with = [&](std::string_view s) {
    return name.size() >= s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0;
  };
  return ends_with("Number") || ends_with("Id");
}

Json operation(const Route& route) {
  Json op{{"operationId", route.operation_id}, {"summary", route.summary}};
  Json params = Json::array();
  for (const auto& name : path_param_names(route.path_template)) {
    params.push_back({{"name", name},
                      {"in", "path"},
                      {"required", true},
                      {"schema", numeric_param(name) ? integer(1) : string()}});
  }
  for (const auto& q : route.query_params) {
    Json schema{{"type", q.type}};
    if (!q.format.empty()) schema["format"] = q.format;
    params.push_back(
        {{"name", q.name}, {"in", "query"}, {"required", false}, {"description", q.description}, {"schema", schema}});
  }
  if (!params.empty()) op["parameters"] = params;

  if (!route.request_schema.empty()) {
    op["requestBody"] = {{"required", true},
                         {"content", {{route.request_content_type, {{"schema", ref(route.request_schema)}}}}}};
  }

  Json responses = Json::object();
  for (const auto& r : route.responses) {
    auto& entry = responses[std::to_string(r.status)];
    entry["description"] = r.description;
    if (!r.schema.empty()) entry["content"][r.content_type] = {{"schema", ref(r.schema)}};
  }
  responses["4XX"] = {{"description", "Client error"},
                      {"content", {{"application/json", {{"schema", ref("ErrorEnvelope")}}}}}};
  responses["5XX"] = {{"description", "Server error"},
                      {"content", {{"application/json", {{"schema", ref("ErrorEnvelope")}}}}}};
  op["responses"] = responses;
  op["security"] = route.requires_auth ? Json::array({{{"bearerAuth", Json::array()}}}) : Json::array();
  return op;
}

}  // namespace

Json component_schemas() {
  Json s = Json::object();
  const Json tags = array_of({{"type", "string"}, {"pattern", "^[a-z0-9][a-z0-9._-]{0,63}$"}});
  const Json configuration = {{"type", "object"}, {"additionalProperties", string()}};

  s["EntityRef"] = object({{"kind", enumeration<EntityKind>()}, {"id", integer(1)}}, {"kind", "id"});
  s["ActorRef"] = object({{"actor_id", string()}, {"role", enumeration<Role>()}}, {"actor_id", "role"});
  s["Fill"] = object({{"fill_number", integer(1)},
                      {"beam_type", string()},
                      {"created_at", timestamp()},
                      {"stable_beams_start", timestamp()},
                      {"stable_beams_end", timestamp()}},
                     {"fill_number", "beam_type", "created_at"});
  s["Run"] = object({{"run_number", integer(1)},
                     {"run_type", enumeration<RunType>()},
                     {"state", enumeration<RunState>()},
                     {"start_time", timestamp()},
                     {"end_time", timestamp()},
                     {"fill_number", integer(1)},
                     {"configuration", configuration},
                     {"quality", enumeration<Quality>()},
                     {"tags", tags},
                     {"data_set_id", {{"type", "string"}, {"pattern", "^run-[0-9]+$"}}}},
                    {"run_number", "run_type", "state", "start_time", "configuration", "quality", "tags",
                     "data_set_id"});
  s["Pass"] = object({{"pass_id", integer(1)},
                      {"name", string()},
                      {"input", ref("EntityRef")},
                      {"configuration", configuration},
                      {"status", enumeration<PassStatus>()},
                      {"created_at", timestamp()}},
                     {"pass_id", "name", "input", "configuration", "status", "created_at"});
  s["Attachment"] = object({{"digest", {{"type", "string"}, {"pattern", "^[0-9a-f]{64}$"}}},
                            {"filename", string()},
                            {"media_type", string()},
                            {"size_bytes", integer(0)}},
                           {"digest", "filename", "media_type", "size_bytes"});
  s["Revision"] = object({{"revision_index", integer(0)},
                          {"title", string()},
                          {"body", string()},
                          {"edited_by", ref("ActorRef")},
                          {"edited_at", timestamp()}},
                         {"revision_index", "title", "body", "edited_by", "edited_at"});
  s["LogEntry"] = object({{"log_id", integer(1)},
                          {"title", string()},
                          {"body", string()},
                          {"author", ref("ActorRef")},
                          {"origin", enumeration<Origin>()},
                          {"created_at", timestamp()},
                          {"associations", array_of(ref("EntityRef"))},
                          {"tags", tags},
                          {"attachments", array_of(ref("Attachment"))},
                          {"revisions", array_of(ref("Revision"))}},
                         {"log_id", "title", "body", "author", "origin", "created_at", "associations", "tags",
                          "attachments", "revisions"});
  s["Template"] = object({{"template_id", integer(1)},
                          {"template_name", string()},
                          {"title_pattern", string()},
                          {"body_pattern", string()},
                          {"required_fields", array_of(string())},
                          {"default_tags", tags}},
                         {"template_id", "template_name", "title_pattern", "body_pattern", "required_fields",
                          "default_tags"});
  s["AuditRecord"] = object({{"seq", integer(1)},
                             {"timestamp", timestamp()},
                             {"actor", ref("ActorRef")},
                             {"action", audit_actions()},
                             {"target", ref("EntityRef")},
                             {"payload_digest", {{"type", "string"}, {"pattern", "^[0-9a-f]{64}$"}}}},
                            {"seq", "timestamp", "actor", "action", "target", "payload_digest"});

  s["FillPage"] = page_of("Fill");
  s["RunPage"] = page_of("Run");
  s["PassPage"] = page_of("Pass");
  s["LogPage"] = page_of("LogEntry");
  s["TemplatePage"] = page_of("Template");
  s["AuditPage"] = page_of("AuditRecord");

  s["Lineage"] = object({{"pass_id", integer(1)}, {"chain", {{"type", "array"}, {"items", ref("EntityRef")}, {"minItems", 2}}}},
                        {"pass_id", "chain"});
  s["Revisions"] = object({{"log_id", integer(1)}, {"revisions", array_of(ref("Revision"))}}, {"log_id", "revisions"});
  s["Health"] = object({{"status", {{"type", "string"}, {"enum", {"ok", "degraded"}}}},
                        {"version", string()},
                        {"store_reachable", {{"type", "boolean"}}},
                        {"build", object({{"compiler", string()}, {"cxx_standard", integer(0)}},
                                         {"compiler", "cxx_standard"})}},
                       {"status", "version", "store_reachable", "build"});

  Json buckets = Json::array();
  for (const auto label : reports::bucket_labels()) buckets.push_back(std::string(label));
  s["OverviewReport"] = object(
      {{"time_range", object({{"from", timestamp()}, {"to", timestamp()}}, {"from", "to"})},
       {"fill_count", integer(0)},
       {"run_count", integer(0)},
       {"log_count", integer(0)},
       {"pass_count", integer(0)},
       {"mean_runs_per_fill",
        {{"type", "number"},
         {"minimum", 0},
         {"description", "Runs with a fill divided by the number of distinct fills having at least one run; 0 "
                         "when no fill has runs."}}},
       {"runs_with_fill", integer(0)},
       {"fills_with_runs", integer(0)},
       {"runs_without_fill", integer(0)},
       {"duration_histogram",
        {{"type", "array"},
         {"minItems", static_cast<int>(reports::kBucketCount)},
         {"maxItems", static_cast<int>(reports::kBucketCount)},
         {"items", object({{"bucket", {{"type", "string"}, {"enum", buckets}}}, {"count", integer(0)}},
                          {"bucket", "count"})}}},
       {"tag_frequency", {{"type", "object"}, {"additionalProperties", integer(1)}}}},
      {"time_range", "fill_count", "run_count", "log_count", "pass_count", "mean_runs_per_fill", "runs_with_fill",
       "fills_with_runs", "runs_without_fill", "duration_histogram", "tag_frequency"});
  s["RunsPerFill"] = object(
      {{"rows", array_of(object({{"fill_number", integer(1)}, {"run_count", integer(1)}}, {"fill_number", "run_count"}))}},
      {"rows"});
  s["ErrorEnvelope"] = object({{"code", {{"type", "string"},
                                         {"enum", {"NOT_FOUND", "CONFLICT", "INVALID", "UNAUTHORIZED", "TOO_LARGE",
                                                   "INTERNAL"}}}},
                               {"message", string()},
                               {"detail", {{"type", "object"}}}},
                              {"code", "message"});
  s["OpenApiDocument"] = {{"type", "object"}};
  s["Binary"] = {{"type", "string"}, {"format", "binary"}};
  s["Text"] = string();

  s["NewFill"] = object({{"fill_number", integer(1)},
                         {"beam_type", string()},
                         {"stable_beams_start", timestamp()},
                         {"stable_beams_end", timestamp()},
                         {"created_at", timestamp()}},
                        {"fill_number"});
  s["NewRun"] = object({{"run_type", enumeration<RunType>()},
                        {"start_time", timestamp()},
                        {"fill_number", integer(1)},
                        {"configuration", configuration},
                        {"tags", tags}},
                       {"run_type"});
  s["RunPatch"] = {{"type", "object"},
                   {"properties",
                    {{"end", object({{"end_time", timestamp()}}, {})}, {"quality", enumeration<Quality>()}}},
                   {"additionalProperties", false},
                   {"minProperties", 1},
                   {"maxProperties", 1}};
  s["TagRequest"] = object({{"tag", string()}}, {"tag"});
  s["NewPass"] = object({{"name", string()},
                         {"input", ref("EntityRef")},
                         {"configuration", configuration},
                         {"created_at", timestamp()}},
                        {"name", "input"});
  s["PassPatch"] = object({{"status", enumeration<PassStatus>()}}, {"status"});
  s["NewLog"] = {{"type", "object"},
                 {"description", "Either title (and optional body) or template_name with values."},
                 {"properties",
                  {{"title", string()},
                   {"body", string()},
                   {"template_name", string()},
                   {"values", {{"type", "object"}, {"additionalProperties", string()}}},
                   {"origin", enumeration<Origin>()},
                   {"associations", array_of(ref("EntityRef"))},
                   {"tags", tags},
                   {"created_at", timestamp()}}},
                 {"additionalProperties", false}};
  s["LogPatch"] = {{"type", "object"},
                   {"properties", {{"title", string()}, {"body", string()}}},
                   {"additionalProperties", false},
                   {"minProperties", 1}};
  s["NewTemplate"] = object({{"template_name", string()},
                             {"title_pattern", string()},
                             {"body_pattern", string()},
                             {"required_fields", array_of(string())},
                             {"default_tags", tags}},
                            {"template_name", "title_pattern", "body_pattern"});
  s["AttachmentUpload"] = object({{"file", {{"type", "string"}, {"format", "binary"}}}}, {"file"});
  return s;
}

Json build_openapi(const std::vector<Route>& routes) {
  Json paths = Json::object();
  for (const auto& route : routes) {
    std::string method = route.method;
    for (auto& c : method) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    paths[route.path_template][method] = operation(route);
  }
  return {{"openapi", "3.0.3"},
          {"info",
           {{"title", "runlog"},
            {"version", kServiceVersion},
            {"description", "Run catalogue, electronic logbook and reconstruction-pass bookkeeping. Every non-2xx "
                            "response body is an ErrorEnvelope."}}},
          {"servers", Json::array({{{"url", kApiPrefix}}})},
          {"paths", paths},
          {"components",
           {{"schemas", component_schemas()},
            {"securitySchemes", {{"bearerAuth", {{"type", "http"}, {"scheme", "bearer"}}}}}}}};
}

}  // namespace runlog::service
