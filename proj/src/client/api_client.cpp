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

#include "runlog/client/api_client.hpp"

#include "runlog/domain/codec.hpp"
#include "runlog/service/params.hpp"
#include "runlog/service/service.hpp"

namespace runlog::client {

namespace {

using Json = nlohmann::json;

std::string prefixed(const std::string& path) { return std::string(service::kApiPrefix) + path; }

void put_time(Json& j, const char* key, const std::optional<Timestamp>& t) {
  if (t) j[key] = format_timestamp(*t);
}

Json tags_json(const TagSet& tags) {
  Json out = Json::array();
  for (const auto& t : tags) out.push_back(t.value());
  return out;
}

Json log_fields(const store::NewLog& log) {
  Json j{{"origin", to_string(log.origin)}, {"associations", log.associations}, {"tags", tags_json(log.tags)}};
  put_time(j, "created_at", log.created_at);
  return j;
}

api::Params range_params(std::optional<Timestamp> from, std::optional<Timestamp> to) {
  api::Params p;
  if (from) p.emplace("from", format_timestamp(*from));
  if (to) p.emplace("to", format_timestamp(*to));
  return p;
}

}  // namespace

Error error_from_response(const api::Response& response) {
  Json envelope;
  try {
    envelope = Json::parse(response.body);
  } catch (const Json::exception&) {
    return Error(ErrorCode::kInternal, "HTTP " + std::to_string(response.status) + " with a non-JSON body",
                 {{"status", response.status}});
  }
  Json detail = envelope.value("detail", Json::object());
  if (!detail.is_object()) detail = Json::object();
  auto code = ErrorCode::kInternal;
  if (detail.contains("error") && detail.at("error").is_string()) {
    code = parse_error_code(detail.at("error").get<std::string>()).value_or(ErrorCode::kInternal);
  } else if (response.status == 401) {
    code = ErrorCode::kUnauthorized;
  } else if (response.status == 404) {
    code = ErrorCode::kNotFound;
  }
  detail["status"] = response.status;
  detail["envelope_code"] = envelope.value("code", "");
  return Error(code, envelope.value("message", "request failed"), detail);
}

ApiClient::ApiClient(Transport& transport, std::optional<std::string> token)
    : transport_(transport), token_(std::move(token)) {}

api::Response ApiClient::send(api::Request request) {
  if (token_) request.headers["authorization"] = "Bearer " + *token_;
  return transport_.send(request);
}

api::Response ApiClient::call(api::Request request) {
  auto response = send(std::move(request));
  if (!response.ok()) throw error_from_response(response);
  last_body_ = response.body;
  return response;
}

Json ApiClient::call_json(const std::string& method, const std::string& path, const Json& body, api::Params query) {
  api::Request req;
  req.method = method;
  req.path = prefixed(path);
  req.query = std::move(query);
  if (!body.is_null()) {
    req.body = body.dump();
    req.content_type = "application/json";
  }
  return call(std::move(req)).json();
}

LhcFill ApiClient::create_fill(const store::NewFill& fill) {
  Json j{{"fill_number", fill.fill_number}, {"beam_type", fill.beam_type}};
  put_time(j, "stable_beams_start", fill.stable_beams_start);
  put_time(j, "stable_beams_end", fill.stable_beams_end);
  put_time(j, "created_at", fill.created_at);
  return call_json("POST", "/fills", j).get<LhcFill>();
}

LhcFill ApiClient::get_fill(std::int64_t fill_number) {
  return call_json("GET", "/fills/" + std::to_string(fill_number)).get<LhcFill>();
}

store::Page<LhcFill> ApiClient::list_fills(const store::PageRequest& page) {
  api::Params p;
  service::add_page_params(p, page);
  return page_from_json<LhcFill>(call_json("GET", "/fills", nullptr, p));
}

store::Page<Run> ApiClient::fill_runs(std::int64_t fill_number, const store::PageRequest& page) {
  api::Params p;
  service::add_page_params(p, page);
  return page_from_json<Run>(call_json("GET", "/fills/" + std::to_string(fill_number) + "/runs", nullptr, p));
}

Run ApiClient::start_run(const store::NewRun& run) {
  Json j{{"run_type", to_string(run.run_type)}, {"configuration", run.configuration}, {"tags", tags_json(run.tags)}};
  put_time(j, "start_time", run.start_time);
  if (run.fill_number) j["fill_number"] = *run.fill_number;
  return call_json("POST", "/runs", j).get<Run>();
}

Run ApiClient::end_run(std::int64_t run_number, std::optional<Timestamp> end_time) {
  Json end = Json::object();
  put_time(end, "end_time", end_time);
  return call_json("PATCH", "/runs/" + std::to_string(run_number), Json{{"end", end}}).get<Run>();
}

Run ApiClient::set_quality(std::int64_t run_number, Quality quality) {
  return call_json("PATCH", "/runs/" + std::to_string(run_number), Json{{"quality", to_string(quality)}}).get<Run>();
}

Run ApiClient::add_tag(std::int64_t run_number, const Tag& tag) {
  return call_json("POST", "/runs/" + std::to_string(run_number) + "/tags", Json{{"tag", tag.value()}}).get<Run>();
}

Run ApiClient::remove_tag(std::int64_t run_number, const Tag& tag) {
  return call_json("DELETE", "/runs/" + std::to_string(run_number) + "/tags/" + api::url_encode(tag.value()))
      .get<Run>();
}

Run ApiClient::get_run(std::int64_t run_number) {
  return call_json("GET", "/runs/" + std::to_string(run_number)).get<Run>();
}

store::Page<Run> ApiClient::list_runs(const RunQuery& query, const store::PageRequest& page) {
  auto p = service::to_params(query);
  service::add_page_params(p, page);
  return page_from_json<Run>(call_json("GET", "/runs", nullptr, p));
}

ReconstructionPass ApiClient::create_pass(const store::NewPass& pass) {
  Json j{{"name", pass.name}, {"input", pass.input}, {"configuration", pass.configuration}};
  put_time(j, "created_at", pass.created_at);
  return call_json("POST", "/passes", j).get<ReconstructionPass>();
}

ReconstructionPass ApiClient::set_pass_status(std::int64_t pass_id, PassStatus status) {
  return call_json("PATCH", "/passes/" + std::to_string(pass_id), Json{{"status", to_string(status)}})
      .get<ReconstructionPass>();
}

ReconstructionPass ApiClient::get_pass(std::int64_t pass_id) {
  return call_json("GET", "/passes/" + std::to_string(pass_id)).get<ReconstructionPass>();
}

store::Page<ReconstructionPass> ApiClient::list_passes(const store::PassQuery& query,
                                                       const store::PageRequest& page) {
  api::Params p;
  if (query.statuses) {
    std::string joined;
    for (const auto s : *query.statuses) {
      if (!joined.empty()) joined.push_back(',');
      joined += to_string(s);
    }
    p.emplace("status", joined);
  }
  if (query.input) p.emplace("input", to_string(*query.input));
  service::add_page_params(p, page);
  return page_from_json<ReconstructionPass>(call_json("GET", "/passes", nullptr, p));
}

std::vector<EntityRef> ApiClient::lineage(std::int64_t pass_id) {
  return call_json("GET", "/passes/" + std::to_string(pass_id) + "/lineage").at("chain").get<std::vector<EntityRef>>();
}

LogEntry ApiClient::create_log(const store::NewLog& log) {
  auto j = log_fields(log);
  j["title"] = log.title;
  j["body"] = log.body;
  return call_json("POST", "/logs", j).get<LogEntry>();
}

LogEntry ApiClient::create_log_from_template(const std::string& template_name, const TemplateValues& values,
                                             const store::NewLog& extra) {
  auto j = log_fields(extra);
  j["template_name"] = template_name;
  j["values"] = values;
  return call_json("POST", "/logs", j).get<LogEntry>();
}

LogEntry ApiClient::edit_log(std::int64_t log_id, const std::optional<std::string>& title,
                             const std::optional<std::string>& body) {
  Json j = Json::object();
  if (title) j["title"] = *title;
  if (body) j["body"] = *body;
  return call_json("PATCH", "/logs/" + std::to_string(log_id), j).get<LogEntry>();
}

LogEntry ApiClient::get_log(std::int64_t log_id) {
  return call_json("GET", "/logs/" + std::to_string(log_id)).get<LogEntry>();
}

std::vector<Revision> ApiClient::revisions(std::int64_t log_id) {
  return call_json("GET", "/logs/" + std::to_string(log_id) + "/revisions")
      .at("revisions")
      .get<std::vector<Revision>>();
}

store::Page<LogEntry> ApiClient::list_logs(const LogQuery& query, const store::PageRequest& page) {
  auto p = service::to_params(query);
  service::add_page_params(p, page);
  return page_from_json<LogEntry>(call_json("GET", "/logs", nullptr, p));
}

Attachment ApiClient::attach(std::int64_t log_id, const std::string& filename, const std::string& media_type,
                             const std::string& bytes) {
  api::Request req;
  req.method = "POST";
  req.path = prefixed("/logs/" + std::to_string(log_id) + "/attachments");
  req.files.push_back({"file", filename, media_type, bytes});
  req.content_type = "multipart/form-data";
  return call(std::move(req)).json().get<Attachment>();
}

std::pair<std::string, std::string> ApiClient::download(const std::string& digest) {
  api::Request req;
  req.method = "GET";
  req.path = prefixed("/attachments/" + digest);
  auto response = call(std::move(req));
  return {std::move(response.body), response.content_type};
}

Template ApiClient::create_template(const store::NewTemplate& tpl) {
  Json j{{"template_name", tpl.name},
         {"title_pattern", tpl.title_pattern},
         {"body_pattern", tpl.body_pattern},
         {"required_fields", tpl.required_fields},
         {"default_tags", tags_json(tpl.default_tags)}};
  return call_json("POST", "/templates", j).get<Template>();
}

store::Page<Template> ApiClient::list_templates(const store::PageRequest& page) {
  api::Params p;
  service::add_page_params(p, page);
  return page_from_json<Template>(call_json("GET", "/templates", nullptr, p));
}

store::Page<store::AuditRecord> ApiClient::read_audit(std::int64_t since, std::int64_t limit) {
  api::Params p{{"since", std::to_string(since)}, {"limit", std::to_string(limit)}};
  return page_from_json<store::AuditRecord>(call_json("GET", "/audit", nullptr, p));
}

Json ApiClient::overview(std::optional<Timestamp> from, std::optional<Timestamp> to) {
  return call_json("GET", "/reports/overview", nullptr, range_params(from, to));
}

Json ApiClient::runs_per_fill(std::optional<Timestamp> from, std::optional<Timestamp> to) {
  return call_json("GET", "/reports/runs-per-fill", nullptr, range_params(from, to)).at("rows");
}

Json ApiClient::health() { return call_json("GET", "/health"); }

Json ApiClient::openapi() { return call_json("GET", "/openapi"); }

}  // namespace runlog::client
