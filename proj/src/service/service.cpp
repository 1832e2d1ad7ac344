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

#include "runlog/service/service.hpp"

#include <algorithm>
#include <cctype>

#include "runlog/domain/codec.hpp"
#include "runlog/domain/template.hpp"
#include "runlog/reports/reports.hpp"
#include "runlog/service/params.hpp"

namespace runlog::service {

namespace {

using Json = nlohmann::json;

api::Response json_response(int status, const Json& body) {
  api::Response r;
  r.status = status;
  r.content_type = "application/json";
  r.body = body.dump();
  return r;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const auto slash = path.find('/', pos);
    const auto end = slash == std::string::npos ? path.size() : slash;
    if (end > pos) parts.push_back(path.substr(pos, end - pos));
    if (slash == std::string::npos) break;
    pos = slash + 1;
  }
  return parts;
}

Origin default_origin(const ActorRef& actor) {
  return actor.role == Role::kMachine ? Origin::kProcess : Origin::kHuman;
}

std::vector<EntityRef> associations_from(const Json& body) {
  if (!body.contains("associations") || body.at("associations").is_null()) return {};
  const auto& arr = body.at("associations");
  if (!arr.is_array())
    fail(ErrorCode::kInvalid, "associations must be an array", {{"field", "associations"}});
  std::vector<EntityRef> out;
  for (const auto& item : arr) out.push_back(item.get<EntityRef>());
  return out;
}

std::pair<Timestamp, Timestamp> report_range(const api::Request& req) {
  const auto parse = [](const std::optional<std::string>& v, Timestamp fallback, const char* field) {
    if (!v) return fallback;
    try {
      return parse_timestamp(*v);
    } catch (const Error&) {
      fail(ErrorCode::kInvalid, std::string("parameter '") + field + "' must be an RFC 3339 timestamp",
           {{"field", field}});
    }
  };
  return {parse(req.param("from"), min_timestamp(), "from"), parse(req.param("to"), max_timestamp(), "to")};
}

bool wants_csv(const api::Request& req) {
  const auto format = req.param("format").value_or("json");
  if (format == "csv") return true;
  if (format == "json") return false;
  fail(ErrorCode::kInvalid, "format must be json or csv", {{"field", "format"}});
}

api::Response csv_response(std::string body) {
  api::Response r;
  r.content_type = "text/csv";
  r.body = std::move(body);
  return r;
}

const std::vector<QueryParamSpec>& page_params() {
  static const std::vector<QueryParamSpec> params{
      {"offset", "integer", "Number of matching items to skip (default 0).", ""},
      {"limit", "integer", "Page size, 1..1000 (default 100).", ""},
  };
  return params;
}

std::vector<QueryParamSpec> with_paging(std::vector<QueryParamSpec> params) {
  params.insert(params.end(), page_params().begin(), page_params().end());
  return params;
}

const std::vector<QueryParamSpec>& report_params() {
  static const std::vector<QueryParamSpec> params{
      {"from", "string", "Inclusive lower bound (RFC 3339); defaults to the epoch.", "date-time"},
      {"to", "string", "Exclusive upper bound (RFC 3339); defaults to the end of time.", "date-time"},
      {"format", "string", "json (default) or csv.", ""},
  };
  return params;
}

}  // namespace

// --- envelope ------------------------------------------------------------------

std::string_view envelope_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownReference:
    case ErrorCode::kUnknownDigest:
      return "NOT_FOUND";
    case ErrorCode::kConflict:
    case ErrorCode::kInvalidTransition:
      return "CONFLICT";
    case ErrorCode::kInvalid:
    case ErrorCode::kInvalidTimestamps:
    case ErrorCode::kMissingField:
    case ErrorCode::kInvalidQuery:
    case ErrorCode::kParseError:
      return "INVALID";
    case ErrorCode::kUnauthorized:
      return "UNAUTHORIZED";
    case ErrorCode::kTooLarge:
      return "TOO_LARGE";
    default:
      return "INTERNAL";
  }
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownReference:
    case ErrorCode::kUnknownDigest:
      return 404;
    case ErrorCode::kConflict:
    case ErrorCode::kInvalidTransition:
      return 409;
    case ErrorCode::kInvalidTimestamps:
      return 422;
    case ErrorCode::kInvalid:
    case ErrorCode::kMissingField:
    case ErrorCode::kInvalidQuery:
    case ErrorCode::kParseError:
      return 400;
    case ErrorCode::kUnauthorized:
      return 401;
    case ErrorCode::kTooLarge:
      return 413;
    default:
      return 500;
  }
}

api::Response error_response(int status, std::string_view code, const std::string& message, Json detail) {
  return json_response(status, {{"code", code}, {"message", message}, {"detail", std::move(detail)}});
}

api::Response error_response(const Error& error) {
  Json detail = error.detail().is_object() ? error.detail() : Json::object();
  detail["error"] = to_string(error.code());
  return error_response(http_status(error.code()), envelope_code(error.code()), error.what(), detail);
}

// --- context -------------------------------------------------------------------

const ActorRef& Context::require_actor() const {
  if (!actor) fail(ErrorCode::kUnauthorized, "this operation requires a bearer token");
  return *actor;
}

std::int64_t Context::path_int(const std::string& name) const {
  const auto value = parse_int(path_string(name), name.c_str());
  if (value <= 0) fail(ErrorCode::kInvalid, name + " must be positive", {{"field", name}});
  return value;
}

const std::string& Context::path_string(const std::string& name) const { return path_params.at(name); }

Json Context::body_json() const {
  if (request.body.empty()) fail(ErrorCode::kInvalid, "request body is required");
  try {
    auto doc = Json::parse(request.body);
    if (!doc.is_object()) fail(ErrorCode::kInvalid, "request body must be a JSON object");
    return doc;
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kInvalid, std::string("request body is not valid JSON: ") + e.what());
  }
}

bool match_path(const std::string& path_template, const std::string& path,
                std::map<std::string, std::string>& captures) {
  const auto want = split_path(path_template);
  const auto have = split_path(path);
  if (want.size() != have.size()) return false;
  std::map<std::string, std::string> found;
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& w = want[i];
    if (w.size() > 2 && w.front() == '{' && w.back() == '}') {
      found[w.substr(1, w.size() - 2)] = have[i];
    } else if (w != have[i]) {
      return false;
    }
  }
  captures = std::move(found);
  return true;
}

// --- service -------------------------------------------------------------------

Service::Service(store::Store& store, ServiceConfig config)
    : store_(store), config_(std::move(config)), routes_(build_routes()), openapi_(build_openapi(routes_)) {}

std::optional<ActorRef> Service::authenticate(const api::Request& request, bool required) const {
  const auto header = request.header("authorization");
  if (!header) {
    if (required) fail(ErrorCode::kUnauthorized, "missing bearer token");
    return std::nullopt;
  }
  const std::string_view value = *header;
  constexpr std::string_view kScheme = "bearer ";
  const bool scheme_ok =
      value.size() > kScheme.size() &&
      std::equal(kScheme.begin(), kScheme.end(), value.begin(),
                 [](char a, char b) { return a == std::tolower(static_cast<unsigned char>(b)); });
  if (!scheme_ok) fail(ErrorCode::kUnauthorized, "authorization header must use the Bearer scheme");
  const auto it = config_.tokens.find(std::string(value.substr(kScheme.size())));
  if (it == config_.tokens.end()) fail(ErrorCode::kUnauthorized, "unknown token");
  return it->second;
}

api::Response Service::handle(const api::Request& request) const {
  const std::string prefix = kApiPrefix;
  if (request.path.compare(0, prefix.size(), prefix) != 0)
    return error_response(404, "NOT_FOUND", "no route for " + request.path, {{"reason", "no_route"}});
  const auto relative = request.path.substr(prefix.size());

  for (const auto& route : routes_) {
    std::map<std::string, std::string> captures;
    if (route.method != request.method || !match_path(route.path_template, relative, captures)) continue;
    try {
      Context ctx{request, std::move(captures), authenticate(request, route.requires_auth)};
      return route.handler(ctx);
    } catch (const Error& e) {
      return error_response(e);
    } catch (const nlohmann::json::exception& e) {
      return error_response(400, "INVALID", std::string("malformed request: ") + e.what());
    } catch (const std::exception& e) {
      return error_response(500, "INTERNAL", e.what());
    }
  }
  return error_response(404, "NOT_FOUND", "no route for " + request.method + " " + request.path,
                        {{"reason", "no_route"}});
}

std::vector<Route> Service::build_routes() {
  std::vector<Route> r;
  auto& st = store_;

  r.push_back({"GET", "/openapi", "getOpenApi", "Serve this API description", false, {}, "", "",
               {{200, "OpenAPI 3.0 document", "OpenApiDocument"}},
               [this](const Context&) { return json_response(200, openapi_); }});

  r.push_back({"GET", "/health", "getHealth", "Build information and store reachability", false, {}, "", "",
               {{200, "Service is up", "Health"}},
               [&st](const Context&) {
                 const bool reachable = st.reachable();
                 Json body{{"status", reachable ? "ok" : "degraded"},
                           {"version", kServiceVersion},
                           {"store_reachable", reachable},
                           {"build", {{"compiler", __VERSION__}, {"cxx_standard", __cplusplus}}}};
                 return json_response(200, body);
               }});

  // Fills
  r.push_back({"POST", "/fills", "createFill", "Register an LHC fill", true, {}, "NewFill", "application/json",
               {{201, "Fill created", "Fill"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 store::NewFill f;
                 f.fill_number = codec::get_int(b, "fill_number");
                 f.beam_type = codec::get_optional_string(b, "beam_type").value_or("");
                 f.stable_beams_start = codec::get_optional_timestamp(b, "stable_beams_start");
                 f.stable_beams_end = codec::get_optional_timestamp(b, "stable_beams_end");
                 f.created_at = codec::get_optional_timestamp(b, "created_at");
                 return json_response(201, st.create_fill(f, c.require_actor()));
               }});
  r.push_back({"GET", "/fills", "listFills", "List fills, newest first", true, page_params(), "", "",
               {{200, "A page of fills", "FillPage"}},
               [&st](const Context& c) {
                 return json_response(200, st.list_fills(page_from_params(c.request.query)));
               }});
  r.push_back({"GET", "/fills/{fillNumber}", "getFill", "Fetch one fill", true, {}, "", "",
               {{200, "The fill", "Fill"}},
               [&st](const Context& c) { return json_response(200, st.get_fill(c.path_int("fillNumber"))); }});
  r.push_back({"GET", "/fills/{fillNumber}/runs", "listFillRuns", "Runs belonging to a fill", true, page_params(),
               "", "", {{200, "A page of runs", "RunPage"}},
               [&st](const Context& c) {
                 const auto fill = st.get_fill(c.path_int("fillNumber"));
                 RunQuery q;
                 q.fill_number = fill.fill_number;
                 return json_response(200, st.list_runs(q, page_from_params(c.request.query)));
               }});

  // Runs
  r.push_back({"POST", "/runs", "startRun", "Start a data-taking run", true, {}, "NewRun", "application/json",
               {{201, "Run started", "Run"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 store::NewRun n;
                 n.run_type = codec::get_enum<RunType>(b, "run_type");
                 n.start_time = codec::get_optional_timestamp(b, "start_time");
                 n.fill_number = codec::get_optional_int(b, "fill_number");
                 n.configuration = codec::get_configuration(b, "configuration");
                 n.tags = codec::get_tags(b, "tags");
                 return json_response(201, st.create_run(n, c.require_actor()));
               }});
  r.push_back({"GET", "/runs", "listRuns", "Search the run catalogue", true,
               with_paging({{"run_min", "integer", "Smallest run number (inclusive).", ""},
                            {"run_max", "integer", "Largest run number (inclusive).", ""},
                            {"from", "string", "Earliest start_time (inclusive, RFC 3339).", "date-time"},
                            {"to", "string", "Latest start_time (inclusive, RFC 3339).", "date-time"},
                            {"type", "string", "Comma-separated run types.", ""},
                            {"quality", "string", "Comma-separated qualities.", ""},
                            {"state", "string", "Comma-separated states.", ""},
                            {"fill", "integer", "Fill number.", ""},
                            {"tags", "string", "Comma-separated tags; all must be present.", ""}}),
               "", "", {{200, "A page of runs", "RunPage"}},
               [&st](const Context& c) {
                 return json_response(200, st.list_runs(run_query_from_params(c.request.query),
                                                        page_from_params(c.request.query)));
               }});
  r.push_back({"GET", "/runs/{runNumber}", "getRun", "Fetch one run", true, {}, "", "",
               {{200, "The run", "Run"}},
               [&st](const Context& c) { return json_response(200, st.get_run(c.path_int("runNumber"))); }});
  r.push_back({"PATCH", "/runs/{runNumber}", "patchRun", "End a run or set its quality (one event per call)", true,
               {}, "RunPatch", "application/json", {{200, "Updated run", "Run"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 const bool has_end = b.contains("end");
                 const bool has_quality = b.contains("quality");
                 if (has_end == has_quality)
                   fail(ErrorCode::kInvalid, "body must carry exactly one of 'end' or 'quality'",
                        {{"field", "end"}});
                 RunEvent event;
                 if (has_end) {
                   const auto& end = b.at("end");
                   if (!end.is_object()) fail(ErrorCode::kInvalid, "'end' must be an object", {{"field", "end"}});
                   event = EndRun{codec::get_optional_timestamp(end, "end_time").value_or(now_utc())};
                 } else {
                   event = SetQuality{codec::get_enum<Quality>(b, "quality")};
                 }
                 return json_response(200, st.mutate_run(c.path_int("runNumber"), event, c.require_actor()));
               }});
  r.push_back({"POST", "/runs/{runNumber}/tags", "tagRun", "Add a tag to a run", true, {}, "TagRequest",
               "application/json", {{200, "Updated run", "Run"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 const auto tag = Tag::make(codec::get_string(b, "tag"));
                 return json_response(200, st.mutate_run(c.path_int("runNumber"), AddTag{tag}, c.require_actor()));
               }});
  r.push_back({"DELETE", "/runs/{runNumber}/tags/{tag}", "untagRun", "Remove a tag from a run", true, {}, "", "",
               {{200, "Updated run", "Run"}},
               [&st](const Context& c) {
                 const auto tag = Tag::make(c.path_string("tag"));
                 return json_response(200,
                                      st.mutate_run(c.path_int("runNumber"), RemoveTag{tag}, c.require_actor()));
               }});

  // Passes
  r.push_back({"POST", "/passes", "createPass", "Register a reconstruction pass", true, {}, "NewPass",
               "application/json", {{201, "Pass created", "Pass"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 store::NewPass p;
                 p.name = codec::get_string(b, "name");
                 p.input = codec::required(b, "input").get<EntityRef>();
                 if (p.input.kind != EntityKind::kRun && p.input.kind != EntityKind::kPass)
                   return error_response(422, "INVALID", "pass input must reference a RUN or a PASS",
                                         {{"field", "input"}, {"kind", to_string(p.input.kind)},
                                          {"error", to_string(ErrorCode::kInvalid)}});
                 p.configuration = codec::get_configuration(b, "configuration");
                 p.created_at = codec::get_optional_timestamp(b, "created_at");
                 return json_response(201, st.create_pass(p, c.require_actor()));
               }});
  r.push_back({"GET", "/passes", "listPasses", "List reconstruction passes, newest first", true,
               with_paging({{"status", "string", "Comma-separated statuses.", ""},
                            {"input", "string", "Direct input, as KIND:ID.", ""}}),
               "", "", {{200, "A page of passes", "PassPage"}},
               [&st](const Context& c) {
                 store::PassQuery q;
                 const auto statuses = split_list(c.request.query, "status");
                 if (!statuses.empty()) {
                   q.statuses.emplace();
                   for (const auto& s : statuses) q.statuses->insert(parse_enum<PassStatus>(s));
                 }
                 if (const auto input = c.request.param("input")) q.input = parse_entity_ref(*input);
                 return json_response(200, st.list_passes(q, page_from_params(c.request.query)));
               }});
  r.push_back({"GET", "/passes/{passId}", "getPass", "Fetch one pass", true, {}, "", "",
               {{200, "The pass", "Pass"}},
               [&st](const Context& c) { return json_response(200, st.get_pass(c.path_int("passId"))); }});
  r.push_back({"GET", "/passes/{passId}/lineage", "getPassLineage", "Input chain of a pass down to its run", true,
               {}, "", "", {{200, "Lineage chain, root run last", "Lineage"}},
               [&st](const Context& c) {
                 const auto id = c.path_int("passId");
                 return json_response(200, Json{{"pass_id", id}, {"chain", st.lineage(id)}});
               }});
  r.push_back({"PATCH", "/passes/{passId}", "patchPass", "Advance a pass's status", true, {}, "PassPatch",
               "application/json", {{200, "Updated pass", "Pass"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 const auto status = codec::get_enum<PassStatus>(b, "status");
                 return json_response(200, st.set_pass_status(c.path_int("passId"), status, c.require_actor()));
               }});

  // Logs
  r.push_back({"POST", "/logs", "createLog", "Write a log entry, directly or from a template", true, {}, "NewLog",
               "application/json", {{201, "Log entry created", "LogEntry"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 const auto& actor = c.require_actor();
                 store::NewLog n;
                 n.associations = associations_from(b);
                 n.tags = codec::get_tags(b, "tags");
                 n.created_at = codec::get_optional_timestamp(b, "created_at");
                 n.origin = b.contains("origin") ? codec::get_enum<Origin>(b, "origin") : default_origin(actor);
                 if (const auto tpl_name = codec::get_optional_string(b, "template_name")) {
                   const auto tpl = st.get_template(*tpl_name);
                   TemplateValues values;
                   if (b.contains("values")) values = b.at("values").get<TemplateValues>();
                   auto rendered = render_template(tpl, values);
                   n.title = std::move(rendered.title);
                   n.body = std::move(rendered.body);
                   n.tags.merge(rendered.tags);
                 } else {
                   n.title = codec::get_string(b, "title");
                   n.body = codec::get_optional_string(b, "body").value_or("");
                 }
                 return json_response(201, st.create_log(n, actor));
               }});
  r.push_back({"GET", "/logs", "listLogs", "Search log entries", true,
               with_paging({{"text", "string", "Whitespace-separated tokens; all must appear in title or body.", ""},
                            {"tags", "string", "Comma-separated tags; all must be present.", ""},
                            {"author", "string", "Author actor_id.", ""},
                            {"association", "string", "Associated entity, as KIND:ID.", ""},
                            {"from", "string", "Earliest created_at (inclusive, RFC 3339).", "date-time"},
                            {"to", "string", "Latest created_at (inclusive, RFC 3339).", "date-time"}}),
               "", "", {{200, "A page of log entries", "LogPage"}},
               [&st](const Context& c) {
                 return json_response(200, st.list_logs(log_query_from_params(c.request.query),
                                                        page_from_params(c.request.query)));
               }});
  r.push_back({"GET", "/logs/{logId}", "getLog", "Fetch one log entry", true, {}, "", "",
               {{200, "The log entry", "LogEntry"}},
               [&st](const Context& c) { return json_response(200, st.get_log(c.path_int("logId"))); }});
  r.push_back({"PATCH", "/logs/{logId}", "editLog", "Edit a log entry; the previous content is kept as a revision",
               true, {}, "LogPatch", "application/json", {{200, "Updated log entry", "LogEntry"}},
               [&st](const Context& c) {
                 const auto b = c.body_json();
                 const auto id = c.path_int("logId");
                 const auto title = codec::get_optional_string(b, "title");
                 const auto body = codec::get_optional_string(b, "body");
                 if (!title && !body)
                   fail(ErrorCode::kInvalid, "body must carry 'title' and/or 'body'", {{"field", "title"}});
                 const auto current = st.get_log(id);
                 return json_response(200, st.edit_log(id, title.value_or(current.title),
                                                       body.value_or(current.body), c.require_actor()));
               }});
  r.push_back({"GET", "/logs/{logId}/revisions", "listLogRevisions", "Full edit history of a log entry", true, {},
               "", "", {{200, "Revisions, earliest first", "Revisions"}},
               [&st](const Context& c) {
                 const auto log = st.get_log(c.path_int("logId"));
                 return json_response(200, Json{{"log_id", log.log_id}, {"revisions", log.revisions}});
               }});
  r.push_back({"POST", "/logs/{logId}/attachments", "attachToLog", "Upload a file attachment (multipart field 'file')",
               true, {}, "AttachmentUpload", "multipart/form-data", {{201, "Attachment stored", "Attachment"}},
               [this, &st](const Context& c) {
                 const auto& actor = c.require_actor();
                 const auto id = c.path_int("logId");
                 const auto part = std::find_if(c.request.files.begin(), c.request.files.end(),
                                                [](const api::FilePart& p) { return p.field == "file"; });
                 if (part == c.request.files.end())
                   fail(ErrorCode::kInvalid, "multipart field 'file' is required", {{"field", "file"}});
                 if (part->content.size() > config_.max_upload_bytes)
                   fail(ErrorCode::kTooLarge, "upload exceeds the configured limit",
                        {{"size_bytes", part->content.size()}, {"max_bytes", config_.max_upload_bytes}});
                 return json_response(201, st.put_attachment(id, part->content, part->filename,
                                                             part->content_type, actor));
               }});
  r.push_back({"GET", "/attachments/{digest}", "getAttachment", "Download attachment bytes by content digest", true,
               {}, "", "", {{200, "The stored bytes, served with their media type", "Binary", "*/*"}},
               [&st](const Context& c) {
                 const auto& digest = c.path_string("digest");
                 if (!is_hex_digest(digest))
                   fail(ErrorCode::kUnknownDigest, "no attachment with digest " + digest, {{"digest", digest}});
                 auto blob = st.get_attachment(digest);
                 api::Response resp;
                 resp.content_type = blob.meta.media_type;
                 resp.body = std::move(blob.bytes);
                 resp.headers["Content-Disposition"] = "attachment; filename=\"" + blob.meta.filename + "\"";
                 return resp;
               }});

  // Templates
  r.push_back({"GET", "/templates", "listTemplates", "List log templates", true, page_params(), "", "",
               {{200, "A page of templates", "TemplatePage"}},
               [&st](const Context& c) {
                 return json_response(200, st.list_templates(page_from_params(c.request.query)));
               }});
  r.push_back({"POST", "/templates", "createTemplate", "Define a log template", true, {}, "NewTemplate",
               "application/json", {{201, "Template created", "Template"}},
               [&st](const Context& c) {
                 const auto tpl = c.body_json().get<Template>();
                 store::NewTemplate n{tpl.name, tpl.title_pattern, tpl.body_pattern, tpl.required_fields,
                                      tpl.default_tags};
                 return json_response(201, st.create_template(n, c.require_actor()));
               }});

  // Audit
  r.push_back({"GET", "/audit", "readAudit", "Page through the append-only audit log", true,
               {{"since", "integer", "Return records with seq greater than this (default 0).", ""},
                {"limit", "integer", "Page size, 1..1000 (default 100).", ""}},
               "", "", {{200, "Audit records, ascending seq", "AuditPage"}},
               [&st](const Context& c) {
                 const auto since = c.request.param("since");
                 const auto limit = c.request.param("limit");
                 return json_response(200, st.read_audit(since ? parse_int(*since, "since") : 0,
                                                         limit ? parse_int(*limit, "limit") : store::kDefaultPageLimit));
               }});

  // Reports
  r.push_back({"GET", "/reports/overview", "reportOverview",
               "Counts, runs per fill (over fills with at least one run), duration histogram and tag frequency",
               true, report_params(), "", "",
               {{200, "Overview report", "OverviewReport"}, {200, "Overview report as CSV", "Text", "text/csv"}},
               [&st](const Context& c) {
                 const auto [from, to] = report_range(c.request);
                 const bool csv = wants_csv(c.request);
                 const auto report = reports::overview(st.snapshot(), from, to);
                 return csv ? csv_response(reports::to_csv(report)) : json_response(200, reports::to_json(report));
               }});
  r.push_back({"GET", "/reports/runs-per-fill", "reportRunsPerFill", "Run count per fill, largest first", true,
               report_params(), "", "",
               {{200, "Rows of fill_number and run_count", "RunsPerFill"},
                {200, "Rows as CSV", "Text", "text/csv"}},
               [&st](const Context& c) {
                 const auto [from, to] = report_range(c.request);
                 const bool csv = wants_csv(c.request);
                 const auto rows = reports::runs_per_fill(st.snapshot(), from, to);
                 return csv ? csv_response(reports::to_csv(rows))
                            : json_response(200, Json{{"rows", reports::to_json(rows)}});
               }});

  return r;
}

}  // namespace runlog::service
