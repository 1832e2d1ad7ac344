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
#include <string>
#include <vector>

#include "json.hpp"
#include "runlog/client/transport.hpp"
#include "runlog/domain/codec.hpp"
#include "runlog/domain/errors.hpp"
#include "runlog/domain/template.hpp"
#include "runlog/store/store.hpp"

namespace runlog::client {

// Typed wrapper over the REST API. Non-2xx responses are turned back into
// runlog::Error using the envelope's detail.error name.
class ApiClient {
 public:
  ApiClient(Transport& transport, std::optional<std::string> token = std::nullopt);

  LhcFill create_fill(const store::NewFill& fill);
  LhcFill get_fill(std::int64_t fill_number);
  store::Page<LhcFill> list_fills(const store::PageRequest& page = {});
  store::Page<Run> fill_runs(std::int64_t fill_number, const store::PageRequest& page = {});

  Run start_run(const store::NewRun& run);
  Run end_run(std::int64_t run_number, std::optional<Timestamp> end_time = std::nullopt);
  Run set_quality(std::int64_t run_number, Quality quality);
  Run add_tag(std::int64_t run_number, const Tag& tag);
  Run remove_tag(std::int64_t run_number, const Tag& tag);
  Run get_run(std::int64_t run_number);
  store::Page<Run> list_runs(const RunQuery& query, const store::PageRequest& page = {});

  ReconstructionPass create_pass(const store::NewPass& pass);
  ReconstructionPass set_pass_status(std::int64_t pass_id, PassStatus status);
  ReconstructionPass get_pass(std::int64_t pass_id);
  store::Page<ReconstructionPass> list_passes(const store::PassQuery& query, const store::PageRequest& page = {});
  std::vector<EntityRef> lineage(std::int64_t pass_id);

  LogEntry create_log(const store::NewLog& log);
  LogEntry create_log_from_template(const std::string& template_name, const TemplateValues& values,
                                    const store::NewLog& extra);
  LogEntry edit_log(std::int64_t log_id, const std::optional<std::string>& title,
                    const std::optional<std::string>& body);
  LogEntry get_log(std::int64_t log_id);
  std::vector<Revision> revisions(std::int64_t log_id);
  store::Page<LogEntry> list_logs(const LogQuery& query, const store::PageRequest& page = {});
  Attachment attach(std::int64_t log_id, const std::string& filename, const std::string& media_type,
                    const std::string& bytes);
  // Returns {bytes, media_type}.
  std::pair<std::string, std::string> download(const std::string& digest);

  Template create_template(const store::NewTemplate& tpl);
  store::Page<Template> list_templates(const store::PageRequest& page = {});

  store::Page<store::AuditRecord> read_audit(std::int64_t since, std::int64_t limit = store::kDefaultPageLimit);
  nlohmann::json overview(std::optional<Timestamp> from = std::nullopt, std::optional<Timestamp> to = std::nullopt);
  nlohmann::json runs_per_fill(std::optional<Timestamp> from = std::nullopt,
                               std::optional<Timestamp> to = std::nullopt);
  nlohmann::json health();
  nlohmann::json openapi();

  // Sends with the bearer token attached; no status mapping.
  api::Response send(api::Request request);
  // Body of the last successful call, verbatim.
  const std::string& last_body() const { return last_body_; }

 private:
  api::Response call(api::Request request);
  nlohmann::json call_json(const std::string& method, const std::string& path, const nlohmann::json& body = nullptr,
                           api::Params query = {});

  Transport& transport_;
  std::optional<std::string> token_;
  std::string last_body_;
};

// Maps an error envelope back to the library error.
Error error_from_response(const api::Response& response);

template <typename T>
store::Page<T> page_from_json(const nlohmann::json& j) {
  store::Page<T> page;
  page.items = j.at("items").get<std::vector<T>>();
  page.total = j.at("total").get<std::int64_t>();
  page.offset = j.at("offset").get<std::int64_t>();
  page.limit = j.at("limit").get<std::int64_t>();
  return page;
}

}  // namespace runlog::client
