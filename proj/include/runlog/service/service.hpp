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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "runlog/domain/errors.hpp"
#include "runlog/service/api_types.hpp"
#include "runlog/service/config.hpp"
#include "runlog/store/store.hpp"

namespace runlog::service {

inline constexpr const char* kApiPrefix = "/api/v1";
inline constexpr const char* kServiceVersion = "1.0.0";

struct QueryParamSpec {
  std::string name;
  std::string type;  // "string" | "integer"
  std::string description;
  std::string format;  // optional, e.g. "date-time"
};

struct ResponseSpec {
  int status = 200;
  std::string description;
  std::string schema;        // component schema name; empty for no body
  std::string content_type = "application/json";
};

struct Context;

// One endpoint. The route table is the single source for dispatch and for
// the served OpenAPI document.
struct Route {
  std::string method;         // "GET", "POST", ...
  std::string path_template;  // relative to kApiPrefix, e.g. "/runs/{runNumber}"
  std::string operation_id;
  std::string summary;
  bool requires_auth = true;
  std::vector<QueryParamSpec> query_params;
  std::string request_schema;  // component name; empty when no body
  std::string request_content_type = "application/json";
  std::vector<ResponseSpec> responses;
  std::function<api::Response(const Context&)> handler;
};

struct Context {
  const api::Request& request;
  std::map<std::string, std::string> path_params;
  std::optional<ActorRef> actor;

  const ActorRef& require_actor() const;
  std::int64_t path_int(const std::string& name) const;
  const std::string& path_string(const std::string& name) const;
  nlohmann::json body_json() const;
};

// Error envelope codes.
std::string_view envelope_code(ErrorCode code);
int http_status(ErrorCode code);
api::Response error_response(int status, std::string_view code, const std::string& message,
                             nlohmann::json detail = nlohmann::json::object());
api::Response error_response(const Error& error);

// The REST front door. handle() is safe to call concurrently; the service
// keeps no per-request mutable state and relies on the store for
// serialization.
class Service {
 public:
  Service(store::Store& store, ServiceConfig config);

  api::Response handle(const api::Request& request) const;

  const std::vector<Route>& routes() const { return routes_; }
  const nlohmann::json& openapi() const { return openapi_; }
  const ServiceConfig& config() const { return config_; }
  store::Store& store() const { return store_; }

 private:
  std::vector<Route> build_routes();
  std::optional<ActorRef> authenticate(const api::Request& request, bool required) const;

  store::Store& store_;
  ServiceConfig config_;
  std::vector<Route> routes_;
  nlohmann::json openapi_;
};

// Matches `path` (without kApiPrefix) against a template; fills captures.
bool match_path(const std::string& path_template, const std::string& path,
                std::map<std::string, std::string>& captures);

nlohmann::json build_openapi(const std::vector<Route>& routes);
nlohmann::json component_schemas();

}  // namespace runlog::service
