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

#include "runlog/client/transport.hpp"

#include <regex>

#include "httplib.h"
#include "runlog/domain/errors.hpp"
#include "runlog/service/service.hpp"

namespace runlog::client {

void validate_endpoint(const std::string& endpoint) {
  static const std::regex re(R"(^http://[A-Za-z0-9._-]+(:[0-9]{1,5})?/?$)");
  if (!std::regex_match(endpoint, re))
    fail(ErrorCode::kInvalid, "endpoint must look like http://host:port", {{"field", "endpoint"}});
}

HttpTransport::HttpTransport(const std::string& endpoint) : endpoint_(endpoint) {
  validate_endpoint(endpoint);
  auto trimmed = endpoint;
  if (trimmed.back() == '/') trimmed.pop_back();
  client_ = std::make_unique<httplib::Client>(trimmed);
  client_->set_keep_alive(true);
  client_->set_tcp_nodelay(true);
  client_->set_url_encode(false);
  client_->set_connection_timeout(5);
  client_->set_read_timeout(120);
  client_->set_write_timeout(120);
}

HttpTransport::~HttpTransport() = default;

api::Response HttpTransport::send(const api::Request& request) {
  httplib::Request req;
  req.method = request.method;
  req.path = request.target();
  for (const auto& [k, v] : request.headers) req.set_header(k, v);
  if (!request.files.empty()) {
    auto [content_type, body] = api::encode_multipart(request.files);
    req.set_header("Content-Type", content_type);
    req.body = std::move(body);
  } else if (!request.body.empty() || request.method == "POST" || request.method == "PATCH") {
    req.set_header("Content-Type", request.content_type.empty() ? "application/json" : request.content_type);
    req.body = request.body;
  }

  httplib::Result result{nullptr, httplib::Error::Unknown};
  {
    std::lock_guard lock(mutex_);
    result = client_->send(req);
  }
  if (!result)
    fail(ErrorCode::kConnectionFailed, "cannot reach " + endpoint_ + ": " + httplib::to_string(result.error()),
         {{"endpoint", endpoint_}});

  api::Response out;
  out.status = result->status;
  out.body = result->body;
  out.content_type = result->get_header_value("Content-Type");
  for (const auto& [k, v] : result->headers) out.headers[k] = v;
  return out;
}

api::Response InProcessTransport::send(const api::Request& request) { return service_.handle(request); }

api::Response RecordingTransport::send(const api::Request& request) {
  auto response = inner_.send(request);
  std::lock_guard lock(mutex_);
  exchanges_.push_back({request, response});
  return response;
}

}  // namespace runlog::client
