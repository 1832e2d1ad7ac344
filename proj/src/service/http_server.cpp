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

#include "runlog/service/http_server.hpp"

#include <cctype>

#include "httplib.h"

namespace runlog::service {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

api::Request translate(const httplib::Request& req) {
  api::Request out;
  out.method = req.method;
  out.path = req.path;
  for (const auto& [k, v] : req.params) out.query.emplace(k, v);
  for (const auto& [k, v] : req.headers) out.headers.emplace(lower(k), v);
  out.body = req.body;
  out.content_type = req.get_header_value("Content-Type");
  for (const auto& [name, part] : req.files)
    out.files.push_back({part.name, part.filename, part.content_type, part.content});
  return out;
}

void write(const api::Response& in, httplib::Response& res) {
  res.status = in.status;
  for (const auto& [k, v] : in.headers) res.set_header(k, v);
  res.set_content(in.body, in.content_type);
}

}  // namespace

HttpServer::HttpServer(const Service& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    write(service_.handle(translate(req)), res);
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Patch(".*", handler);
  server_->Put(".*", handler);
  server_->Delete(".*", handler);
  server_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "unexpected failure";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    write(error_response(500, "INTERNAL", message), res);
  });
  // Leave room above the upload limit so oversized files reach the service
  // and get a TOO_LARGE envelope instead of a bare transport error.
  server_->set_payload_max_length(static_cast<std::size_t>(service.config().max_upload_bytes) * 2 + (1u << 20));
  server_->set_keep_alive_max_count(1000);
  server_->set_tcp_nodelay(true);
}

HttpServer::~HttpServer() {
  // A bound socket is only released by a listening server.
  if (port_ > 0 && !listened_) start();
  stop();
}

int HttpServer::bind(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) fail(ErrorCode::kConnectionFailed, "cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void HttpServer::start() {
  listened_ = true;
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpServer::run() {
  listened_ = true;
  server_->listen_after_bind();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string HttpServer::endpoint() const { return "http://" + host_ + ":" + std::to_string(port_); }

}  // namespace runlog::service
