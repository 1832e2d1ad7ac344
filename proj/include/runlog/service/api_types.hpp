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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

// Transport-neutral HTTP request/response values. The service consumes them,
// the HTTP adapter and the client transports produce them.
namespace runlog::api {

using Params = std::multimap<std::string, std::string>;

struct FilePart {
  std::string field;
  std::string filename;
  std::string content_type;
  std::string content;
};

struct Request {
  std::string method;  // upper case
  std::string path;    // decoded, without query string
  Params query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
  std::string content_type;
  std::vector<FilePart> files;

  // First value of a query parameter, if present.
  std::optional<std::string> param(const std::string& name) const;
  std::optional<std::string> header(const std::string& name) const;
  // path + "?" + encoded query (for transports).
  std::string target() const;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;

  bool ok() const { return status >= 200 && status < 300; }
  nlohmann::json json() const;
};

std::string url_encode(std::string_view text);
std::string encode_query(const Params& params);

// Builds a multipart/form-data body; returns {content_type, body}.
std::pair<std::string, std::string> encode_multipart(const std::vector<FilePart>& parts);

}  // namespace runlog::api
