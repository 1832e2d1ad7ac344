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

namespace runlog::testing {

// Draft-04 style validator covering the keywords used by the OpenAPI 3.0
// meta-schema and by the served document's components. `$ref` is resolved
// as a JSON pointer into the root document.
class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json root) : root_(std::move(root)) {}

  // Validates against the root schema.
  std::vector<std::string> validate(const nlohmann::json& instance) const;
  // Validates against `schema`, resolving refs inside the root.
  std::vector<std::string> validate(const nlohmann::json& instance, const nlohmann::json& schema) const;

 private:
  void check(const nlohmann::json& instance, const nlohmann::json& schema, const std::string& where,
             std::vector<std::string>& errors, int depth) const;
  const nlohmann::json& resolve(const std::string& ref) const;

  nlohmann::json root_;
};

// Checks one HTTP exchange against an OpenAPI document: the operation exists,
// the status is declared (exactly, as NXX, or default), the content type is
// declared, and JSON bodies match the schema.
std::vector<std::string> check_exchange(const nlohmann::json& openapi, const std::string& method,
                                        const std::string& path, int status, const std::string& content_type,
                                        const std::string& body);

nlohmann::json load_json_file(const std::string& path);

}  // namespace runlog::testing
