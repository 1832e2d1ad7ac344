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

#include "runlog/service/config.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "runlog/domain/codec.hpp"
#include "runlog/domain/errors.hpp"
#include "runlog/service/params.hpp"

namespace runlog::service {

std::pair<std::string, int> parse_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0)
    fail(ErrorCode::kInvalid, "listen address must look like host:port", {{"field", "listen"}});
  const auto port = parse_int(std::string_view(listen).substr(colon + 1), "listen");
  if (port < 0 || port > 65535)
    fail(ErrorCode::kInvalid, "listen port out of range", {{"field", "listen"}});
  return {listen.substr(0, colon), static_cast<int>(port)};
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot read config file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalid, "config file " + path.string() + " is not valid JSON: " + e.what());
  }

  ServiceConfig cfg;
  if (const auto listen = codec::get_optional_string(doc, "listen")) {
    std::tie(cfg.host, cfg.port) = parse_listen(*listen);
  }
  if (const auto store = codec::get_optional_string(doc, "store")) cfg.store_path = *store;
  if (const auto max = codec::get_optional_int(doc, "max_upload_bytes")) {
    if (*max <= 0) fail(ErrorCode::kInvalid, "max_upload_bytes must be positive", {{"field", "max_upload_bytes"}});
    cfg.max_upload_bytes = static_cast<std::uint64_t>(*max);
  }
  if (doc.contains("durable_commits")) cfg.durable_commits = doc.at("durable_commits").get<bool>();
  if (doc.contains("tokens")) {
    for (const auto& entry : doc.at("tokens")) {
      ActorRef actor{codec::get_string(entry, "actor_id"), codec::get_enum<Role>(entry, "role")};
      validate(actor);
      cfg.tokens[codec::get_string(entry, "token")] = actor;
    }
  }
  return cfg;
}

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str()); v != nullptr && *v != '\0') return std::string(v);
  return std::nullopt;
}

void apply_env_overrides(ServiceConfig& config, const EnvLookup& env) {
  if (const auto listen = env("RUNLOG_LISTEN")) std::tie(config.host, config.port) = parse_listen(*listen);
  if (const auto store = env("RUNLOG_STORE")) config.store_path = *store;
}

ServiceConfig resolve_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env) {
  ServiceConfig cfg;
  if (path) {
    cfg = load_config(*path);
  } else if (const auto from_env = env("RUNLOG_CONFIG")) {
    cfg = load_config(*from_env);
  }
  apply_env_overrides(cfg, env);
  return cfg;
}

}  // namespace runlog::service
